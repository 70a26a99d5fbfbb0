#include "dssi/oracle.hpp"

#include <string>

#include "dssi/error.hpp"

namespace dssi::oracle {

DenseSystem build_dense_phi(const OpticalSystem& sys, std::size_t height, std::size_t width) {
  const std::size_t n = height * width;
  const std::size_t bands = sys.bands();
  if (n * bands > kMaxUnknowns) {
    throw ParameterError("dense oracle limited to " + std::to_string(kMaxUnknowns) + " unknowns, requested " +
                         std::to_string(n * bands));
  }
  const std::size_t k = sys.kernel_size();
  const std::size_t r = k / 2;

  DenseSystem ds;
  ds.height = height;
  ds.width = width;
  ds.bands = bands;
  ds.phi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(3 * n), static_cast<Eigen::Index>(n * bands));

  // Column (q, i): response of every output pixel/channel to a unit impulse at
  // pixel q of band i.
  for (std::size_t qy = 0; qy < height; ++qy) {
    for (std::size_t qx = 0; qx < width; ++qx) {
      for (std::size_t i = 0; i < bands; ++i) {
        const auto col = static_cast<Eigen::Index>((qy * width + qx) * bands + i);
        const Kernel& psf = sys.psf(i);
        for (std::size_t a = 0; a < k; ++a) {
          const std::size_t py = (qy + a + height * k - r) % height;
          for (std::size_t b = 0; b < k; ++b) {
            const std::size_t px = (qx + b + width * k - r) % width;
            for (std::size_t c = 0; c < 3; ++c) {
              const auto row = static_cast<Eigen::Index>((py * width + px) * 3 + c);
              ds.phi(row, col) += sys.response()(c, i) * psf(a, b);
            }
          }
        }
      }
    }
  }
  return ds;
}

Eigen::VectorXd vectorize(const Grid& g) {
  return Eigen::Map<const Eigen::VectorXd>(g.values().data(), static_cast<Eigen::Index>(g.size()));
}

SpectralCube cube_from_vector(const Eigen::VectorXd& v, const DenseSystem& ds) {
  return SpectralCube(ds.height, ds.width, ds.bands, std::vector<double>(v.data(), v.data() + v.size()));
}

CodedImage image_from_vector(const Eigen::VectorXd& v, const DenseSystem& ds) {
  return CodedImage(ds.height, ds.width, std::vector<double>(v.data(), v.data() + v.size()));
}

namespace {

void require_shapes(const DenseSystem& ds, const CodedImage& coded) {
  if (coded.height() != ds.height || coded.width() != ds.width) {
    throw DimensionError("coded image does not match the dense system");
  }
}

}  // namespace

SpectralCube dense_ridge_solve(const DenseSystem& ds, const CodedImage& coded, const SpectralCube& anchor,
                               double gamma) {
  require_shapes(ds, coded);
  if (anchor.height() != ds.height || anchor.width() != ds.width || anchor.bands() != ds.bands) {
    throw DimensionError("anchor does not match the dense system");
  }
  if (!(gamma > 0.0)) throw ParameterError("gamma must be > 0");
  Eigen::MatrixXd normal = ds.phi.transpose() * ds.phi;
  normal.diagonal().array() += gamma;
  const Eigen::VectorXd rhs = ds.phi.transpose() * vectorize(coded) + gamma * vectorize(anchor);
  return cube_from_vector(normal.llt().solve(rhs), ds);
}

SpectralCube dense_tikhonov_solve(const DenseSystem& ds, const CodedImage& coded, double sigma) {
  require_shapes(ds, coded);
  if (!(sigma >= 0.0)) throw ParameterError("sigma must be >= 0");
  const Eigen::VectorXd j = vectorize(coded);
  if (sigma == 0.0) return cube_from_vector(ds.phi.completeOrthogonalDecomposition().solve(j), ds);
  Eigen::MatrixXd normal = ds.phi.transpose() * ds.phi;
  normal.diagonal().array() += sigma;
  return cube_from_vector(normal.llt().solve(ds.phi.transpose() * j), ds);
}

}  // namespace dssi::oracle
