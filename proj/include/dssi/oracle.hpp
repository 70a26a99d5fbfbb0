#pragma once

#include <Eigen/Dense>

#include "dssi/optics.hpp"
#include "dssi/tensor.hpp"

namespace dssi::oracle {

/// Largest n * N_lambda for which the dense system may be assembled.
inline constexpr std::size_t kMaxUnknowns = 4096;

/// The encoding as an explicit (3n) x (n N_lambda) matrix. Rows and columns
/// follow the row-major grid layout: row (p * 3 + c), column (q * N + i) for
/// pixels p, q.
struct DenseSystem {
  Eigen::MatrixXd phi;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t bands = 0;
};

/// Builds Phi column by column from circular convolution with the unified PSFs.
DenseSystem build_dense_phi(const OpticalSystem& sys, std::size_t height, std::size_t width);

Eigen::VectorXd vectorize(const Grid& g);
SpectralCube cube_from_vector(const Eigen::VectorXd& v, const DenseSystem& ds);
CodedImage image_from_vector(const Eigen::VectorXd& v, const DenseSystem& ds);

/// (Phi^T Phi + gamma E) x = Phi^T J + gamma anchor by dense Cholesky.
SpectralCube dense_ridge_solve(const DenseSystem& ds, const CodedImage& coded, const SpectralCube& anchor,
                               double gamma);

/// argmin 1/2 ||Phi I - J||^2 + sigma/2 ||I||^2. sigma = 0 falls back to a
/// rank-revealing solve of the normal equations.
SpectralCube dense_tikhonov_solve(const DenseSystem& ds, const CodedImage& coded, double sigma);

}  // namespace dssi::oracle
