#include "dssi/optics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>

#include "dssi/error.hpp"
#include "dssi/parallel.hpp"

namespace dssi {

Kernel::Kernel(std::size_t size, std::vector<double> values) : size_(size), values_(std::move(values)) {
  if (size_ == 0 || size_ % 2 == 0) {
    throw ValidationError("kernel size must be odd, got " + std::to_string(size_));
  }
  if (values_.size() != size_ * size_) throw DimensionError("kernel value count mismatch");
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("kernel contains a non-finite value");
  }
}

Kernel Kernel::delta(std::size_t size) {
  std::vector<double> v(size * size, 0.0);
  v[(size / 2) * size + size / 2] = 1.0;
  return Kernel(size, std::move(v));
}

double Kernel::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

OpticalSystem::OpticalSystem(std::vector<Kernel> psfs, SpectralResponse response)
    : psfs_(std::move(psfs)), response_(std::move(response)) {
  if (psfs_.empty()) throw ValidationError("optical system needs at least one band");
  if (psfs_.size() != response_.bands()) {
    throw DimensionError("PSF stack has " + std::to_string(psfs_.size()) + " bands, response has " +
                         std::to_string(response_.bands()));
  }
  for (std::size_t i = 0; i < psfs_.size(); ++i) {
    if (psfs_[i].size() != psfs_.front().size()) throw DimensionError("PSFs differ in size");
    const double s = psfs_[i].sum();
    if (std::abs(s - 1.0) > kUnitSumTolerance) {
      throw ValidationError("PSF of band " + std::to_string(i) + " sums to " + std::to_string(s) +
                            ", expected 1");
    }
  }
  for (double v : response_.values()) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("spectral response must be finite and >= 0");
  }
}

OpticalSystem OpticalSystem::normalized(std::vector<Kernel> psfs, SpectralResponse response) {
  for (auto& k : psfs) {
    const double s = k.sum();
    if (!(std::abs(s) > 0.0)) throw ValidationError("cannot normalize a zero-sum PSF");
    auto v = k.values();
    for (double& x : v) x /= s;
    k = Kernel(k.size(), std::move(v));
  }
  return OpticalSystem(std::move(psfs), std::move(response));
}

OpticalSystem OpticalSystem::identity(std::size_t bands, std::size_t kernel_size) {
  return OpticalSystem(std::vector<Kernel>(bands, Kernel::delta(kernel_size)), SpectralResponse::identity(bands));
}

Kernel OpticalSystem::unified_psf(std::size_t channel, std::size_t band) const {
  auto v = psfs_[band].values();
  const double w = response_(channel, band);
  for (double& x : v) x *= w;
  return Kernel(psfs_[band].size(), std::move(v));
}

std::vector<Kernel> kernels_from_tensor(const Tensor& t) {
  if (t.dims.size() != 3 || t.dims[1] != t.dims[2]) {
    throw DimensionError("PSF stack must be a (bands, k, k) tensor");
  }
  const std::size_t k = t.dims[1];
  std::vector<Kernel> out;
  out.reserve(t.dims[0]);
  for (std::size_t i = 0; i < t.dims[0]; ++i) {
    const auto first = t.data.begin() + static_cast<std::ptrdiff_t>(i * k * k);
    out.emplace_back(k, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(k * k)));
  }
  return out;
}

Tensor kernels_to_tensor(const std::vector<Kernel>& kernels) {
  if (kernels.empty()) throw DimensionError("empty PSF stack");
  const std::size_t k = kernels.front().size();
  std::vector<double> data;
  data.reserve(kernels.size() * k * k);
  for (const auto& kern : kernels) data.insert(data.end(), kern.values().begin(), kern.values().end());
  return Tensor({kernels.size(), k, k}, DType::f64, std::move(data));
}

FrequencyOperator::FrequencyOperator(std::size_t height, std::size_t width, std::size_t bands,
                                     std::vector<cd> transfer)
    : height_(height), width_(width), bands_(bands), transfer_(std::move(transfer)) {
  const std::size_t n = height_ * width_;
  if (transfer_.size() != n * 3 * bands_) throw DimensionError("transfer matrix size mismatch");
  gram_.assign(n * 9, cd{});
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const cd* h = transfer_.data() + f * 3 * bands_;
      cd* g = gram_.data() + f * 9;
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
          cd s{};
          for (std::size_t i = 0; i < bands_; ++i) s += h[r * bands_ + i] * std::conj(h[c * bands_ + i]);
          g[r * 3 + c] = s;
        }
      }
    }
  });
}

double FrequencyOperator::lipschitz() const {
  double best = 0.0;
  for (std::size_t f = 0; f < frequencies(); ++f) {
    Eigen::Matrix3cd g;
    const auto gf = gram(f);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) g(r, c) = gf[static_cast<std::size_t>(r * 3 + c)];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(g, Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues().maxCoeff());
  }
  return best;
}

FrequencyOperator build_frequency_operator(const OpticalSystem& sys, std::size_t height, std::size_t width) {
  const std::size_t k = sys.kernel_size();
  if (height < k || width < k) {
    throw DimensionError("kernel " + std::to_string(k) + "x" + std::to_string(k) + " exceeds image " +
                         std::to_string(height) + "x" + std::to_string(width));
  }
  const std::size_t n = height * width;
  const std::size_t bands = sys.bands();
  const std::size_t r = k / 2;
  const Fft2d fft(height, width);
  const auto& omega = sys.response();

  std::vector<cd> transfer(n * 3 * bands);
  parallel_for(bands, [&](std::size_t begin, std::size_t end) {
    std::vector<cd> embedded(n), spectrum(n);
    for (std::size_t i = begin; i < end; ++i) {
      std::fill(embedded.begin(), embedded.end(), cd{});
      const Kernel& psf = sys.psf(i);
      for (std::size_t a = 0; a < k; ++a) {
        const std::size_t y = (a + height - r) % height;
        for (std::size_t b = 0; b < k; ++b) {
          const std::size_t x = (b + width - r) % width;
          embedded[y * width + x] = psf(a, b);
        }
      }
      fft.forward(embedded, spectrum);
      for (std::size_t f = 0; f < n; ++f) {
        for (std::size_t c = 0; c < 3; ++c) transfer[(f * 3 + c) * bands + i] = omega(c, i) * spectrum[f];
      }
    }
  });
  return FrequencyOperator(height, width, bands, std::move(transfer));
}

namespace {

// One band convolved with its (not yet Omega-weighted) PSF.
std::vector<double> convolve_band(const SpectralCube& cube, std::size_t band, const Kernel& psf,
                                  Boundary boundary) {
  const std::size_t h = cube.height();
  const std::size_t w = cube.width();
  const auto k = static_cast<std::ptrdiff_t>(psf.size());
  const auto r = static_cast<std::ptrdiff_t>(psf.radius());
  const auto hh = static_cast<std::ptrdiff_t>(h);
  const auto ww = static_cast<std::ptrdiff_t>(w);
  std::vector<double> out(h * w, 0.0);
  for (std::ptrdiff_t y = 0; y < hh; ++y) {
    for (std::ptrdiff_t x = 0; x < ww; ++x) {
      double s = 0.0;
      for (std::ptrdiff_t a = 0; a < k; ++a) {
        std::ptrdiff_t sy = y - (a - r);
        if (boundary == Boundary::circular) {
          sy = ((sy % hh) + hh) % hh;
        } else if (sy < 0 || sy >= hh) {
          continue;
        }
        for (std::ptrdiff_t b = 0; b < k; ++b) {
          std::ptrdiff_t sx = x - (b - r);
          if (boundary == Boundary::circular) {
            sx = ((sx % ww) + ww) % ww;
          } else if (sx < 0 || sx >= ww) {
            continue;
          }
          s += cube(static_cast<std::size_t>(sy), static_cast<std::size_t>(sx), band) *
               psf(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        }
      }
      out[static_cast<std::size_t>(y * ww + x)] = s;
    }
  }
  return out;
}

void require_operator_shape(const FrequencyOperator& op, const Grid& g, std::size_t depth, const char* what) {
  if (g.height() != op.height() || g.width() != op.width() || g.depth() != depth) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(op.height()) + "x" +
                         std::to_string(op.width()) + "x" + std::to_string(depth) + ", got " +
                         std::to_string(g.height()) + "x" + std::to_string(g.width()) + "x" +
                         std::to_string(g.depth()));
  }
}

}  // namespace

CodedImage forward_encode(const SpectralCube& cube, const OpticalSystem& sys, Boundary boundary) {
  if (cube.bands() != sys.bands()) {
    throw DimensionError("cube has " + std::to_string(cube.bands()) + " bands, optics expect " +
                         std::to_string(sys.bands()));
  }
  const std::size_t k = sys.kernel_size();
  if (boundary == Boundary::valid_crop && (cube.height() <= k || cube.width() <= k)) {
    throw DimensionError("valid-crop encoding needs an image larger than the kernel");
  }

  const std::size_t bands = sys.bands();
  std::vector<std::vector<double>> blurred(bands);
  parallel_for(bands, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) blurred[i] = convolve_band(cube, i, sys.psf(i), boundary);
  });

  // Band-ordered accumulation keeps the result independent of thread count.
  CodedImage full(cube.height(), cube.width());
  for (std::size_t i = 0; i < bands; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      const double w = sys.response()(c, i);
      if (w == 0.0) continue;
      for (std::size_t p = 0; p < cube.pixels(); ++p) full.values()[p * 3 + c] += w * blurred[i][p];
    }
  }
  if (boundary == Boundary::circular) return full;
  return CodedImage(full.cropped(k / 2));
}

std::vector<cd> forward_spectrum(const FrequencyOperator& op, std::span<const cd> cube_spectrum) {
  const std::size_t bands = op.bands();
  if (cube_spectrum.size() != op.frequencies() * bands) throw DimensionError("cube spectrum size mismatch");
  std::vector<cd> out(op.frequencies() * 3);
  parallel_for(op.frequencies(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const auto h = op.matrix(f);
      const cd* u = cube_spectrum.data() + f * bands;
      for (std::size_t c = 0; c < 3; ++c) {
        cd s{};
        for (std::size_t i = 0; i < bands; ++i) s += h[c * bands + i] * u[i];
        out[f * 3 + c] = s;
      }
    }
  });
  return out;
}

std::vector<cd> adjoint_spectrum(const FrequencyOperator& op, std::span<const cd> image_spectrum) {
  const std::size_t bands = op.bands();
  if (image_spectrum.size() != op.frequencies() * 3) throw DimensionError("image spectrum size mismatch");
  std::vector<cd> out(op.frequencies() * bands);
  parallel_for(op.frequencies(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const auto h = op.matrix(f);
      const cd* v = image_spectrum.data() + f * 3;
      for (std::size_t i = 0; i < bands; ++i) {
        out[f * bands + i] = std::conj(h[i]) * v[0] + std::conj(h[bands + i]) * v[1] +
                             std::conj(h[2 * bands + i]) * v[2];
      }
    }
  });
  return out;
}

CodedImage apply_forward_frequency(const FrequencyOperator& op, const SpectralCube& cube) {
  require_operator_shape(op, cube, op.bands(), "apply_forward_frequency");
  const auto v = forward_spectrum(op, grid_spectrum(cube));
  return CodedImage(grid_from_spectrum(v, op.height(), op.width(), 3));
}

SpectralCube apply_adjoint(const FrequencyOperator& op, const CodedImage& img) {
  require_operator_shape(op, img, 3, "apply_adjoint");
  const auto u = adjoint_spectrum(op, grid_spectrum(img));
  return SpectralCube(grid_from_spectrum(u, op.height(), op.width(), op.bands()));
}

void NoiseModel::validate() const {
  if (!(gaussian_sigma >= 0.0) || !std::isfinite(gaussian_sigma)) {
    throw ParameterError("gaussian_sigma must be finite and >= 0");
  }
  if (poisson_bits != 0 && (poisson_bits < 8 || poisson_bits > 16)) {
    throw ParameterError("poisson_bits must be 0 (disabled) or within 8..16, got " + std::to_string(poisson_bits));
  }
}

CodedImage add_noise(const CodedImage& img, const NoiseModel& noise) {
  noise.validate();
  CodedImage out = img;
  if (noise.gaussian_sigma == 0.0 && noise.poisson_bits == 0) return out;

  std::mt19937_64 rng(noise.seed);
  auto values = out.values();
  if (noise.poisson_bits != 0) {
    const double levels = std::ldexp(1.0, static_cast<int>(noise.poisson_bits));
    for (double& v : values) {
      const double mean = std::max(v, 0.0) * levels;
      if (mean == 0.0) {
        v = 0.0;
        continue;
      }
      std::poisson_distribution<long long> shot(mean);
      v = static_cast<double>(shot(rng)) / levels;
    }
  }
  if (noise.gaussian_sigma > 0.0) {
    std::normal_distribution<double> read(0.0, noise.gaussian_sigma);
    for (double& v : values) v += read(rng);
  }
  return out;
}

}  // namespace dssi
