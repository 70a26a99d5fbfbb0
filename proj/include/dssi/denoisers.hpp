#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dssi/tensor.hpp"

namespace dssi {

/// Prior step of the splitting scheme: maps Z~ to Z at noise level
/// sigma_tilde. Implementations without a noise-level parameter ignore it.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual std::string name() const = 0;
  virtual SpectralCube denoise(const SpectralCube& x, double sigma_tilde) const = 0;
};

class IdentityDenoiser final : public Denoiser {
 public:
  std::string name() const override { return "identity"; }
  SpectralCube denoise(const SpectralCube& x, double) const override { return x; }
};

/// Band-wise separable Gaussian blur with symmetric boundary extension.
class GaussianDenoiser final : public Denoiser {
 public:
  explicit GaussianDenoiser(double spatial_sigma);
  std::string name() const override;
  SpectralCube denoise(const SpectralCube& x, double sigma_tilde) const override;

 private:
  double spatial_sigma_;
};

/// Band-wise anisotropic total-variation denoising; see tv_denoise.
class TvDenoiser final : public Denoiser {
 public:
  TvDenoiser(double lambda, std::size_t iters);
  std::string name() const override;
  SpectralCube denoise(const SpectralCube& x, double sigma_tilde) const override;

 private:
  double lambda_;
  std::size_t iters_;
};

/// Exact proximal map of R(Z) = 1/2 ||Z||^2 at noise level sigma_tilde:
/// Z = x / (1 + sigma_tilde^2).
class QuadraticDenoiser final : public Denoiser {
 public:
  std::string name() const override { return "quadratic"; }
  SpectralCube denoise(const SpectralCube& x, double sigma_tilde) const override;
};

/// argmin_Z 1/2 ||Z - x||^2 + lambda * sum |forward differences of Z|, per band,
/// with Neumann boundaries. Solved by accelerated projected gradient on the
/// dual (box-constrained difference fields); lambda = 0 returns x unchanged.
SpectralCube tv_denoise(const SpectralCube& x, double lambda, std::size_t iters);

/// Parses "identity", "gaussian:sigma=1.0", "tv:lambda=0.01,iters=30",
/// "quadratic". Throws ParameterError naming the valid choices.
std::unique_ptr<Denoiser> make_denoiser(std::string_view spec);
std::vector<std::string> denoiser_names();

}  // namespace dssi
