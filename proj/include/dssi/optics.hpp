#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dssi/fft.hpp"
#include "dssi/spectral_response.hpp"
#include "dssi/tensor.hpp"

namespace dssi {

/// Square odd-sized blur kernel, row-major.
class Kernel {
 public:
  Kernel() = default;
  Kernel(std::size_t size, std::vector<double> values);

  /// Unit impulse at the center pixel.
  static Kernel delta(std::size_t size);

  std::size_t size() const { return size_; }
  std::size_t radius() const { return size_ / 2; }
  double operator()(std::size_t row, std::size_t col) const { return values_[row * size_ + col]; }
  const std::vector<double>& values() const { return values_; }
  double sum() const;

 private:
  std::size_t size_ = 0;
  std::vector<double> values_;
};

/// Normalized per-band PSFs p and the sensor response Omega. The unified
/// PSF for (channel c, band i) is Omega(c, i) * p[i].
class OpticalSystem {
 public:
  static constexpr double kUnitSumTolerance = 1e-9;

  /// Throws ValidationError unless every PSF sums to 1 within tolerance and
  /// has odd size, and DimensionError if band counts disagree.
  OpticalSystem(std::vector<Kernel> psfs, SpectralResponse response);

  /// Rescales each PSF to unit sum before constructing.
  static OpticalSystem normalized(std::vector<Kernel> psfs, SpectralResponse response);

  /// Delta PSFs with the identity response: encoding copies bands 0..2.
  static OpticalSystem identity(std::size_t bands, std::size_t kernel_size = 1);

  std::size_t bands() const { return psfs_.size(); }
  std::size_t kernel_size() const { return psfs_.front().size(); }
  const Kernel& psf(std::size_t band) const { return psfs_[band]; }
  const std::vector<Kernel>& psfs() const { return psfs_; }
  const SpectralResponse& response() const { return response_; }

  /// Unified PSF P[., ., c, i].
  Kernel unified_psf(std::size_t channel, std::size_t band) const;

 private:
  std::vector<Kernel> psfs_;
  SpectralResponse response_;
};

/// PSF stack <-> (N_lambda, k, k) tensor.
std::vector<Kernel> kernels_from_tensor(const Tensor& t);
Tensor kernels_to_tensor(const std::vector<Kernel>& kernels);

enum class Boundary { circular, valid_crop };

/// Per-frequency 3 x N_lambda transfer matrices of the unified PSFs, with each
/// kernel's center moved to spatial index (0, 0) before the DFT. Also caches
/// the per-frequency Gram matrices H_f H_f^* (3 x 3, Hermitian).
class FrequencyOperator {
 public:
  /// `transfer` is frequency-major: entry [(f * 3 + c) * bands + i].
  FrequencyOperator(std::size_t height, std::size_t width, std::size_t bands, std::vector<cd> transfer);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t bands() const { return bands_; }
  std::size_t frequencies() const { return height_ * width_; }

  /// 3 x N_lambda matrix at frequency f, row-major.
  std::span<const cd> matrix(std::size_t f) const {
    return {transfer_.data() + f * 3 * bands_, 3 * bands_};
  }
  /// H_f H_f^* at frequency f, row-major 3 x 3.
  std::span<const cd, 9> gram(std::size_t f) const {
    return std::span<const cd, 9>(gram_.data() + f * 9, 9);
  }
  const std::vector<cd>& transfer() const { return transfer_; }

  /// Largest eigenvalue of H_f^* H_f over all frequencies (Lipschitz constant of
  /// the data term's gradient).
  double lipschitz() const;

 private:
  std::size_t height_;
  std::size_t width_;
  std::size_t bands_;
  std::vector<cd> transfer_;
  std::vector<cd> gram_;
};

FrequencyOperator build_frequency_operator(const OpticalSystem& sys, std::size_t height, std::size_t width);

/// Direct spatial-domain encoding J = sum_i I_i (*) P_{c,i}. Circular mode wraps
/// indices; valid_crop zero-pads, then drops (k-1)/2 pixels per edge so the
/// result is (H-k+1) x (W-k+1).
CodedImage forward_encode(const SpectralCube& cube, const OpticalSystem& sys,
                          Boundary boundary = Boundary::circular);

CodedImage apply_forward_frequency(const FrequencyOperator& op, const SpectralCube& cube);
SpectralCube apply_adjoint(const FrequencyOperator& op, const CodedImage& img);

/// Same as the above but on frequency-major spectra (see grid_spectrum).
std::vector<cd> forward_spectrum(const FrequencyOperator& op, std::span<const cd> cube_spectrum);
std::vector<cd> adjoint_spectrum(const FrequencyOperator& op, std::span<const cd> image_spectrum);

struct NoiseModel {
  double gaussian_sigma = 0.0;
  /// 0 disables shot noise; otherwise 8..16.
  unsigned poisson_bits = 0;
  std::uint64_t seed = 0;

  /// Read noise of 7e-5 with 14-bit shot noise.
  static NoiseModel calibrated(std::uint64_t seed = 0) { return {7e-5, 14, seed}; }
  static NoiseModel none() { return {}; }

  void validate() const;
};

/// Shot noise Poisson(x * 2^b) / 2^b (negatives clamped to 0 first), then
/// additive N(0, sigma^2). Deterministic per seed.
CodedImage add_noise(const CodedImage& img, const NoiseModel& noise);

}  // namespace dssi
