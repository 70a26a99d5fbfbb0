#pragma once

#include <cstddef>
#include <string>

#include "dssi/tensor.hpp"

namespace dssi {

inline constexpr double kPsnrCap = 100.0;
inline constexpr std::size_t kDefaultCrop = 20;

/// 10 log10(peak^2 / MSE); kPsnrCap once MSE < 1e-10 peak^2.
double psnr(const SpectralCube& x, const SpectralCube& ref, double peak = 1.0);

struct SamResult {
  double mean_rad = 0.0;
  std::size_t skipped = 0;
};

/// Mean per-pixel spectral angle in radians. Pixels where either spectrum has
/// norm below 1e-12 are skipped and counted; throws if all are skipped.
SamResult sam_detail(const SpectralCube& x, const SpectralCube& ref);
double sam(const SpectralCube& x, const SpectralCube& ref);

/// Single-scale SSIM per band (11 x 11 Gaussian window, sigma 1.5, K1 = 0.01,
/// K2 = 0.03, valid window positions only) averaged over bands.
double ssim(const SpectralCube& x, const SpectralCube& ref, double peak = 1.0);

struct MetricReport {
  double psnr_db = 0.0;
  double sam_rad = 0.0;
  double ssim = 0.0;
  std::size_t crop = 0;

  /// {"psnr_db":...,"sam_rad":...,"ssim":...,"crop":...}
  std::string to_json() const;
};

/// Crops `crop` pixels from every edge of both cubes, then computes all metrics.
MetricReport evaluate(const SpectralCube& recon, const SpectralCube& gt, std::size_t crop = kDefaultCrop);

}  // namespace dssi
