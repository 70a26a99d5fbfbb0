#include "dssi/metrics.hpp"

#include "json.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "dssi/error.hpp"

namespace dssi {

namespace {

void require_same(const SpectralCube& x, const SpectralCube& ref, const char* what) {
  if (!x.same_shape(ref)) throw DimensionError(std::string(what) + ": inputs differ in shape");
  if (x.size() == 0) throw DimensionError(std::string(what) + ": empty input");
}

constexpr std::size_t kWindow = 11;
constexpr double kWindowSigma = 1.5;

std::array<double, kWindow> gaussian_taps() {
  std::array<double, kWindow> taps{};
  double total = 0.0;
  for (std::size_t i = 0; i < kWindow; ++i) {
    const double d = static_cast<double>(i) - static_cast<double>(kWindow / 2);
    taps[i] = std::exp(-d * d / (2.0 * kWindowSigma * kWindowSigma));
    total += taps[i];
  }
  for (double& t : taps) t /= total;
  return taps;
}

// Separable weighted sum over valid window positions.
std::vector<double> filter_valid(const std::vector<double>& img, std::size_t h, std::size_t w,
                                 const std::array<double, kWindow>& taps) {
  const std::size_t oh = h - kWindow + 1;
  const std::size_t ow = w - kWindow + 1;
  std::vector<double> rows(h * ow);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < ow; ++c) {
      double s = 0.0;
      for (std::size_t t = 0; t < kWindow; ++t) s += taps[t] * img[r * w + c + t];
      rows[r * ow + c] = s;
    }
  std::vector<double> out(oh * ow);
  for (std::size_t r = 0; r < oh; ++r)
    for (std::size_t c = 0; c < ow; ++c) {
      double s = 0.0;
      for (std::size_t t = 0; t < kWindow; ++t) s += taps[t] * rows[(r + t) * ow + c];
      out[r * ow + c] = s;
    }
  return out;
}

}  // namespace

double psnr(const SpectralCube& x, const SpectralCube& ref, double peak) {
  require_same(x, ref, "psnr");
  if (!(peak > 0.0)) throw ParameterError("psnr peak must be > 0");
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x.values()[i] - ref.values()[i];
    sq += d * d;
  }
  const double mse = sq / static_cast<double>(x.size());
  if (mse < 1e-10 * peak * peak) return kPsnrCap;
  return 10.0 * std::log10(peak * peak / mse);
}

SamResult sam_detail(const SpectralCube& x, const SpectralCube& ref) {
  require_same(x, ref, "sam");
  const std::size_t bands = x.bands();
  SamResult out;
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t p = 0; p < x.pixels(); ++p) {
    const double* a = x.values().data() + p * bands;
    const double* b = ref.values().data() + p * bands;
    double na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < bands; ++i) {
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    if (na < 1e-12 || nb < 1e-12) {
      ++out.skipped;
      continue;
    }
    // Angle between unit vectors as 2 atan2(|u - v|, |u + v|): accurate near 0 and pi.
    double diff = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < bands; ++i) {
      const double u = a[i] / na;
      const double v = b[i] / nb;
      diff += (u - v) * (u - v);
      sum += (u + v) * (u + v);
    }
    total += 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
    ++counted;
  }
  if (counted == 0) throw ValidationError("sam undefined: every pixel has a zero spectrum");
  out.mean_rad = total / static_cast<double>(counted);
  return out;
}

double sam(const SpectralCube& x, const SpectralCube& ref) { return sam_detail(x, ref).mean_rad; }

double ssim(const SpectralCube& x, const SpectralCube& ref, double peak) {
  require_same(x, ref, "ssim");
  const std::size_t h = x.height();
  const std::size_t w = x.width();
  if (h < kWindow || w < kWindow) {
    throw DimensionError("ssim needs at least 11x11 pixels, got " + std::to_string(h) + "x" + std::to_string(w));
  }
  const double c1 = (0.01 * peak) * (0.01 * peak);
  const double c2 = (0.03 * peak) * (0.03 * peak);
  const auto taps = gaussian_taps();

  double total = 0.0;
  for (std::size_t k = 0; k < x.bands(); ++k) {
    const auto a = x.plane(k);
    const auto b = ref.plane(k);
    std::vector<double> aa(a.size()), bb(a.size()), ab(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      aa[i] = a[i] * a[i];
      bb[i] = b[i] * b[i];
      ab[i] = a[i] * b[i];
    }
    const auto mu_a = filter_valid(a, h, w, taps);
    const auto mu_b = filter_valid(b, h, w, taps);
    const auto e_aa = filter_valid(aa, h, w, taps);
    const auto e_bb = filter_valid(bb, h, w, taps);
    const auto e_ab = filter_valid(ab, h, w, taps);

    double band_sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
      const double var_a = e_aa[i] - mu_a[i] * mu_a[i];
      const double var_b = e_bb[i] - mu_b[i] * mu_b[i];
      const double cov = e_ab[i] - mu_a[i] * mu_b[i];
      const double num = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
      const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2);
      band_sum += num / den;
    }
    total += band_sum / static_cast<double>(mu_a.size());
  }
  return total / static_cast<double>(x.bands());
}

std::string MetricReport::to_json() const {
  nlohmann::ordered_json j;
  j["psnr_db"] = psnr_db;
  j["sam_rad"] = sam_rad;
  j["ssim"] = ssim;
  j["crop"] = crop;
  return j.dump();
}

MetricReport evaluate(const SpectralCube& recon, const SpectralCube& gt, std::size_t crop) {
  require_same(recon, gt, "evaluate");
  const SpectralCube a = crop == 0 ? recon : recon.cropped(crop);
  const SpectralCube b = crop == 0 ? gt : gt.cropped(crop);
  return {psnr(a, b), sam(a, b), ssim(a, b), crop};
}

}  // namespace dssi
