#include "dssi/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dssi::synthetic {

SpectralCube random_cube(std::size_t height, std::size_t width, std::size_t bands, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SpectralCube out(height, width, bands);
  for (double& v : out.values()) v = u(rng);
  return out;
}

CodedImage random_image(std::size_t height, std::size_t width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CodedImage out(height, width);
  for (double& v : out.values()) v = u(rng);
  return out;
}

std::vector<Kernel> random_psfs(std::size_t bands, std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<Kernel> out;
  for (std::size_t i = 0; i < bands; ++i) {
    std::vector<double> v(size * size);
    double total = 0.0;
    for (double& x : v) total += (x = u(rng));
    for (double& x : v) x /= total;
    out.emplace_back(size, std::move(v));
  }
  return out;
}

SpectralResponse random_response(std::size_t bands, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(3 * bands);
  for (double& x : v) x = u(rng);
  return SpectralResponse(bands, std::move(v));
}

OpticalSystem random_system(std::size_t bands, std::size_t kernel_size, std::uint64_t seed) {
  return OpticalSystem::normalized(random_psfs(bands, kernel_size, seed), random_response(bands, seed ^ 0x9e3779b97f4a7c15ULL));
}

std::vector<Kernel> rotating_psfs(std::size_t bands, std::size_t size) {
  const double r = static_cast<double>(size / 2);
  const double spread = std::max(1.0, 0.6 * r);
  std::vector<Kernel> out;
  for (std::size_t i = 0; i < bands; ++i) {
    const double theta = std::numbers::pi * static_cast<double>(i) / static_cast<double>(bands);
    const double ox = 0.5 * spread * std::cos(theta);
    const double oy = 0.5 * spread * std::sin(theta);
    std::vector<double> v(size * size);
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        const double y = static_cast<double>(a) - r;
        const double x = static_cast<double>(b) - r;
        double s = 0.0;
        for (double sign : {-1.0, 1.0}) {
          const double dy = y - sign * oy;
          const double dx = x - sign * ox;
          s += std::exp(-(dx * dx + dy * dy) / (2.0 * 0.35 * spread * 0.35 * spread));
        }
        v[a * size + b] = s + 1e-3;
      }
    }
    out.emplace_back(size, std::move(v));
  }
  return out;
}

std::vector<double> band_wavelengths(std::size_t bands) {
  std::vector<double> out(bands);
  for (std::size_t i = 0; i < bands; ++i) {
    out[i] = bands == 1 ? 550.0 : 400.0 + 300.0 * static_cast<double>(i) / static_cast<double>(bands - 1);
  }
  return out;
}

SpectralResponse gaussian_response(std::size_t bands) {
  const auto wl = band_wavelengths(bands);
  const double centers[3] = {600.0, 540.0, 460.0};
  const double widths[3] = {45.0, 45.0, 40.0};
  std::vector<double> v(3 * bands);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < bands; ++i) {
      const double d = (wl[i] - centers[c]) / widths[c];
      v[c * bands + i] = std::exp(-0.5 * d * d);
    }
  }
  // scale so the most sensitive channel integrates a flat unit spectrum to 1
  double peak = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    double row = 0.0;
    for (std::size_t i = 0; i < bands; ++i) row += v[c * bands + i];
    peak = std::max(peak, row);
  }
  for (double& x : v) x /= peak;
  return SpectralResponse(bands, std::move(v));
}

OpticalSystem demo_system(std::size_t bands, std::size_t kernel_size) {
  return OpticalSystem::normalized(rotating_psfs(bands, kernel_size), gaussian_response(bands));
}

SpectralCube demo_scene(std::size_t height, std::size_t width, std::size_t bands, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto wl = band_wavelengths(bands);

  auto random_spectrum = [&] {
    const double center = 400.0 + 300.0 * u(rng);
    const double width = 40.0 + 120.0 * u(rng);
    const double base = 0.1 + 0.3 * u(rng);
    const double amp = 0.2 + 0.4 * u(rng);
    std::vector<double> s(bands);
    for (std::size_t i = 0; i < bands; ++i) {
      const double d = (wl[i] - center) / width;
      s[i] = base + amp * std::exp(-0.5 * d * d);
    }
    return s;
  };

  SpectralCube out(height, width, bands);
  const auto background = random_spectrum();
  const double hh = static_cast<double>(height);
  const double ww = static_cast<double>(width);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double shade = 0.8 + 0.2 * (static_cast<double>(x) / ww);
      for (std::size_t i = 0; i < bands; ++i) out(y, x, i) = shade * background[i];
    }
  }

  for (int shape = 0; shape < 6; ++shape) {
    const auto spectrum = random_spectrum();
    const double cy = hh * (0.15 + 0.7 * u(rng));
    const double cx = ww * (0.15 + 0.7 * u(rng));
    const double ry = hh * (0.08 + 0.15 * u(rng));
    const double rx = ww * (0.08 + 0.15 * u(rng));
    const bool disc = shape % 2 == 1;
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        const double dy = (static_cast<double>(y) - cy) / ry;
        const double dx = (static_cast<double>(x) - cx) / rx;
        const bool inside = disc ? dx * dx + dy * dy <= 1.0 : std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0;
        if (!inside) continue;
        for (std::size_t i = 0; i < bands; ++i) out(y, x, i) = spectrum[i];
      }
    }
  }
  for (double& v : out.values()) v = std::clamp(v, 0.0, 1.0);
  return out;
}

}  // namespace dssi::synthetic
