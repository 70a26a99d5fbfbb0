#include "dssi/denoisers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dssi/error.hpp"
#include "dssi/parallel.hpp"
#include "dssi/spec_string.hpp"

namespace dssi {

namespace {

// Symmetric (half-sample) reflection of an index into [0, n).
std::size_t reflect(std::ptrdiff_t i, std::size_t n) {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  i %= period;
  if (i < 0) i += period;
  if (i >= static_cast<std::ptrdiff_t>(n)) i = period - 1 - i;
  return static_cast<std::size_t>(i);
}

std::string fmt_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Dual FISTA for one band; `plane` is row-major h x w and is overwritten.
void tv_plane(std::vector<double>& plane, std::size_t h, std::size_t w, double lambda, std::size_t iters) {
  const std::size_t n = h * w;
  std::vector<double> px(n, 0.0), py(n, 0.0), qx(n, 0.0), qy(n, 0.0), z(n);
  const std::vector<double>& x = plane;

  // z = x - lambda * D^T p
  auto primal = [&](const std::vector<double>& ax, const std::vector<double>& ay) {
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        const std::size_t i = r * w + c;
        double dtp = 0.0;
        if (c > 0) dtp += ax[i - 1];
        if (c + 1 < w) dtp -= ax[i];
        if (r > 0) dtp += ay[i - w];
        if (r + 1 < h) dtp -= ay[i];
        z[i] = x[i] - lambda * dtp;
      }
    }
  };

  const double step = 1.0 / (8.0 * lambda);
  double t = 1.0;
  for (std::size_t it = 0; it < iters; ++it) {
    primal(qx, qy);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double momentum = (t - 1.0) / t_next;
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        const std::size_t i = r * w + c;
        const double nx = c + 1 < w ? std::clamp(qx[i] + step * (z[i + 1] - z[i]), -1.0, 1.0) : 0.0;
        const double ny = r + 1 < h ? std::clamp(qy[i] + step * (z[i + w] - z[i]), -1.0, 1.0) : 0.0;
        qx[i] = nx + momentum * (nx - px[i]);
        qy[i] = ny + momentum * (ny - py[i]);
        px[i] = nx;
        py[i] = ny;
      }
    }
    t = t_next;
  }
  primal(px, py);
  plane = z;
}

}  // namespace

GaussianDenoiser::GaussianDenoiser(double spatial_sigma) : spatial_sigma_(spatial_sigma) {
  if (!(spatial_sigma >= 0.0) || !std::isfinite(spatial_sigma)) {
    throw ParameterError("gaussian sigma must be finite and >= 0");
  }
}

std::string GaussianDenoiser::name() const { return "gaussian:sigma=" + fmt_number(spatial_sigma_); }

SpectralCube GaussianDenoiser::denoise(const SpectralCube& x, double) const {
  if (spatial_sigma_ == 0.0) return x;
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * spatial_sigma_));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (std::ptrdiff_t d = -radius; d <= radius; ++d) {
    const double v = std::exp(-0.5 * static_cast<double>(d * d) / (spatial_sigma_ * spatial_sigma_));
    taps[static_cast<std::size_t>(d + radius)] = v;
    total += v;
  }
  for (double& v : taps) v /= total;

  const std::size_t h = x.height();
  const std::size_t w = x.width();
  SpectralCube out(h, w, x.bands());
  parallel_for(x.bands(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> tmp(h * w);
    for (std::size_t k = begin; k < end; ++k) {
      const auto src = x.plane(k);
      for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
          double s = 0.0;
          for (std::ptrdiff_t d = -radius; d <= radius; ++d) {
            s += taps[static_cast<std::size_t>(d + radius)] *
                 src[r * w + reflect(static_cast<std::ptrdiff_t>(c) + d, w)];
          }
          tmp[r * w + c] = s;
        }
      }
      std::vector<double> dst(h * w);
      for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
          double s = 0.0;
          for (std::ptrdiff_t d = -radius; d <= radius; ++d) {
            s += taps[static_cast<std::size_t>(d + radius)] *
                 tmp[reflect(static_cast<std::ptrdiff_t>(r) + d, h) * w + c];
          }
          dst[r * w + c] = s;
        }
      }
      out.set_plane(k, dst);
    }
  });
  return out;
}

TvDenoiser::TvDenoiser(double lambda, std::size_t iters) : lambda_(lambda), iters_(iters) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("tv lambda must be finite and >= 0");
  if (iters == 0) throw ParameterError("tv iters must be >= 1");
}

std::string TvDenoiser::name() const {
  return "tv:lambda=" + fmt_number(lambda_) + ",iters=" + std::to_string(iters_);
}

SpectralCube TvDenoiser::denoise(const SpectralCube& x, double) const { return tv_denoise(x, lambda_, iters_); }

SpectralCube QuadraticDenoiser::denoise(const SpectralCube& x, double sigma_tilde) const {
  SpectralCube out = x;
  const double scale = 1.0 / (1.0 + sigma_tilde * sigma_tilde);
  for (double& v : out.values()) v *= scale;
  return out;
}

SpectralCube tv_denoise(const SpectralCube& x, double lambda, std::size_t iters) {
  if (!(lambda >= 0.0)) throw ParameterError("tv lambda must be >= 0");
  if (iters == 0) throw ParameterError("tv iters must be >= 1");
  if (lambda == 0.0) return x;
  SpectralCube out(x.height(), x.width(), x.bands());
  parallel_for(x.bands(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      auto plane = x.plane(k);
      tv_plane(plane, x.height(), x.width(), lambda, iters);
      out.set_plane(k, plane);
    }
  });
  return out;
}

std::vector<std::string> denoiser_names() { return {"identity", "gaussian", "tv", "quadratic"}; }

std::unique_ptr<Denoiser> make_denoiser(std::string_view text) {
  const auto spec = SpecString::parse(text);
  if (spec.name == "identity") {
    spec.only({});
    return std::make_unique<IdentityDenoiser>();
  }
  if (spec.name == "gaussian") {
    spec.only({"sigma"});
    return std::make_unique<GaussianDenoiser>(spec.number("sigma", 1.0));
  }
  if (spec.name == "tv") {
    spec.only({"lambda", "iters"});
    return std::make_unique<TvDenoiser>(spec.number("lambda", 0.01), spec.count("iters", 30));
  }
  if (spec.name == "quadratic") {
    spec.only({});
    return std::make_unique<QuadraticDenoiser>();
  }
  std::string valid;
  for (const auto& n : denoiser_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ParameterError("unknown denoiser \"" + spec.name + "\"; valid: " + valid);
}

}  // namespace dssi
