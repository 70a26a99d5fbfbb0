#include "dssi/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "dssi/error.hpp"
#include "dssi/parallel.hpp"

namespace dssi {

namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are created once per shape and live for the process lifetime.
PlanPair plans_for(std::size_t height, std::size_t width) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({height, width});
  if (it != cache.end()) return it->second;

  const std::size_t n = height * width;
  auto* a = fftw_alloc_complex(n);
  auto* b = fftw_alloc_complex(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int h = static_cast<int>(height);
  const int w = static_cast<int>(width);
  PlanPair p{fftw_plan_dft_2d(h, w, a, b, FFTW_FORWARD, flags),
             fftw_plan_dft_2d(h, w, a, b, FFTW_BACKWARD, flags)};
  fftw_free(a);
  fftw_free(b);
  if (p.forward == nullptr || p.inverse == nullptr) throw Error("FFTW planning failed");
  cache.emplace(std::make_pair(height, width), p);
  return p;
}

}  // namespace

Fft2d::Fft2d(std::size_t height, std::size_t width) : height_(height), width_(width) {
  if (height == 0 || width == 0) throw DimensionError("FFT of an empty grid");
  const auto p = plans_for(height, width);
  forward_plan_ = p.forward;
  inverse_plan_ = p.inverse;
}

void Fft2d::forward(std::span<const cd> in, std::span<cd> out) const {
  if (in.size() != size() || out.size() != size()) throw DimensionError("FFT buffer size mismatch");
  if (in.data() == out.data()) throw Error("FFT requires distinct input and output buffers");
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_),
                   reinterpret_cast<fftw_complex*>(const_cast<cd*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void Fft2d::inverse(std::span<const cd> in, std::span<cd> out) const {
  if (in.size() != size() || out.size() != size()) throw DimensionError("FFT buffer size mismatch");
  if (in.data() == out.data()) throw Error("FFT requires distinct input and output buffers");
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_),
                   reinterpret_cast<fftw_complex*>(const_cast<cd*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(size());
  for (auto& v : out) v *= scale;
}

std::vector<cd> grid_spectrum(const Grid& grid) {
  const Fft2d fft(grid.height(), grid.width());
  const std::size_t n = grid.pixels();
  const std::size_t depth = grid.depth();
  std::vector<cd> spectrum(n * depth);
  const auto values = grid.values();
  parallel_for(depth, [&](std::size_t begin, std::size_t end) {
    std::vector<cd> in(n), out(n);
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t p = 0; p < n; ++p) in[p] = values[p * depth + k];
      fft.forward(in, out);
      for (std::size_t f = 0; f < n; ++f) spectrum[f * depth + k] = out[f];
    }
  });
  return spectrum;
}

Grid grid_from_spectrum(std::span<const cd> spectrum, std::size_t height, std::size_t width,
                        std::size_t depth) {
  const std::size_t n = height * width;
  if (spectrum.size() != n * depth) throw DimensionError("spectrum size mismatch");
  const Fft2d fft(height, width);
  Grid out(height, width, depth);
  auto values = out.values();
  parallel_for(depth, [&](std::size_t begin, std::size_t end) {
    std::vector<cd> in(n), res(n);
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t f = 0; f < n; ++f) in[f] = spectrum[f * depth + k];
      fft.inverse(in, res);
      for (std::size_t p = 0; p < n; ++p) values[p * depth + k] = res[p].real();
    }
  });
  return out;
}

}  // namespace dssi
