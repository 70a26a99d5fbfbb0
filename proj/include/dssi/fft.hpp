#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dssi/tensor.hpp"

namespace dssi {

using cd = std::complex<double>;

/// 2-D complex DFT of a fixed height x width. Forward is unnormalized,
/// inverse carries the 1/(height*width) factor. Safe for concurrent use.
class Fft2d {
 public:
  Fft2d(std::size_t height, std::size_t width);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t size() const { return height_ * width_; }

  void forward(std::span<const cd> in, std::span<cd> out) const;
  void inverse(std::span<const cd> in, std::span<cd> out) const;

 private:
  std::size_t height_;
  std::size_t width_;
  void* forward_plan_;
  void* inverse_plan_;
};

/// Per-plane DFT of a grid. The result is frequency-major: entry
/// [f * depth + k] is bin f of plane k, so the spectrum at one frequency
/// across all planes is contiguous.
std::vector<cd> grid_spectrum(const Grid& grid);

/// Inverse of grid_spectrum, keeping the real part.
Grid grid_from_spectrum(std::span<const cd> spectrum, std::size_t height, std::size_t width,
                        std::size_t depth);

}  // namespace dssi
