#pragma once

#include <cstddef>
#include <vector>

namespace dssi {

/// Sensor spectral response: a 3 x N_lambda non-negative matrix, rows r, g, b.
class SpectralResponse {
 public:
  SpectralResponse() = default;
  /// `values` is row-major 3 x bands.
  SpectralResponse(std::size_t bands, std::vector<double> values);

  /// 3 x 3 identity zero-padded to `bands` columns (channel c sees band c only).
  static SpectralResponse identity(std::size_t bands);

  std::size_t bands() const { return bands_; }
  double operator()(std::size_t c, std::size_t i) const { return values_[c * bands_ + i]; }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const SpectralResponse&, const SpectralResponse&) = default;

 private:
  std::size_t bands_ = 0;
  std::vector<double> values_;
};

}  // namespace dssi
