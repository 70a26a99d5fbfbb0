#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dssi {

enum class DType : std::uint8_t { f32 = 1, f64 = 2 };

/// Generic n-d real array as stored on disk. Values are held in double
/// precision regardless of the storage dtype; f32 tensors only ever hold
/// values exactly representable in single precision.
struct Tensor {
  std::vector<std::uint64_t> dims;
  DType dtype = DType::f64;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::vector<std::uint64_t> dims, DType dtype, std::vector<double> data);

  std::size_t element_count() const;
};

/// Height x width x depth array, row-major with depth fastest.
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t height, std::size_t width, std::size_t depth);
  Grid(std::size_t height, std::size_t width, std::size_t depth, std::vector<double> values);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t depth() const { return depth_; }
  std::size_t pixels() const { return height_ * width_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t y, std::size_t x, std::size_t k) {
    return values_[(y * width_ + x) * depth_ + k];
  }
  double operator()(std::size_t y, std::size_t x, std::size_t k) const {
    return values_[(y * width_ + x) * depth_ + k];
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& storage() { return values_; }
  const std::vector<double>& storage() const { return values_; }

  bool same_shape(const Grid& other) const {
    return height_ == other.height_ && width_ == other.width_ && depth_ == other.depth_;
  }

  /// Copies plane `k` out as a dense height x width array.
  std::vector<double> plane(std::size_t k) const;
  void set_plane(std::size_t k, std::span<const double> plane);

  /// Central sub-window with `margin` pixels removed from every edge.
  Grid cropped(std::size_t margin) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t depth_ = 0;
  std::vector<double> values_;
};

/// H x W x N_lambda radiance cube.
class SpectralCube : public Grid {
 public:
  SpectralCube() = default;
  SpectralCube(std::size_t height, std::size_t width, std::size_t bands);
  SpectralCube(std::size_t height, std::size_t width, std::size_t bands, std::vector<double> values);
  explicit SpectralCube(Grid grid);

  std::size_t bands() const { return depth(); }
  SpectralCube cropped(std::size_t margin) const { return SpectralCube(Grid::cropped(margin)); }
};

/// H x W x 3 sensor image (r, g, b).
class CodedImage : public Grid {
 public:
  static constexpr std::size_t kChannels = 3;

  CodedImage() = default;
  CodedImage(std::size_t height, std::size_t width);
  CodedImage(std::size_t height, std::size_t width, std::vector<double> values);
  explicit CodedImage(Grid grid);

  std::size_t channels() const { return depth(); }
};

double dot(const Grid& a, const Grid& b);
double norm(const Grid& a);
double max_abs_diff(const Grid& a, const Grid& b);
/// ||a - b||_2
double distance(const Grid& a, const Grid& b);

/// a <- a + s * b
void axpy(double s, const Grid& b, Grid& a);

SpectralCube to_cube(const Tensor& t);
CodedImage to_coded_image(const Tensor& t);
Tensor to_tensor(const Grid& g, DType dtype = DType::f64);

}  // namespace dssi
