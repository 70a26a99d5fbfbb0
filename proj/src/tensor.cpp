#include "dssi/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "dssi/error.hpp"

namespace dssi {

Tensor::Tensor(std::vector<std::uint64_t> d, DType t, std::vector<double> v)
    : dims(std::move(d)), dtype(t), data(std::move(v)) {
  if (element_count() != data.size()) {
    throw DimensionError("tensor dims describe " + std::to_string(element_count()) +
                         " elements but " + std::to_string(data.size()) + " were supplied");
  }
}

std::size_t Tensor::element_count() const {
  if (dims.empty()) return 0;
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

Grid::Grid(std::size_t height, std::size_t width, std::size_t depth)
    : height_(height), width_(width), depth_(depth), values_(height * width * depth, 0.0) {}

Grid::Grid(std::size_t height, std::size_t width, std::size_t depth, std::vector<double> values)
    : height_(height), width_(width), depth_(depth), values_(std::move(values)) {
  if (values_.size() != height * width * depth) {
    throw DimensionError("grid " + std::to_string(height) + "x" + std::to_string(width) + "x" +
                         std::to_string(depth) + " given " + std::to_string(values_.size()) +
                         " values");
  }
}

std::vector<double> Grid::plane(std::size_t k) const {
  std::vector<double> out(pixels());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = values_[p * depth_ + k];
  return out;
}

void Grid::set_plane(std::size_t k, std::span<const double> plane) {
  if (plane.size() != pixels()) throw DimensionError("plane size mismatch");
  for (std::size_t p = 0; p < plane.size(); ++p) values_[p * depth_ + k] = plane[p];
}

Grid Grid::cropped(std::size_t margin) const {
  if (2 * margin >= height_ || 2 * margin >= width_) {
    throw ParameterError("crop of " + std::to_string(margin) + " px per edge leaves nothing of a " +
                         std::to_string(height_) + "x" + std::to_string(width_) + " grid");
  }
  const std::size_t h = height_ - 2 * margin;
  const std::size_t w = width_ - 2 * margin;
  Grid out(h, w, depth_);
  for (std::size_t y = 0; y < h; ++y) {
    const auto src = values_.begin() + static_cast<std::ptrdiff_t>(((y + margin) * width_ + margin) * depth_);
    std::copy(src, src + static_cast<std::ptrdiff_t>(w * depth_),
              out.values_.begin() + static_cast<std::ptrdiff_t>(y * w * depth_));
  }
  return out;
}

SpectralCube::SpectralCube(std::size_t height, std::size_t width, std::size_t bands)
    : Grid(height, width, bands) {}

SpectralCube::SpectralCube(std::size_t height, std::size_t width, std::size_t bands,
                           std::vector<double> values)
    : Grid(height, width, bands, std::move(values)) {}

SpectralCube::SpectralCube(Grid grid) : Grid(std::move(grid)) {}

CodedImage::CodedImage(std::size_t height, std::size_t width) : Grid(height, width, kChannels) {}

CodedImage::CodedImage(std::size_t height, std::size_t width, std::vector<double> values)
    : Grid(height, width, kChannels, std::move(values)) {}

CodedImage::CodedImage(Grid grid) : Grid(std::move(grid)) {
  if (depth() != kChannels) {
    throw DimensionError("coded image must have exactly 3 channels, got " + std::to_string(depth()));
  }
}

double dot(const Grid& a, const Grid& b) {
  if (!a.same_shape(b)) throw DimensionError("dot: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.values()[i] * b.values()[i];
  return s;
}

double norm(const Grid& a) { return std::sqrt(dot(a, a)); }

double max_abs_diff(const Grid& a, const Grid& b) {
  if (!a.same_shape(b)) throw DimensionError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

double distance(const Grid& a, const Grid& b) {
  if (!a.same_shape(b)) throw DimensionError("distance: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values()[i] - b.values()[i];
    s += d * d;
  }
  return std::sqrt(s);
}

void axpy(double s, const Grid& b, Grid& a) {
  if (!a.same_shape(b)) throw DimensionError("axpy: shape mismatch");
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) av[i] += s * bv[i];
}

namespace {

Grid grid_from_tensor(const Tensor& t) {
  if (t.dims.size() != 3) {
    throw DimensionError("expected a 3-d tensor (H, W, depth), got " + std::to_string(t.dims.size()) +
                         " dims");
  }
  return Grid(t.dims[0], t.dims[1], t.dims[2], t.data);
}

}  // namespace

SpectralCube to_cube(const Tensor& t) { return SpectralCube(grid_from_tensor(t)); }

CodedImage to_coded_image(const Tensor& t) { return CodedImage(grid_from_tensor(t)); }

Tensor to_tensor(const Grid& g, DType dtype) {
  std::vector<double> data = g.storage();
  if (dtype == DType::f32) {
    for (double& v : data) v = static_cast<double>(static_cast<float>(v));
  }
  return Tensor({g.height(), g.width(), g.depth()}, dtype, std::move(data));
}

}  // namespace dssi
