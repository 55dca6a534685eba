#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scaleinv {

namespace detail {
struct IntensityTag {};
struct MapTag {};
}  // namespace detail

/// Row-major grid of finite doubles. The tag keeps intensity images and
/// derived maps (responses, invariants, errors) from being mixed up.
template <class Tag>
class Raster {
 public:
  Raster() = default;

  Raster(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), samples_(width * height, fill) {
    check_shape();
    if (!std::isfinite(fill)) throw std::invalid_argument("raster: non-finite fill value");
  }

  Raster(std::size_t width, std::size_t height, std::vector<double> samples)
      : width_(width), height_(height), samples_(std::move(samples)) {
    check_shape();
    if (samples_.size() != width_ * height_) {
      throw std::invalid_argument("raster: sample count " + std::to_string(samples_.size()) +
                                  " does not match " + std::to_string(width_) + "x" +
                                  std::to_string(height_));
    }
    for (double v : samples_) {
      if (!std::isfinite(v)) throw std::invalid_argument("raster: non-finite sample");
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  bool square() const noexcept { return width_ == height_; }

  double operator()(std::size_t col, std::size_t row) const { return samples_[row * width_ + col]; }
  double& operator()(std::size_t col, std::size_t row) { return samples_[row * width_ + col]; }

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<double> samples() noexcept { return samples_; }
  std::span<const double> row(std::size_t r) const { return {samples_.data() + r * width_, width_}; }
  std::span<double> row(std::size_t r) { return {samples_.data() + r * width_, width_}; }

  template <class OtherTag>
  bool same_shape(const Raster<OtherTag>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  void check_shape() const {
    if (width_ == 0 || height_ == 0) throw std::invalid_argument("raster: width and height must be positive");
  }

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> samples_;
};

/// Intensity image. Samples from 8-bit files keep their raw 0..255 values.
using GrayImage = Raster<detail::IntensityTag>;

/// Per-pixel result of arbitrary sign: operator responses, invariant and error maps.
using ScalarMap = Raster<detail::MapTag>;

template <class To, class From>
Raster<To> retag(const Raster<From>& src) {
  std::vector<double> s(src.samples().begin(), src.samples().end());
  return Raster<To>(src.width(), src.height(), std::move(s));
}

inline ScalarMap to_map(const GrayImage& img) { return retag<detail::MapTag>(img); }
inline GrayImage to_image(const ScalarMap& map) { return retag<detail::IntensityTag>(map); }

/// Counter-clockwise quarter turn: output(c, r) = input(W-1-r, c).
template <class Tag>
Raster<Tag> rot90(const Raster<Tag>& src) {
  const std::size_t w = src.width(), h = src.height();
  std::vector<double> out(w * h);
  for (std::size_t r = 0; r < w; ++r) {
    for (std::size_t c = 0; c < h; ++c) out[r * h + c] = src(w - 1 - r, c);
  }
  return Raster<Tag>(h, w, std::move(out));
}

}  // namespace scaleinv
