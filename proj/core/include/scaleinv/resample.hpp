#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scaleinv/convolve.hpp"
#include "scaleinv/image.hpp"

namespace scaleinv {

/// Zoom-out factor between a square source and a square target of integer
/// side: alpha = source_size / target_size.
class ScaleFactor {
 public:
  static constexpr std::size_t kMinTargetSize = 8;

  /// Throws std::invalid_argument if target > source or target < 8.
  ScaleFactor(std::size_t source_size, std::size_t target_size);

  std::size_t source_size() const noexcept { return source_; }
  std::size_t target_size() const noexcept { return target_; }
  double alpha() const noexcept {
    return static_cast<double>(source_) / static_cast<double>(target_);
  }

  /// Source coordinate sampled by output index i: (i + 0.5) alpha - 0.5.
  double source_coordinate(std::size_t i) const noexcept;

 private:
  std::size_t source_;
  std::size_t target_;
};

/// 1-d not-a-knot cubic spline through the values at knots 0, 1, ..., n-1,
/// evaluated at a fixed list of positions. The tridiagonal factorization and
/// the interval lookup are computed once and reused for every line.
class SplineResampler {
 public:
  /// Needs at least 4 knots; positions must lie in [0, n-1].
  SplineResampler(std::size_t knots, std::vector<double> positions);

  std::size_t knots() const noexcept { return n_; }
  std::size_t outputs() const noexcept { return pos_.size(); }

  /// `in` has knots() values, `out` has outputs() values. Not thread-safe on
  /// one instance (uses scratch storage).
  void apply(std::span<const double> in, std::span<double> out) const;

 private:
  std::size_t n_;
  std::vector<double> pos_;
  std::vector<std::size_t> interval_;
  std::vector<double> frac_;
  std::vector<double> c_prime_;  // forward-sweep coefficients of the Thomas solve
  std::vector<double> inv_den_;
  mutable std::vector<double> rhs_;
  mutable std::vector<double> m_;
};

/// Gaussian lowpass with sigma = alpha, same dimensions.
GrayImage prefilter(const GrayImage& img, double alpha,
                    BorderPolicy border = BorderPolicy::MirrorReflect);

/// Separable spline downscale: rows first, then columns.
GrayImage downscale_spline(const GrayImage& src, const ScaleFactor& sf);
ScalarMap downscale_spline(const ScalarMap& src, const ScaleFactor& sf);

/// Column-then-row order; the two orders agree to rounding.
ScalarMap downscale_spline_columns_first(const ScalarMap& src, const ScaleFactor& sf);

}  // namespace scaleinv
