#include "scaleinv/resample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "scaleinv/kernels.hpp"

namespace scaleinv {

ScaleFactor::ScaleFactor(std::size_t source_size, std::size_t target_size)
    : source_(source_size), target_(target_size) {
  if (target_ < kMinTargetSize) {
    throw std::invalid_argument("target size " + std::to_string(target_) + " is below the minimum of " +
                                std::to_string(kMinTargetSize));
  }
  if (target_ > source_) {
    throw std::invalid_argument("target size " + std::to_string(target_) + " exceeds source size " +
                                std::to_string(source_) + " (upscaling is not supported)");
  }
}

double ScaleFactor::source_coordinate(std::size_t i) const noexcept {
  // (i + 0.5) * S / T - 0.5 evaluated with a single rounding.
  const double num = static_cast<double>((2 * i + 1) * source_) - static_cast<double>(target_);
  return num / static_cast<double>(2 * target_);
}

SplineResampler::SplineResampler(std::size_t knots, std::vector<double> positions)
    : n_(knots), pos_(std::move(positions)) {
  if (n_ < 4) throw std::invalid_argument("spline resampling needs at least 4 knots");
  const double last = static_cast<double>(n_ - 1);
  interval_.resize(pos_.size());
  frac_.resize(pos_.size());
  for (std::size_t i = 0; i < pos_.size(); ++i) {
    const double u = pos_[i];
    if (!(u >= 0.0 && u <= last)) {
      throw std::invalid_argument("spline evaluation position outside the knot range");
    }
    const auto j = std::min(static_cast<std::size_t>(u), n_ - 2);
    interval_[i] = j;
    frac_[i] = u - static_cast<double>(j);
  }

  // Not-a-knot on unit spacing: eliminating M_0 = 2 M_1 - M_2 and
  // M_{n-1} = 2 M_{n-2} - M_{n-3} turns the end rows into 6 M = rhs, leaving
  // a tridiagonal system in M_1 .. M_{n-2} with (1, 4, 1) interior rows.
  const std::size_t m = n_ - 2;
  c_prime_.assign(m, 0.0);
  inv_den_.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const bool first = i == 0, final_row = i == m - 1;
    const double lower = first || final_row ? 0.0 : 1.0;
    const double diag = first || final_row ? 6.0 : 4.0;
    const double upper = first || final_row ? 0.0 : 1.0;
    const double den = diag - (i ? lower * c_prime_[i - 1] : 0.0);
    inv_den_[i] = 1.0 / den;
    c_prime_[i] = upper * inv_den_[i];
  }
  rhs_.resize(m);
  m_.resize(n_);
}

void SplineResampler::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != n_ || out.size() != pos_.size()) {
    throw std::invalid_argument("spline resampler: buffer size mismatch");
  }
  const std::size_t m = n_ - 2;
  for (std::size_t i = 0; i < m; ++i) rhs_[i] = 6.0 * (in[i + 2] - 2.0 * in[i + 1] + in[i]);

  // Forward sweep; the lower diagonal is 1 on interior rows and 0 on the ends.
  for (std::size_t i = 0; i < m; ++i) {
    const double lower = (i == 0 || i == m - 1) ? 0.0 : 1.0;
    const double prev = i ? rhs_[i - 1] : 0.0;
    rhs_[i] = (rhs_[i] - lower * prev) * inv_den_[i];
  }
  for (std::size_t i = m - 1; i-- > 0;) rhs_[i] -= c_prime_[i] * rhs_[i + 1];

  for (std::size_t i = 0; i < m; ++i) m_[i + 1] = rhs_[i];
  m_[0] = 2.0 * m_[1] - m_[2];
  m_[n_ - 1] = 2.0 * m_[n_ - 2] - m_[n_ - 3];

  for (std::size_t k = 0; k < pos_.size(); ++k) {
    const std::size_t j = interval_[k];
    const double t = frac_[k];
    const double s = 1.0 - t;
    out[k] = s * in[j] + t * in[j + 1] + ((s * s * s - s) * m_[j] + (t * t * t - t) * m_[j + 1]) / 6.0;
  }
}

namespace {

std::vector<double> target_positions(const ScaleFactor& sf) {
  std::vector<double> pos(sf.target_size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = sf.source_coordinate(i);
  return pos;
}

template <class Tag>
void check_source(const Raster<Tag>& src, const ScaleFactor& sf) {
  if (!src.square() || src.width() != sf.source_size()) {
    throw std::invalid_argument("downscale: image is " + std::to_string(src.width()) + "x" +
                                std::to_string(src.height()) + " but the scale factor expects " +
                                std::to_string(sf.source_size()) + "x" + std::to_string(sf.source_size()));
  }
}

template <class Tag>
Raster<Tag> downscale_impl(const Raster<Tag>& src, const ScaleFactor& sf, bool rows_first) {
  check_source(src, sf);
  const std::size_t n = sf.source_size(), t = sf.target_size();
  const SplineResampler line(n, target_positions(sf));

  std::vector<double> in(n), out(t);
  std::vector<double> mid(n * t);
  std::vector<double> result(t * t);
  if (rows_first) {
    // mid is n rows by t columns.
    for (std::size_t r = 0; r < n; ++r) {
      line.apply(src.row(r), std::span<double>(mid.data() + r * t, t));
    }
    for (std::size_t c = 0; c < t; ++c) {
      for (std::size_t r = 0; r < n; ++r) in[r] = mid[r * t + c];
      line.apply(in, out);
      for (std::size_t r = 0; r < t; ++r) result[r * t + c] = out[r];
    }
  } else {
    // mid is t rows by n columns.
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t r = 0; r < n; ++r) in[r] = src(c, r);
      line.apply(in, out);
      for (std::size_t r = 0; r < t; ++r) mid[r * n + c] = out[r];
    }
    for (std::size_t r = 0; r < t; ++r) {
      line.apply(std::span<const double>(mid.data() + r * n, n), std::span<double>(result.data() + r * t, t));
    }
  }
  return Raster<Tag>(t, t, std::move(result));
}

}  // namespace

GrayImage prefilter(const GrayImage& img, double alpha, BorderPolicy border) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("prefilter: alpha must be >= 1");
  }
  return to_image(convolve(img, gaussian(alpha), border));
}

GrayImage downscale_spline(const GrayImage& src, const ScaleFactor& sf) {
  return downscale_impl(src, sf, true);
}

ScalarMap downscale_spline(const ScalarMap& src, const ScaleFactor& sf) {
  return downscale_impl(src, sf, true);
}

ScalarMap downscale_spline_columns_first(const ScalarMap& src, const ScaleFactor& sf) {
  return downscale_impl(src, sf, false);
}

}  // namespace scaleinv
