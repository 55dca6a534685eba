#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scaleinv/operator_id.hpp"

namespace scaleinv {

/// Square, odd-sided grid of filter taps. Taps are addressed by their offset
/// (dx, dy) from the center, dx along columns and dy along rows, each in
/// [-radius, radius].
class Kernel {
 public:
  /// Arbitrary taps in row-major order. `sigma` is informational and may be 0
  /// for kernels not derived from a Gaussian.
  Kernel(std::size_t side, std::vector<double> coeffs, double sigma = 0.0);

  std::size_t side() const noexcept { return side_; }
  std::size_t center() const noexcept { return (side_ - 1) / 2; }
  int radius() const noexcept { return static_cast<int>(center()); }
  double sigma() const noexcept { return sigma_; }

  double tap(int dx, int dy) const {
    return coeffs_[static_cast<std::size_t>(dy + radius()) * side_ +
                   static_cast<std::size_t>(dx + radius())];
  }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  double sum() const noexcept;

 private:
  std::size_t side_;
  double sigma_;
  std::vector<double> coeffs_;
};

/// Orders of a partial derivative d^(nx+ny) / dx^nx dy^ny, total order <= 3.
struct PartialOrder {
  int nx = 0;
  int ny = 0;

  PartialOrder() = default;
  PartialOrder(int nx_, int ny_);

  int total() const noexcept { return nx + ny; }
  friend bool operator==(PartialOrder, PartialOrder) = default;
};

/// ceil(4 sigma); every synthesized kernel has side 2 * radius + 1.
int kernel_radius(double sigma);

/// Sampled 2-d Gaussian, (1 / 2 pi s^2) exp(-(x^2 + y^2) / 2 s^2). Not
/// renormalized after truncation.
Kernel gaussian(double sigma);

/// Partial derivative of the Gaussian, obtained by repeated differentiation
/// through the Hermite recurrence
///   g_{n+1}(t) = -(t / s^2) g_n(t) - (n / s^2) g_{n-1}(t)
/// applied independently along x and y.
Kernel gaussian_partial(double sigma, PartialOrder p);

/// The same partials from their explicit closed forms (G_x = -x/s^2 G,
/// G_xx = (x^2 - s^2)/s^4 G, G_xxx = (3 s^2 x - x^3)/s^6 G, ...). Kept
/// separate from gaussian_partial so the two construction paths can check
/// each other.
Kernel closed_form_partial(double sigma, PartialOrder p);

/// Kernel sampled from an operator's closed-form spatial expression, i.e. the
/// operator applied pointwise to the Gaussian itself. For LoG this is a
/// linear filter; for the nonlinear operators it is the picture of the
/// operator (what gets plotted), not something to convolve an image with.
Kernel characteristic_kernel(OperatorId op, double sigma);

/// Center row (dy = 0) of a kernel, from dx = -radius to +radius.
std::vector<double> center_row(const Kernel& k);

}  // namespace scaleinv
