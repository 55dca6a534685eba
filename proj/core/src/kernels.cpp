#include "scaleinv/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace scaleinv {

Kernel::Kernel(std::size_t side, std::vector<double> coeffs, double sigma)
    : side_(side), sigma_(sigma), coeffs_(std::move(coeffs)) {
  if (side_ % 2 == 0) {
    throw std::invalid_argument("kernel side must be odd, got " + std::to_string(side_));
  }
  if (coeffs_.size() != side_ * side_) {
    throw std::invalid_argument("kernel needs side*side coefficients");
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("kernel coefficient not finite");
  }
}

double Kernel::sum() const noexcept {
  double s = 0.0;
  for (double c : coeffs_) s += c;
  return s;
}

PartialOrder::PartialOrder(int nx_, int ny_) : nx(nx_), ny(ny_) {
  if (nx < 0 || ny < 0 || nx + ny > 3) {
    throw std::invalid_argument("invalid partial order (" + std::to_string(nx) + ", " +
                                std::to_string(ny) + "): need nx, ny >= 0 and nx + ny <= 3");
  }
}

namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be positive and finite");
  }
}

// Samples f(x, y, G(x, y)) on the integer grid of radius ceil(4 sigma).
template <class F>
Kernel sample(double sigma, F&& f) {
  check_sigma(sigma);
  const int r = kernel_radius(sigma);
  const auto side = static_cast<std::size_t>(2 * r + 1);
  const double s2 = sigma * sigma;
  const double norm = 1.0 / (2.0 * std::numbers::pi * s2);
  std::vector<double> c(side * side);
  for (int y = -r; y <= r; ++y) {
    for (int x = -r; x <= r; ++x) {
      const double g = norm * std::exp(-(x * x + y * y) / (2.0 * s2));
      c[static_cast<std::size_t>(y + r) * side + static_cast<std::size_t>(x + r)] =
          f(static_cast<double>(x), static_cast<double>(y), g);
    }
  }
  return Kernel(side, std::move(c), sigma);
}

// Hermite factor of the n-th derivative of exp(-t^2 / 2 s^2).
double hermite_factor(int n, double t, double s2) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = -t / s2;
  for (int k = 1; k < n; ++k) {
    const double next = -(t / s2) * cur - (k / s2) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Explicit Hermite factors for total order <= 3.
double closed_form_factor(PartialOrder p, double x, double y, double s) {
  const double s2 = s * s, s4 = s2 * s2, s6 = s4 * s2;
  switch (p.nx * 4 + p.ny) {
    case 0: return 1.0;
    case 4: return -x / s2;
    case 1: return -y / s2;
    case 8: return (x * x - s2) / s4;
    case 5: return x * y / s4;
    case 2: return (y * y - s2) / s4;
    case 12: return (3.0 * s2 * x - x * x * x) / s6;
    case 9: return (s2 - x * x) * y / s6;
    case 6: return (s2 - y * y) * x / s6;
    case 3: return (3.0 * s2 * y - y * y * y) / s6;
  }
  return 0.0;
}

double nu6_factor(double x, double y, double s) {
  // -s^2 (x^2 + y^2)^2 / s^12 after simplification, so nu6 of the Gaussian
  // itself is never positive.
  const double s2 = s * s;
  const double s12 = s2 * s2 * s2 * s2 * s2 * s2;
  const double t1 = -(3.0 * s2 * x - x * x * x) * x * y * y;
  const double t2 = (s2 - x * x) * y * (2.0 * x * x * y - y * y * y);
  const double t3 = (s2 - y * y) * x * (2.0 * x * y * y - x * x * x);
  const double t4 = -(3.0 * s2 * y - y * y * y) * x * x * y;
  return (t1 + t2 + t3 + t4) / s12;
}

double nu8_factor(double x, double y, double s) {
  // Simplifies to (x^2 + y^2)^2 (x^2 + y^2 - 3 s^2) / s^12.
  const double s2 = s * s;
  const double s12 = s2 * s2 * s2 * s2 * s2 * s2;
  const double t1 = (3.0 * s2 * x - x * x * x) * x * x * x;
  const double t2 = 3.0 * (s2 - x * x) * x * x * y * y;
  const double t3 = 3.0 * (s2 - y * y) * x * x * y * y;
  const double t4 = (3.0 * s2 * y - y * y * y) * y * y * y;
  return -(t1 + t2 + t3 + t4) / s12;
}

}  // namespace

int kernel_radius(double sigma) {
  check_sigma(sigma);
  return static_cast<int>(std::ceil(4.0 * sigma));
}

Kernel gaussian(double sigma) {
  return sample(sigma, [](double, double, double g) { return g; });
}

Kernel gaussian_partial(double sigma, PartialOrder p) {
  const double s2 = sigma * sigma;
  return sample(sigma, [&](double x, double y, double g) {
    return hermite_factor(p.nx, x, s2) * hermite_factor(p.ny, y, s2) * g;
  });
}

Kernel closed_form_partial(double sigma, PartialOrder p) {
  return sample(sigma, [&](double x, double y, double g) {
    return closed_form_factor(p, x, y, sigma) * g;
  });
}

Kernel characteristic_kernel(OperatorId op, double sigma) {
  const double s = sigma;
  const double s2 = s * s, s4 = s2 * s2, s6 = s4 * s2, s8 = s4 * s4;
  switch (op) {
    case OperatorId::GradientMag:
      return sample(s, [&](double x, double y, double g) { return std::sqrt(x * x + y * y) / s2 * g; });
    case OperatorId::LoG:
      return sample(s, [&](double x, double y, double g) { return (x * x + y * y - 2.0 * s2) / s4 * g; });
    case OperatorId::QV:
      return sample(s, [&](double x, double y, double g) {
        const double a = x * x - s2, b = y * y - s2;
        return std::sqrt(a * a + 2.0 * x * x * y * y + b * b) / s4 * g;
      });
    case OperatorId::Nu2:
      return sample(s, [&](double x, double y, double g) {
        const double x2 = x * x, y2 = y * y;
        return ((x2 * x2 - s2 * x2) + 2.0 * x2 * y2 + (y2 * y2 - s2 * y2)) / s8 * g * g * g;
      });
    case OperatorId::CV:
      return sample(s, [&](double x, double y, double g) {
        const double a = 3.0 * s2 * x - x * x * x;
        const double b = s2 * y - x * x * y;
        const double c = s2 * x - y * y * x;
        const double d = 3.0 * s2 * y - y * y * y;
        return std::sqrt(a * a + 3.0 * b * b + 3.0 * c * c + d * d) / s6 * g;
      });
    case OperatorId::Nu6:
      return sample(s, [&](double x, double y, double g) { return nu6_factor(x, y, s) * g * g * g * g; });
    case OperatorId::SqrtNu6:
      return sample(s, [&](double x, double y, double g) {
        const double v = nu6_factor(x, y, s) * g * g * g * g;
        return std::copysign(std::sqrt(std::fabs(v)), v);
      });
    case OperatorId::Nu8:
      return sample(s, [&](double x, double y, double g) { return nu8_factor(x, y, s) * g * g * g * g; });
  }
  throw std::invalid_argument("unknown operator");
}

std::vector<double> center_row(const Kernel& k) {
  const int r = k.radius();
  std::vector<double> row;
  row.reserve(k.side());
  for (int x = -r; x <= r; ++x) row.push_back(k.tap(x, 0));
  return row;
}

}  // namespace scaleinv
