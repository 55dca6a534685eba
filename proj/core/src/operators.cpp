#include "scaleinv/operators.hpp"

#include <array>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "scaleinv/kernels.hpp"

namespace scaleinv {

std::string_view to_string(OperatorId op) noexcept {
  switch (op) {
    case OperatorId::GradientMag: return "grad";
    case OperatorId::LoG: return "log";
    case OperatorId::QV: return "qv";
    case OperatorId::Nu2: return "nu2";
    case OperatorId::CV: return "cv";
    case OperatorId::Nu6: return "nu6";
    case OperatorId::SqrtNu6: return "sqrtnu6";
    case OperatorId::Nu8: return "nu8";
  }
  return "?";
}

OperatorId parse_operator(std::string_view name) {
  for (OperatorId op : kAllOperators) {
    if (to_string(op) == name) return op;
  }
  throw std::invalid_argument("unknown operator '" + std::string(name) +
                              "' (expected grad, log, qv, nu2, cv, nu6, sqrtnu6 or nu8)");
}

double combine(OperatorId op, const Jet& j) noexcept {
  const double x = j(1, 0), y = j(0, 1);
  const double xx = j(2, 0), xy = j(1, 1), yy = j(0, 2);
  const double xxx = j(3, 0), xxy = j(2, 1), xyy = j(1, 2), yyy = j(0, 3);
  switch (op) {
    case OperatorId::GradientMag: return std::sqrt(x * x + y * y);
    case OperatorId::LoG: return xx + yy;
    case OperatorId::QV: return std::sqrt(xx * xx + 2.0 * xy * xy + yy * yy);
    case OperatorId::Nu2: return xx * x * x + 2.0 * xy * x * y + yy * y * y;
    case OperatorId::CV:
      return std::sqrt(xxx * xxx + 3.0 * xxy * xxy + 3.0 * xyy * xyy + yyy * yyy);
    case OperatorId::Nu6:
    case OperatorId::SqrtNu6: {
      const double v = xxx * x * y * y + xxy * (-2.0 * x * x * y + y * y * y) +
                       xyy * (-2.0 * x * y * y + x * x * x) + yyy * x * x * y;
      return op == OperatorId::Nu6 ? v : std::copysign(std::sqrt(std::fabs(v)), v);
    }
    case OperatorId::Nu8:
      return xxx * x * x * x + 3.0 * xxy * x * x * y + 3.0 * xyy * x * y * y + yyy * y * y * y;
  }
  return 0.0;
}

namespace {

using PartialSet = std::array<bool, 16>;  // index nx * 4 + ny

void require(PartialSet& set, std::initializer_list<std::pair<int, int>> orders) {
  for (auto [nx, ny] : orders) set[static_cast<std::size_t>(nx * 4 + ny)] = true;
}

PartialSet partials_for(OperatorId op) {
  PartialSet s{};
  switch (op) {
    case OperatorId::GradientMag: require(s, {{1, 0}, {0, 1}}); break;
    case OperatorId::LoG: require(s, {{2, 0}, {0, 2}}); break;
    case OperatorId::QV: require(s, {{2, 0}, {1, 1}, {0, 2}}); break;
    case OperatorId::Nu2: require(s, {{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}); break;
    case OperatorId::CV: require(s, {{3, 0}, {2, 1}, {1, 2}, {0, 3}}); break;
    case OperatorId::Nu6:
    case OperatorId::SqrtNu6:
    case OperatorId::Nu8: require(s, {{1, 0}, {0, 1}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}); break;
  }
  return s;
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("operator sigma must be positive and finite");
  }
}

}  // namespace

std::vector<OperatorResponse> apply_operators(const GrayImage& img, std::span<const OperatorId> ops,
                                              double sigma, Route route, BorderPolicy border) {
  check_sigma(sigma);

  // LoG on the characteristic route is one linear filter; everything else
  // goes through filtered partials.
  auto direct_log = [&](OperatorId op) { return route == Route::Characteristic && op == OperatorId::LoG; };

  PartialSet needed{};
  for (OperatorId op : ops) {
    if (direct_log(op)) continue;
    const PartialSet s = partials_for(op);
    for (std::size_t i = 0; i < s.size(); ++i) needed[i] = needed[i] || s[i];
  }

  std::array<std::optional<ScalarMap>, 16> filtered;
  for (int nx = 0; nx <= 3; ++nx) {
    for (int ny = 0; nx + ny <= 3; ++ny) {
      const auto idx = static_cast<std::size_t>(nx * 4 + ny);
      if (!needed[idx]) continue;
      const PartialOrder p(nx, ny);
      const Kernel k = route == Route::Assembled ? gaussian_partial(sigma, p) : closed_form_partial(sigma, p);
      filtered[idx] = convolve(img, k, border);
    }
  }

  std::vector<OperatorResponse> out;
  out.reserve(ops.size());
  const std::size_t n = img.size();
  for (OperatorId op : ops) {
    if (direct_log(op)) {
      out.push_back({op, sigma, convolve(img, characteristic_kernel(OperatorId::LoG, sigma), border)});
      continue;
    }
    std::vector<double> values(n);
    Jet jet;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t idx = 0; idx < filtered.size(); ++idx) {
        if (filtered[idx]) jet.d[idx / 4][idx % 4] = filtered[idx]->samples()[i];
      }
      values[i] = combine(op, jet);
    }
    out.push_back({op, sigma, ScalarMap(img.width(), img.height(), std::move(values))});
  }
  return out;
}

OperatorResponse apply_operator(const GrayImage& img, OperatorId op, double sigma, Route route,
                                BorderPolicy border) {
  const OperatorId ops[] = {op};
  return std::move(apply_operators(img, ops, sigma, route, border).front());
}

OperatorResponse apply_assembled(const GrayImage& img, OperatorId op, double sigma, BorderPolicy border) {
  return apply_operator(img, op, sigma, Route::Assembled, border);
}

OperatorResponse apply_characteristic(const GrayImage& img, OperatorId op, double sigma,
                                      BorderPolicy border) {
  return apply_operator(img, op, sigma, Route::Characteristic, border);
}

}  // namespace scaleinv
