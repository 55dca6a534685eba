#include "scaleinv/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scaleinv {

double theta_sm(double fn_val, double fk_val, int n, int k) {
  if (n <= 0 || k <= 0) throw std::invalid_argument("theta_sm: derivative orders must be positive");
  if (fk_val == 0.0) throw std::domain_error("theta_sm: f^(k) is zero");
  if (k % n == 0) return std::pow(fn_val, static_cast<double>(k / n)) / fk_val;
  if (fn_val < 0.0) {
    throw std::domain_error("theta_sm: negative f^(n) raised to the non-integer power " +
                            std::to_string(k) + "/" + std::to_string(n));
  }
  return std::pow(fn_val, static_cast<double>(k) / n) / fk_val;
}

double theta_123(const DerivTriple& t) {
  if (t.d2 == 0.0) throw std::domain_error("theta_123: f'' is zero");
  return t.d1 * t.d3 / (t.d2 * t.d2);
}

double theta_g3(double dk, double dk1, double dk2) {
  if (dk1 == 0.0) throw std::domain_error("theta_g3: f^(k+1) is zero");
  return dk * dk2 / (dk1 * dk1);
}

double theta_m123(const DerivTriple& t) noexcept {
  const double m = std::max({std::fabs(t.d1), std::fabs(t.d2), std::fabs(t.d3)});
  if (m == 0.0) return 0.0;
  int e = 0;
  std::frexp(m, &e);
  const double d1 = std::ldexp(t.d1, -e);
  const double d2 = std::ldexp(t.d2, -e);
  const double d3 = std::ldexp(t.d3, -e);

  const double p = d1 * d3;
  const double q = d2 * d2;
  if (q == 0.0 && p == 0.0) return 0.0;
  if (std::fabs(p) < q) return p / q;
  return q / p;
}

void validate_triple(const OperatorTriple& t) {
  if (scale_order(t.first) != 1 || scale_order(t.second) != 2 || scale_order(t.third) != 3) {
    throw std::invalid_argument(std::string("operator triple must have scale orders 1, 2, 3; got ") +
                                std::string(to_string(t.first)) + "," + std::string(to_string(t.second)) +
                                "," + std::string(to_string(t.third)));
  }
}

InvariantMap theta_m123_map(const OperatorResponse& r1, const OperatorResponse& r2,
                            const OperatorResponse& r3) {
  const OperatorTriple triple{r1.op, r2.op, r3.op};
  validate_triple(triple);
  if (!r1.map.same_shape(r2.map) || !r1.map.same_shape(r3.map)) {
    throw std::invalid_argument("theta_m123_map: response maps differ in size");
  }
  if (r1.sigma != r2.sigma || r1.sigma != r3.sigma) {
    throw std::invalid_argument("theta_m123_map: responses were computed at different sigma");
  }
  const auto a = r1.map.samples(), b = r2.map.samples(), c = r3.map.samples();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = theta_m123({a[i], b[i], c[i]});
  return {ScalarMap(r1.map.width(), r1.map.height(), std::move(out)), triple, r1.sigma};
}

InvariantMap invariant_map(const GrayImage& img, double sigma, const OperatorTriple& triple,
                           BorderPolicy border) {
  validate_triple(triple);
  const OperatorId ops[] = {triple.first, triple.second, triple.third};
  auto r = apply_operators(img, ops, sigma, Route::Assembled, border);
  return theta_m123_map(r[0], r[1], r[2]);
}

}  // namespace scaleinv
