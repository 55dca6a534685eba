#pragma once

#include "scaleinv/image.hpp"
#include "scaleinv/operator_id.hpp"
#include "scaleinv/operators.hpp"

namespace scaleinv {

/// First, second and third order derivative values at a point: f', f'', f'''
/// in 1-d, or the order-1/2/3 operator responses at a pixel in 2-d.
struct DerivTriple {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// (f^(n))^(k/n) / f^(k). Scale invariant, but not invariant to a brightness
/// factor. Throws std::domain_error on a zero denominator or on a negative
/// base with a non-integer exponent.
double theta_sm(double fn_val, double fk_val, int n, int k);

/// f' f''' / f''^2. Throws std::domain_error when f'' == 0.
double theta_123(const DerivTriple& t);

/// f^(k) f^(k+2) / f^(k+1)^2. Throws std::domain_error when dk1 == 0.
double theta_g3(double dk, double dk1, double dk2);

/// Bounded form of theta_123. With p = d1 d3 and q = d2^2:
///   0      if q == 0 and p == 0
///   p / q  if |p| < q
///   q / p  otherwise
/// The result always lies in [-1, 1]. Inputs are rescaled by a common power
/// of two first, which leaves the ratio bit-identical but keeps p and q from
/// overflowing for magnitudes up to the double range.
double theta_m123(const DerivTriple& t) noexcept;

struct OperatorTriple {
  OperatorId first = OperatorId::GradientMag;
  OperatorId second = OperatorId::LoG;
  OperatorId third = OperatorId::CV;

  friend bool operator==(const OperatorTriple&, const OperatorTriple&) = default;
};

/// Throws std::invalid_argument unless the scale orders are 1, 2 and 3.
void validate_triple(const OperatorTriple& t);

struct InvariantMap {
  ScalarMap map;
  OperatorTriple triple;
  double sigma = 0.0;
};

/// Per-pixel theta_m123 over three responses sharing shape and sigma.
InvariantMap theta_m123_map(const OperatorResponse& r1, const OperatorResponse& r2,
                            const OperatorResponse& r3);

/// Convenience: evaluates the triple on `img` at `sigma` and builds the map.
InvariantMap invariant_map(const GrayImage& img, double sigma, const OperatorTriple& triple = {},
                           BorderPolicy border = BorderPolicy::MirrorReflect);

}  // namespace scaleinv
