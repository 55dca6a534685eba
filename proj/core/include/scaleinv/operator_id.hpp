#pragma once

#include <array>
#include <string_view>

namespace scaleinv {

/// Rotationally invariant Gaussian-derivative operators.
enum class OperatorId {
  GradientMag,  // sqrt(Gx^2 + Gy^2)
  LoG,          // Gxx + Gyy
  QV,           // sqrt(Gxx^2 + 2 Gxy^2 + Gyy^2)
  Nu2,          // Gxx Gx^2 + 2 Gxy Gx Gy + Gyy Gy^2
  CV,           // sqrt(Gxxx^2 + 3 Gxxy^2 + 3 Gxyy^2 + Gyyy^2)
  Nu6,          // Gxxx Gx Gy^2 + Gxxy (Gy^3 - 2 Gx^2 Gy) + Gxyy (Gx^3 - 2 Gx Gy^2) + Gyyy Gx^2 Gy
  SqrtNu6,      // sign(nu6) sqrt(|nu6|)
  Nu8,          // Gxxx Gx^3 + 3 Gxxy Gx^2 Gy + 3 Gxyy Gx Gy^2 + Gyyy Gy^3
};

inline constexpr std::array<OperatorId, 8> kAllOperators = {
    OperatorId::GradientMag, OperatorId::LoG, OperatorId::QV,      OperatorId::Nu2,
    OperatorId::CV,          OperatorId::Nu6, OperatorId::SqrtNu6, OperatorId::Nu8};

/// Exponent n of the alpha^n factor a response picks up when the image is
/// shrunk by alpha and the operator scale with it.
constexpr int scale_order(OperatorId op) noexcept {
  switch (op) {
    case OperatorId::GradientMag: return 1;
    case OperatorId::LoG: return 2;
    case OperatorId::QV: return 2;
    case OperatorId::CV: return 3;
    case OperatorId::SqrtNu6: return 3;
    case OperatorId::Nu2: return 4;
    case OperatorId::Nu6: return 6;
    case OperatorId::Nu8: return 6;
  }
  return 0;
}

/// Degree of the response as a polynomial in image intensity: scaling the
/// image by k scales the response by k^degree.
constexpr int brightness_degree(OperatorId op) noexcept {
  switch (op) {
    case OperatorId::Nu2: return 3;
    case OperatorId::Nu6:
    case OperatorId::Nu8: return 4;
    case OperatorId::SqrtNu6: return 2;
    default: return 1;
  }
}

/// Short lowercase name used on the command line ("grad", "log", "qv", "nu2",
/// "cv", "nu6", "sqrtnu6", "nu8").
std::string_view to_string(OperatorId op) noexcept;

/// Inverse of to_string; throws std::invalid_argument on unknown names.
OperatorId parse_operator(std::string_view name);

}  // namespace scaleinv
