#pragma once

#include <span>
#include <vector>

#include "scaleinv/convolve.hpp"
#include "scaleinv/image.hpp"
#include "scaleinv/operator_id.hpp"

namespace scaleinv {

struct OperatorResponse {
  OperatorId op;
  double sigma;
  ScalarMap map;
};

/// Where the partial-derivative kernels come from.
///  - Assembled: gaussian_partial (Hermite recurrence) for every partial.
///  - Characteristic: LoG is a single convolution with its closed-form
///    kernel; the nonlinear operators use closed_form_partial kernels.
/// Both routes convolve first and combine the filtered maps per pixel.
enum class Route { Assembled, Characteristic };

OperatorResponse apply_assembled(const GrayImage& img, OperatorId op, double sigma,
                                 BorderPolicy border = BorderPolicy::MirrorReflect);

OperatorResponse apply_characteristic(const GrayImage& img, OperatorId op, double sigma,
                                      BorderPolicy border = BorderPolicy::MirrorReflect);

OperatorResponse apply_operator(const GrayImage& img, OperatorId op, double sigma, Route route,
                                BorderPolicy border = BorderPolicy::MirrorReflect);

/// Evaluates several operators at one scale, convolving each required partial
/// only once. Results come back in the order of `ops`.
std::vector<OperatorResponse> apply_operators(const GrayImage& img, std::span<const OperatorId> ops,
                                              double sigma, Route route = Route::Assembled,
                                              BorderPolicy border = BorderPolicy::MirrorReflect);

/// Filtered derivatives at one pixel, indexed [nx][ny].
struct Jet {
  double d[4][4] = {};
  double operator()(int nx, int ny) const { return d[nx][ny]; }
};

/// The per-pixel combination step shared by both routes.
double combine(OperatorId op, const Jet& j) noexcept;

}  // namespace scaleinv
