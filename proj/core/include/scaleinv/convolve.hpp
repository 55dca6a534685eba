#pragma once

#include <cstddef>
#include <string_view>

#include "scaleinv/image.hpp"
#include "scaleinv/kernels.hpp"

namespace scaleinv {

/// How samples outside the image are synthesized.
///  - MirrorReflect: half-sample symmetric, `... c b a | a b c ...`
///  - ReplicateEdge: `a a a | a b c ...`
///  - ZeroPad:       `0 0 0 | a b c ...`
enum class BorderPolicy { MirrorReflect, ReplicateEdge, ZeroPad };

std::string_view to_string(BorderPolicy b) noexcept;
BorderPolicy parse_border_policy(std::string_view name);

/// Maps an out-of-range index onto [0, n) under `b`. Returns -1 for ZeroPad
/// indices that fall outside.
std::ptrdiff_t border_index(std::ptrdiff_t i, std::ptrdiff_t n, BorderPolicy b) noexcept;

/// True convolution (the kernel is flipped):
///   out(x, y) = sum_{dx,dy} k(dx, dy) * img(x - dx, y - dy)
/// with taps indexed by their offset from the kernel center. For a
/// derivative-of-Gaussian kernel this yields the derivative of the smoothed
/// image with unit gain, e.g. a ramp I = x gives I * G_x = 1.
ScalarMap convolve(const GrayImage& img, const Kernel& k,
                   BorderPolicy border = BorderPolicy::MirrorReflect);

}  // namespace scaleinv
