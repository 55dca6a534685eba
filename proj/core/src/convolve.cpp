#include "scaleinv/convolve.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace scaleinv {

std::string_view to_string(BorderPolicy b) noexcept {
  switch (b) {
    case BorderPolicy::MirrorReflect: return "mirror";
    case BorderPolicy::ReplicateEdge: return "replicate";
    case BorderPolicy::ZeroPad: return "zero";
  }
  return "?";
}

BorderPolicy parse_border_policy(std::string_view name) {
  if (name == "mirror") return BorderPolicy::MirrorReflect;
  if (name == "replicate") return BorderPolicy::ReplicateEdge;
  if (name == "zero") return BorderPolicy::ZeroPad;
  throw std::invalid_argument("unknown border policy '" + std::string(name) +
                              "' (expected mirror, replicate or zero)");
}

std::ptrdiff_t border_index(std::ptrdiff_t i, std::ptrdiff_t n, BorderPolicy b) noexcept {
  if (i >= 0 && i < n) return i;
  switch (b) {
    case BorderPolicy::ZeroPad: return -1;
    case BorderPolicy::ReplicateEdge: return i < 0 ? 0 : n - 1;
    case BorderPolicy::MirrorReflect: {
      // Period 2n; the second half of each period runs backwards.
      const std::ptrdiff_t period = 2 * n;
      std::ptrdiff_t m = i % period;
      if (m < 0) m += period;
      return m < n ? m : period - 1 - m;
    }
  }
  return -1;
}

ScalarMap convolve(const GrayImage& img, const Kernel& k, BorderPolicy border) {
  const auto w = static_cast<std::ptrdiff_t>(img.width());
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  const int r = k.radius();
  const std::ptrdiff_t pw = w + 2 * r;
  const std::ptrdiff_t ph = h + 2 * r;

  // Extend the image once so the inner loop runs without bounds logic.
  std::vector<double> padded(static_cast<std::size_t>(pw * ph), 0.0);
  for (std::ptrdiff_t y = 0; y < ph; ++y) {
    const std::ptrdiff_t sy = border_index(y - r, h, border);
    if (sy < 0) continue;
    for (std::ptrdiff_t x = 0; x < pw; ++x) {
      const std::ptrdiff_t sx = border_index(x - r, w, border);
      if (sx < 0) continue;
      padded[static_cast<std::size_t>(y * pw + x)] =
          img(static_cast<std::size_t>(sx), static_cast<std::size_t>(sy));
    }
  }

  std::vector<double> out(static_cast<std::size_t>(w * h), 0.0);
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    double* dst = out.data() + y * w;
    for (int ey = -r; ey <= r; ++ey) {
      const double* src_row = padded.data() + (y + ey + r) * pw + r;
      for (int ex = -r; ex <= r; ++ex) {
        const double c = k.tap(-ex, -ey);
        if (c == 0.0) continue;
        const double* src = src_row + ex;
        for (std::ptrdiff_t x = 0; x < w; ++x) dst[x] += c * src[x];
      }
    }
  }
  return ScalarMap(img.width(), img.height(), std::move(out));
}

}  // namespace scaleinv
