#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scaleinv/convolve.hpp"
#include "scaleinv/image.hpp"
#include "scaleinv/invariant.hpp"
#include "scaleinv/resample.hpp"

namespace scaleinv {

/// Parameters of one zoom-out simulation.
///
/// The operator runs at sigma_base on the original image (scaling by
/// filtering, SF) and at sigma_base / alpha on the downscaled image (scaling
/// by optical zooming, SO). Only the ratio alpha between the two scales
/// matters to the invariant.
struct ZoomConfig {
  double sigma_base = 3.0;
  ScaleFactor alpha{256, 256};
  bool prefilter_enabled = true;
  std::size_t mask_width = 4;
  OperatorTriple triple{};
  BorderPolicy border = BorderPolicy::MirrorReflect;

  double sigma_small() const noexcept { return sigma_base / alpha.alpha(); }

  /// Throws std::invalid_argument on sigma_base / alpha < 0.5, a mask frame
  /// that covers the target, or an invalid operator triple.
  void validate() const;
};

/// Prefilter, operator triple at sigma_base, theta map, spline downscale.
InvariantMap run_sf(const GrayImage& img, const ZoomConfig& cfg);

/// Prefilter, spline downscale, operator triple at sigma_base / alpha, theta map.
InvariantMap run_so(const GrayImage& img, const ZoomConfig& cfg);

struct ErrorReport {
  double alpha = 1.0;
  std::size_t target_size = 0;
  double delta = 0.0;       // max |SO - SF| over unmasked pixels
  double max_abs_so = 0.0;  // max |SO| over unmasked pixels
  double eps_gr_percent = 0.0;
  double per_pixel_rel_max_percent = 0.0;
  /// False when SO is zero on every unmasked pixel; the relative figures are
  /// then reported as 0 and should be ignored.
  bool relative_defined = true;
  /// 100 |SO - SF| / |SO| on unmasked pixels where SO exceeds its unmasked
  /// mean, zero elsewhere. Only filled when requested.
  std::optional<ScalarMap> per_pixel_map;
};

ErrorReport compare(const InvariantMap& sf, const InvariantMap& so, const ZoomConfig& cfg,
                    bool keep_per_pixel_map = false);

/// |SO - SF| with the mask frame zeroed.
ScalarMap masked_difference(const InvariantMap& sf, const InvariantMap& so, std::size_t mask_width);

struct SweepOptions {
  unsigned threads = 1;
};

/// One report per target size, sorted by ascending alpha. Every size must give
/// a valid ScaleFactor against the (square) image side.
std::vector<ErrorReport> alpha_sweep(const GrayImage& img, const ZoomConfig& cfg_template,
                                     std::span<const std::size_t> target_sizes,
                                     const SweepOptions& opts = {});

/// CSV with header "alpha,size,delta,max_abs_so,eps_gr_percent,per_pixel_rel_max_percent".
std::string reports_to_csv(std::span<const ErrorReport> reports);

}  // namespace scaleinv
