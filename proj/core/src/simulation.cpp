#include "scaleinv/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace scaleinv {

void ZoomConfig::validate() const {
  if (!(sigma_base > 0.0) || !std::isfinite(sigma_base)) {
    throw std::invalid_argument("sigma_base must be positive");
  }
  if (sigma_small() < 0.5) {
    throw std::invalid_argument("sigma_base / alpha = " + std::to_string(sigma_small()) +
                                " is below 0.5; the operator would not be resolvable on the downscaled image");
  }
  if (2 * mask_width >= alpha.target_size()) {
    throw std::invalid_argument("mask width " + std::to_string(mask_width) + " leaves no pixels in a " +
                                std::to_string(alpha.target_size()) + "-pixel target");
  }
  validate_triple(triple);
}

namespace {

void check_input(const GrayImage& img, const ZoomConfig& cfg) {
  cfg.validate();
  if (!img.square() || img.width() != cfg.alpha.source_size()) {
    throw std::invalid_argument("simulation input must be a square image of side " +
                                std::to_string(cfg.alpha.source_size()));
  }
}

GrayImage head_of_pipeline(const GrayImage& img, const ZoomConfig& cfg) {
  return cfg.prefilter_enabled ? prefilter(img, cfg.alpha.alpha(), cfg.border) : img;
}

bool masked(std::size_t c, std::size_t r, std::size_t side, std::size_t mask) {
  return c < mask || r < mask || c >= side - mask || r >= side - mask;
}

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

InvariantMap run_sf(const GrayImage& img, const ZoomConfig& cfg) {
  check_input(img, cfg);
  InvariantMap full = invariant_map(head_of_pipeline(img, cfg), cfg.sigma_base, cfg.triple, cfg.border);
  return {downscale_spline(full.map, cfg.alpha), full.triple, full.sigma};
}

InvariantMap run_so(const GrayImage& img, const ZoomConfig& cfg) {
  check_input(img, cfg);
  const GrayImage small = downscale_spline(head_of_pipeline(img, cfg), cfg.alpha);
  return invariant_map(small, cfg.sigma_small(), cfg.triple, cfg.border);
}

ScalarMap masked_difference(const InvariantMap& sf, const InvariantMap& so, std::size_t mask_width) {
  if (!sf.map.same_shape(so.map)) throw std::invalid_argument("compare: SF and SO maps differ in size");
  const std::size_t w = so.map.width(), h = so.map.height();
  ScalarMap diff(w, h);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      if (masked(c, r, std::min(w, h), mask_width)) continue;
      diff(c, r) = std::fabs(so.map(c, r) - sf.map(c, r));
    }
  }
  return diff;
}

ErrorReport compare(const InvariantMap& sf, const InvariantMap& so, const ZoomConfig& cfg,
                    bool keep_per_pixel_map) {
  if (!sf.map.same_shape(so.map) || !so.map.square()) {
    throw std::invalid_argument("compare: SF and SO maps must be square and equal in size");
  }
  const std::size_t side = so.map.width();
  const std::size_t mask = cfg.mask_width;
  if (2 * mask >= side) throw std::invalid_argument("compare: mask frame covers the whole map");

  ErrorReport rep;
  rep.alpha = cfg.alpha.alpha();
  rep.target_size = side;

  double sum_so = 0.0;
  std::size_t count = 0;
  for (std::size_t r = mask; r < side - mask; ++r) {
    for (std::size_t c = mask; c < side - mask; ++c) {
      const double s = so.map(c, r), f = sf.map(c, r);
      rep.delta = std::max(rep.delta, std::fabs(s - f));
      rep.max_abs_so = std::max(rep.max_abs_so, std::fabs(s));
      sum_so += s;
      ++count;
    }
  }
  const double mean_so = sum_so / static_cast<double>(count);

  rep.relative_defined = rep.max_abs_so > 0.0;
  if (rep.relative_defined) rep.eps_gr_percent = 100.0 * rep.delta / rep.max_abs_so;

  ScalarMap per_pixel(side, side);
  for (std::size_t r = mask; r < side - mask; ++r) {
    for (std::size_t c = mask; c < side - mask; ++c) {
      const double s = so.map(c, r);
      if (!(s > mean_so) || s == 0.0) continue;
      const double e = 100.0 * std::fabs(s - sf.map(c, r)) / std::fabs(s);
      per_pixel(c, r) = e;
      rep.per_pixel_rel_max_percent = std::max(rep.per_pixel_rel_max_percent, e);
    }
  }
  if (keep_per_pixel_map) rep.per_pixel_map = std::move(per_pixel);
  return rep;
}

std::vector<ErrorReport> alpha_sweep(const GrayImage& img, const ZoomConfig& cfg_template,
                                     std::span<const std::size_t> target_sizes, const SweepOptions& opts) {
  if (target_sizes.empty()) throw std::invalid_argument("alpha sweep needs at least one target size");
  if (!img.square()) throw std::invalid_argument("alpha sweep needs a square image");

  std::vector<std::size_t> sizes(target_sizes.begin(), target_sizes.end());
  std::sort(sizes.begin(), sizes.end(), std::greater<>());

  // Build and validate every configuration before running anything.
  std::vector<ZoomConfig> configs;
  configs.reserve(sizes.size());
  for (std::size_t t : sizes) {
    ZoomConfig cfg = cfg_template;
    cfg.alpha = ScaleFactor(img.width(), t);
    cfg.validate();
    configs.push_back(cfg);
  }

  std::vector<ErrorReport> reports(configs.size());
  auto run_one = [&](std::size_t i) {
    const ZoomConfig& cfg = configs[i];
    reports[i] = compare(run_sf(img, cfg), run_so(img, cfg), cfg);
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(configs.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) run_one(i);
    return reports;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
          try {
            run_one(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

std::string reports_to_csv(std::span<const ErrorReport> reports) {
  std::string out = "alpha,size,delta,max_abs_so,eps_gr_percent,per_pixel_rel_max_percent\n";
  for (const ErrorReport& r : reports) {
    out += fmt(r.alpha) + "," + std::to_string(r.target_size) + "," + fmt(r.delta) + "," +
           fmt(r.max_abs_so) + "," + fmt(r.eps_gr_percent) + "," + fmt(r.per_pixel_rel_max_percent) + "\n";
  }
  return out;
}

}  // namespace scaleinv
