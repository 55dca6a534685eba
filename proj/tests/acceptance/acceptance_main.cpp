// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "scaleinv/image_io.hpp"
#include "scaleinv/invariant.hpp"
#include "scaleinv/kernels.hpp"
#include "scaleinv/operators.hpp"
#include "scaleinv/simulation.hpp"

using namespace scaleinv;
namespace t = scaleinv::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const GrayImage& camera() {
  static const GrayImage img = load_pgm(t::data_dir() / "camera256.pgm");
  return img;
}

std::vector<std::size_t> all_sizes() {
  std::vector<std::size_t> s;
  for (std::size_t n = 256; n >= 100; --n) s.push_back(n);
  return s;
}

const std::vector<ErrorReport>& sweep(bool prefilter) {
  static std::vector<ErrorReport> on, off;
  static bool have_on = false, have_off = false;
  auto& cache = prefilter ? on : off;
  bool& have = prefilter ? have_on : have_off;
  if (!have) {
    ZoomConfig cfg;
    cfg.prefilter_enabled = prefilter;
    const auto sizes = all_sizes();
    cache = alpha_sweep(camera(), cfg, sizes);
    have = true;
  }
  return cache;
}

const ErrorReport& worst(const std::vector<ErrorReport>& reps) {
  return *std::max_element(reps.begin(), reps.end(), [](const ErrorReport& a, const ErrorReport& b) {
    return a.eps_gr_percent < b.eps_gr_percent;
  });
}

const ErrorReport& at_256_to_100() {
  static const ErrorReport rep = [] {
    ZoomConfig cfg;
    cfg.alpha = ScaleFactor(256, 100);
    return compare(run_sf(camera(), cfg), run_so(camera(), cfg), cfg);
  }();
  return rep;
}

Outcome global_relative_error() {
  const auto start = std::chrono::steady_clock::now();
  const auto& reps = sweep(true);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const ErrorReport& w = worst(reps);
  const auto over = std::count_if(reps.begin(), reps.end(), [](const ErrorReport& r) { return !(r.eps_gr_percent < 2.0); });
  return {over == 0, "max eps_gr " + num(w.eps_gr_percent) + "% at alpha " + num(w.alpha) + "; " +
                         std::to_string(over) + "/" + std::to_string(reps.size()) + " sizes >= 2%; " + num(secs) +
                         " s"};
}

Outcome prefilter_ablation() {
  const double with = worst(sweep(true)).eps_gr_percent;
  const double without = worst(sweep(false)).eps_gr_percent;
  return {without > with, "max eps_gr without prefilter " + num(without) + "% vs with " + num(with) + "%"};
}

Outcome per_pixel_error() {
  const ErrorReport& r = at_256_to_100();
  return {r.per_pixel_rel_max_percent < 5.0, "max per-pixel relative error " + num(r.per_pixel_rel_max_percent) + "%"};
}

Outcome error_magnitude_ratio() {
  const ErrorReport& r = at_256_to_100();
  const double ratio = r.delta / r.max_abs_so;
  return {ratio < 0.02, "delta " + num(r.delta) + " / max|SO| " + num(r.max_abs_so) + " = " + num(ratio)};
}

Outcome scale_order_law() {
  const OperatorId ops[] = {OperatorId::GradientMag, OperatorId::LoG, OperatorId::QV, OperatorId::CV,
                            OperatorId::Nu2,         OperatorId::Nu6, OperatorId::Nu8};
  bool pass = true;
  std::string detail;
  for (double sigma : {2.0, 3.0}) {
    const double s = 2.0 * sigma;  // blob scale on I1
    const std::size_t n1 = static_cast<std::size_t>(24 * sigma);
    const GrayImage i1 = t::render_blob(n1, n1 / 2.0, n1 / 2.0, s, 100.0);
    double worst_dev = 0.0;
    std::string where;
    for (double alpha : {1.5, 2.0}) {
      const std::size_t n2 = static_cast<std::size_t>(alpha * n1);
      const GrayImage i2 = t::render_blob(n2, n2 / 2.0, n2 / 2.0, alpha * s, 100.0);
      for (OperatorId op : ops) {
        const double p1 = t::max_abs(apply_assembled(i1, op, sigma).map);
        const double p2 = t::max_abs(apply_assembled(i2, op, alpha * sigma).map);
        const double dev = std::fabs(p1 / p2 / std::pow(alpha, scale_order(op)) - 1.0);
        if (dev > worst_dev) {
          worst_dev = dev;
          where = std::string(to_string(op)) + ", alpha " + num(alpha);
        }
      }
    }
    pass = pass && worst_dev < 0.01;
    if (!detail.empty()) detail += "; ";
    detail += "sigma " + num(sigma) + ": worst |ratio / alpha^n - 1| " + num(worst_dev) + " (" + where + ")";
  }
  return {pass, detail};
}

Outcome route_equivalence() {
  GrayImage crop(64, 64);
  for (std::size_t r = 0; r < 64; ++r)
    for (std::size_t c = 0; c < 64; ++c) crop(c, r) = camera()(96 + c, 64 + r);
  double worst_rel = 0.0;
  std::string where;
  for (OperatorId op : kAllOperators) {
    const ScalarMap a = apply_assembled(crop, op, 3.0).map;
    const ScalarMap b = apply_characteristic(crop, op, 3.0).map;
    const double rel = t::max_abs_diff(a, b) / t::max_abs(a);
    if (rel >= worst_rel) {
      worst_rel = rel;
      where = std::string(to_string(op));
    }
  }
  return {worst_rel <= 1e-8, "worst relative max difference " + num(worst_rel) + " (" + where + ")"};
}

Outcome one_d_invariance() {
  struct Fn {
    std::function<double(double, int)> d;
    double lo, hi;
  };
  const Fn fns[] = {
      {[](double u, int) { return std::exp(u); }, -2.0, 2.0},
      {[](double u, int n) {
         const double g = std::exp(-u * u / 2.0);
         return n == 1 ? -u * g : n == 2 ? (u * u - 1.0) * g : (3.0 * u - u * u * u) * g;
       },
       -3.0, 3.0},
      {[](double u, int n) { return n == 1 ? 4 * u * u * u + 2 * u : n == 2 ? 12 * u * u + 2 : 24 * u; }, -2.0, 2.0},
      {[](double u, int n) { return n == 1 ? std::cos(u) : n == 2 ? -std::sin(u) : -std::cos(u); }, 0.1, 3.0},
  };
  double worst_m = 0.0, worst_t = 0.0;
  for (const Fn& g : fns) {
    for (double alpha : {0.5, 2.0, 3.0}) {
      for (double k : {0.1, 7.0}) {
        for (int i = 0; i < 20; ++i) {
          const double u = g.lo + (g.hi - g.lo) * (i + 0.5) / 20.0;
          const DerivTriple base{g.d(u, 1), g.d(u, 2), g.d(u, 3)};
          // f(x) = k g(alpha x) at x = u / alpha.
          const DerivTriple f{k * alpha * g.d(u, 1), k * alpha * alpha * g.d(u, 2),
                              k * alpha * alpha * alpha * g.d(u, 3)};
          worst_m = std::max(worst_m, std::fabs(theta_m123(f) - theta_m123(base)));
          if (base.d2 != 0.0) {
            const double t0 = theta_123(base);
            worst_t = std::max(worst_t, std::fabs(theta_123(f) - t0) / std::max(1.0, std::fabs(t0)));
          }
        }
      }
    }
  }
  return {worst_m <= 1e-12 && worst_t <= 1e-12,
          "theta_m123 max deviation " + num(worst_m) + ", theta_123 " + num(worst_t)};
}

Outcome bounds_and_totality() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> expo(-300.0, 300.0);
  std::uniform_int_distribution<int> kind(0, 7);
  auto draw = [&] {
    const int c = kind(rng);
    if (c == 0) return 0.0;
    if (c == 1) return -std::numeric_limits<double>::denorm_min() * 3;
    const double v = std::pow(10.0, expo(rng));
    return (c & 1) ? -v : v;
  };
  std::size_t bad = 0;
  try {
    for (int i = 0; i < 1000000; ++i) {
      const double m = theta_m123({draw(), draw(), draw()});
      if (!std::isfinite(m) || m < -1.0 || m > 1.0) ++bad;
    }
  } catch (...) {
    return {false, "theta_m123 raised"};
  }
  return {bad == 0, std::to_string(bad) + " of 1000000 results non-finite or outside [-1, 1]"};
}

Outcome null_and_rotation() {
  ZoomConfig cfg;
  const double null_diff = t::max_abs_diff(run_sf(camera(), cfg).map, run_so(camera(), cfg).map);
  double worst_rot = 0.0;
  std::string where;
  for (OperatorId op : kAllOperators) {
    const ScalarMap a = rot90(apply_assembled(camera(), op, 3.0).map);
    const ScalarMap b = apply_assembled(rot90(camera()), op, 3.0).map;
    const double rel = t::max_abs_diff(a, b) / t::max_abs(a);
    if (rel >= worst_rot) {
      worst_rot = rel;
      where = std::string(to_string(op));
    }
  }
  return {null_diff <= 1e-10 && worst_rot <= 1e-12,
          "alpha=1 max|SF-SO| " + num(null_diff) + "; rotation worst relative " + num(worst_rot) + " (" + where + ")"};
}

Outcome kernel_ground_truths() {
  const double pi = std::numbers::pi;
  double worst = 0.0;
  for (double s : {1.0, 2.0, 3.0}) {
    const double s4 = s * s * s * s;
    worst = std::max(worst, std::fabs(characteristic_kernel(OperatorId::LoG, s).tap(0, 0) + 1.0 / (pi * s4)));
    worst = std::max(worst, std::fabs(characteristic_kernel(OperatorId::QV, s).tap(0, 0) - std::sqrt(2.0) / (2 * pi * s4)));
    worst = std::max(worst, std::fabs(characteristic_kernel(OperatorId::CV, s).tap(0, 0)));
    worst = std::max(worst, std::fabs(gaussian(s).tap(0, 0) - 1.0 / (2 * pi * s * s)));
  }
  return {worst <= 1e-12, "worst center-tap error " + num(worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"global relative error < 2% over sizes 256..100", global_relative_error},
      {"prefilter ablation raises max eps_gr", prefilter_ablation},
      {"per-pixel error < 5% at alpha 2.56", per_pixel_error},
      {"delta / max|SO| < 0.02 at alpha 2.56", error_magnitude_ratio},
      {"scale-order law within 1%", scale_order_law},
      {"route equivalence 1e-8", route_equivalence},
      {"1-d (alpha, k) invariance 1e-12", one_d_invariance},
      {"theta_m123 bounded and total on 1e6 triples", bounds_and_totality},
      {"alpha=1 null test and rotation commutation", null_and_rotation},
      {"kernel center taps 1e-12", kernel_ground_truths},
  };
  int failed = 0;
  int index = 1;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d. %s: %s\n", o.pass ? "PASS" : "FAIL", index++, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
