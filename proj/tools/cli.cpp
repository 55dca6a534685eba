#include "cli.hpp"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "scaleinv/convolve.hpp"
#include "scaleinv/image_io.hpp"
#include "scaleinv/invariant.hpp"
#include "scaleinv/kernels.hpp"
#include "scaleinv/operators.hpp"
#include "scaleinv/simulation.hpp"

namespace scaleinv::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kCommands[] = {"kernel-dump", "cross-section", "apply-operator",
                                     "invariant-map", "simulate", "sweep"};

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Outputs are rendered in memory first and committed together at the end, so
// a failing command leaves none of its files behind.
class OutputSet {
 public:
  void add(fs::path path, std::string bytes) { files_.emplace_back(std::move(path), std::move(bytes)); }

  void commit() {
    std::vector<fs::path> written;
    try {
      for (const auto& [path, bytes] : files_) {
        write_file_atomic(path, bytes);
        written.push_back(path);
      }
    } catch (...) {
      std::error_code ec;
      for (const auto& p : written) fs::remove(p, ec);
      throw;
    }
  }

 private:
  std::vector<std::pair<fs::path, std::string>> files_;
};

void add_map(OutputSet& outputs, const std::string& path, const ScalarMap& map) {
  outputs.add(path, encode_map(map, map_format_for(path)));
}

// Kernel names accepted by kernel-dump / cross-section: "gaussian", the
// operator names (characteristic kernels) and partials "gx" .. "gyyy".
Kernel named_kernel(const std::string& name, double sigma) {
  if (name == "gaussian") return gaussian(sigma);
  if (name.size() >= 2 && name[0] == 'g' && name.find_first_not_of("xy", 1) == std::string::npos) {
    const auto nx = static_cast<int>(std::count(name.begin() + 1, name.end(), 'x'));
    const auto ny = static_cast<int>(std::count(name.begin() + 1, name.end(), 'y'));
    return gaussian_partial(sigma, PartialOrder(nx, ny));
  }
  return characteristic_kernel(parse_operator(name), sigma);
}

OperatorTriple parse_triple(const std::string& spec) {
  std::vector<OperatorId> ops;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) ops.push_back(parse_operator(item));
  if (ops.size() != 3) throw std::invalid_argument("--ops needs exactly three operators");
  OperatorTriple t{ops[0], ops[1], ops[2]};
  validate_triple(t);
  return t;
}

Route parse_route(const std::string& name) {
  if (name == "assembled") return Route::Assembled;
  if (name == "characteristic") return Route::Characteristic;
  throw std::invalid_argument("unknown route '" + name + "' (expected assembled or characteristic)");
}

void require_positive(double v, const char* flag) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(flag) + " must be positive");
}

std::string report_csv(const ErrorReport& r) { return reports_to_csv(std::span(&r, 1)); }

}  // namespace

std::vector<std::size_t> parse_sizes(const std::string& spec) {
  auto to_size = [&](const std::string& s) {
    std::size_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("bad size '" + s + "' in '" + spec + "'");
    }
    return v;
  };
  std::vector<std::size_t> sizes;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw std::invalid_argument("size range must be start:stop:step");
    const std::size_t start = to_size(parts[0]), stop = to_size(parts[1]), step = to_size(parts[2]);
    if (step == 0 || start > stop) throw std::invalid_argument("size range needs start <= stop and step > 0");
    for (std::size_t s = start; s <= stop; s += step) sizes.push_back(s);
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) sizes.push_back(to_size(item));
  }
  if (sizes.empty()) throw std::invalid_argument("empty size list");
  return sizes;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.size() >= 2 && !args[1].empty() && args[1][0] != '-' &&
      std::find(std::begin(kCommands), std::end(kCommands), args[1]) == std::end(kCommands)) {
    err << "error: unknown command '" << args[1] << "' (run with --help for the list)\n";
    return kUnknownCommand;
  }

  CLI::App app{"Scale and brightness invariant from rotationally invariant Gaussian derivatives"};
  app.require_subcommand(1);

  std::string op_name, in_path, out_path, route_name = "assembled", border_name = "mirror";
  std::string ops_spec = "grad,log,cv", sizes_spec;
  std::string sf_map, so_map, diff_map, rel_map;
  double sigma = 3.0;
  std::size_t size = 0, mask = 4;
  unsigned threads = 1;
  bool no_prefilter = false;

  auto* kdump = app.add_subcommand("kernel-dump", "Write every tap of a kernel as a CSV grid");
  auto* xsec = app.add_subcommand("cross-section", "Write the center row of a kernel as offset,value CSV");
  for (auto* sub : {kdump, xsec}) {
    sub->add_option("--op", op_name,
                    "gaussian, an operator (grad, log, qv, nu2, cv, nu6, sqrtnu6, nu8) or a partial "
                    "(gx, gy, gxx, gxy, gyy, gxxx, gxxy, gxyy, gyyy)")
        ->required();
    sub->add_option("--sigma", sigma, "Kernel scale in pixels")->capture_default_str();
    sub->add_option("--out", out_path, "Output CSV file")->required();
  }

  auto* apply = app.add_subcommand("apply-operator", "Apply one operator to a PGM image");
  apply->add_option("--in", in_path, "Input PGM (P2 or P5)")->required();
  apply->add_option("--op", op_name, "grad, log, qv, nu2, cv, nu6, sqrtnu6 or nu8")->required();
  apply->add_option("--sigma", sigma, "Operator scale in pixels")->capture_default_str();
  apply->add_option("--route", route_name, "assembled or characteristic")->capture_default_str();
  apply->add_option("--border", border_name, "mirror, replicate or zero")->capture_default_str();
  apply->add_option("--out", out_path, "Output map (.pfm or .csv)")->required();

  auto* inv = app.add_subcommand("invariant-map", "Compute the bounded invariant map of a PGM image");
  inv->add_option("--in", in_path, "Input PGM (P2 or P5)")->required();
  inv->add_option("--sigma", sigma, "Operator scale in pixels")->capture_default_str();
  inv->add_option("--ops", ops_spec, "Operators of order 1,2,3, comma separated")->capture_default_str();
  inv->add_option("--border", border_name, "mirror, replicate or zero")->capture_default_str();
  inv->add_option("--out", out_path, "Output map (.pfm or .csv)")->required();

  auto* sim = app.add_subcommand("simulate", "Run one zoom-out simulation and report its errors");
  auto* sweep = app.add_subcommand("sweep", "Run the zoom-out simulation over a list of target sizes");
  for (auto* sub : {sim, sweep}) {
    sub->add_option("--in", in_path, "Square input PGM (P2 or P5)")->required();
    sub->add_option("--sigma", sigma, "Operator scale on the original image")->capture_default_str();
    sub->add_flag("--no-prefilter", no_prefilter, "Skip the Gaussian lowpass with sigma = alpha");
    sub->add_option("--mask", mask, "Boundary rows/columns excluded from the metrics")->capture_default_str();
    sub->add_option("--ops", ops_spec, "Operators of order 1,2,3, comma separated")->capture_default_str();
    sub->add_option("--border", border_name, "mirror, replicate or zero")->capture_default_str();
    sub->add_option("--out", out_path, "Report CSV")->required();
  }
  sim->add_option("--size", size, "Target side in pixels (alpha = source / target)")->required();
  sim->add_option("--sf-map", sf_map, "Also write the SF invariant map (.pfm or .csv)");
  sim->add_option("--so-map", so_map, "Also write the SO invariant map (.pfm or .csv)");
  sim->add_option("--diff-map", diff_map, "Also write |SO - SF| with the mask zeroed");
  sim->add_option("--rel-map", rel_map, "Also write the per-pixel relative error in percent");
  sweep->add_option("--sizes", sizes_spec, "Target sizes, start:stop:step or a comma list")->required();
  sweep->add_option("--threads", threads, "Worker threads")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParameters;
  }

  try {
    OutputSet outputs;
    const BorderPolicy border = parse_border_policy(border_name);
    require_positive(sigma, "--sigma");

    if (kdump->parsed() || xsec->parsed()) {
      const Kernel k = named_kernel(op_name, sigma);
      std::string csv;
      if (kdump->parsed()) {
        for (int dy = -k.radius(); dy <= k.radius(); ++dy) {
          for (int dx = -k.radius(); dx <= k.radius(); ++dx) {
            if (dx > -k.radius()) csv += ',';
            csv += fmt(k.tap(dx, dy));
          }
          csv += '\n';
        }
      } else {
        csv = "offset,value\n";
        const auto row = center_row(k);
        for (std::size_t i = 0; i < row.size(); ++i) {
          csv += std::to_string(static_cast<int>(i) - k.radius()) + "," + fmt(row[i]) + "\n";
        }
      }
      outputs.add(out_path, std::move(csv));
    } else if (apply->parsed()) {
      const OperatorId op = parse_operator(op_name);
      const Route route = parse_route(route_name);
      map_format_for(out_path);
      const GrayImage img = load_pgm(in_path);
      add_map(outputs, out_path, apply_operator(img, op, sigma, route, border).map);
    } else if (inv->parsed()) {
      const OperatorTriple triple = parse_triple(ops_spec);
      map_format_for(out_path);
      const GrayImage img = load_pgm(in_path);
      add_map(outputs, out_path, invariant_map(img, sigma, triple, border).map);
    } else if (sim->parsed() || sweep->parsed()) {
      ZoomConfig cfg;
      cfg.sigma_base = sigma;
      cfg.prefilter_enabled = !no_prefilter;
      cfg.mask_width = mask;
      cfg.triple = parse_triple(ops_spec);
      cfg.border = border;
      for (const std::string* p : {&sf_map, &so_map, &diff_map, &rel_map}) {
        if (!p->empty()) map_format_for(*p);
      }
      std::vector<std::size_t> sizes;
      if (sweep->parsed()) sizes = parse_sizes(sizes_spec);

      const GrayImage img = load_pgm(in_path);
      if (!img.square()) throw std::invalid_argument("simulation input must be square");

      if (sim->parsed()) {
        cfg.alpha = ScaleFactor(img.width(), size);
        cfg.validate();
        const InvariantMap sf = run_sf(img, cfg);
        const InvariantMap so = run_so(img, cfg);
        const ErrorReport rep = compare(sf, so, cfg, !rel_map.empty());
        outputs.add(out_path, report_csv(rep));
        if (!sf_map.empty()) add_map(outputs, sf_map, sf.map);
        if (!so_map.empty()) add_map(outputs, so_map, so.map);
        if (!diff_map.empty()) add_map(outputs, diff_map, masked_difference(sf, so, cfg.mask_width));
        if (!rel_map.empty()) add_map(outputs, rel_map, *rep.per_pixel_map);
      } else {
        const auto reports = alpha_sweep(img, cfg, sizes, SweepOptions{std::max(1u, threads)});
        outputs.add(out_path, reports_to_csv(reports));
      }
    }
    outputs.commit();
    return kOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParameters;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace scaleinv::cli
