#include <gtest/gtest.h>

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "scaleinv/image_io.hpp"
#include "scaleinv/kernels.hpp"

namespace fs = std::filesystem;
using namespace scaleinv;
namespace t = scaleinv::testing;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "scaleinv");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

std::string camera() { return (t::data_dir() / "camera256.pgm").string(); }

fs::path small_image(const fs::path& dir) {
  const auto p = dir / "small.pgm";
  save_pgm(t::random_image(64, 64, 77), p);
  return p;
}

}  // namespace

TEST(Cli, KernelDump) {
  const auto dir = t::temp_dir("cli_kdump");
  const auto out = dir / "log.csv";
  const Result r = run({"kernel-dump", "--op", "log", "--sigma", "3", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(slurp(out));
  ASSERT_EQ(rows.size(), 25u);
  const Kernel k = characteristic_kernel(OperatorId::LoG, 3.0);
  // Center row, center column: parse back and compare bit for bit.
  std::stringstream row(rows[12]);
  std::string cell;
  int dx = -12;
  for (; std::getline(row, cell, ','); ++dx) {
    double v = 0.0;
    std::from_chars(cell.data(), cell.data() + cell.size(), v);
    EXPECT_EQ(v, k.tap(dx, 0));
  }
  EXPECT_EQ(dx, 13);
}

TEST(Cli, CrossSection) {
  const auto dir = t::temp_dir("cli_xsec");
  const auto out = dir / "cv_row.csv";
  ASSERT_EQ(run({"cross-section", "--op", "cv", "--sigma", "3", "--out", out.string()}).code, 0);
  const auto rows = lines(slurp(out));
  ASSERT_EQ(rows.size(), 26u);
  EXPECT_EQ(rows[0], "offset,value");
  EXPECT_EQ(rows[1].rfind("-12,", 0), 0u);
  EXPECT_EQ(rows[13], "0,0");

  ASSERT_EQ(run({"cross-section", "--op", "gxx", "--sigma", "1", "--out", out.string()}).code, 0);
  EXPECT_EQ(lines(slurp(out)).size(), 10u);
}

TEST(Cli, ApplyAndInvariant) {
  const auto dir = t::temp_dir("cli_apply");
  const auto img = small_image(dir);
  ASSERT_EQ(run({"apply-operator", "--in", img.string(), "--op", "cv", "--sigma", "2", "--route", "characteristic",
                 "--out", (dir / "cv.pfm").string()})
                .code,
            0);
  EXPECT_EQ(load_pfm(dir / "cv.pfm").width(), 64u);
  ASSERT_EQ(run({"invariant-map", "--in", img.string(), "--out", (dir / "theta.csv").string()}).code, 0);
  const ScalarMap theta = load_csv_map(dir / "theta.csv");
  for (double v : theta.samples()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Cli, SimulateWritesReportAndMaps) {
  const auto dir = t::temp_dir("cli_sim");
  const auto img = small_image(dir);
  const Result r = run({"simulate", "--in", img.string(), "--size", "40", "--out", (dir / "r.csv").string(),
                        "--sf-map", (dir / "sf.pfm").string(), "--so-map", (dir / "so.pfm").string(),
                        "--diff-map", (dir / "d.csv").string(), "--rel-map", (dir / "rel.pfm").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(slurp(dir / "r.csv"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].rfind("1.6,40,", 0), 0u);
  for (const char* f : {"sf.pfm", "so.pfm", "d.csv", "rel.pfm"}) EXPECT_TRUE(fs::exists(dir / f)) << f;
}

TEST(Cli, SweepIsDeterministic) {
  const auto dir = t::temp_dir("cli_sweep");
  const auto a = dir / "a.csv", b = dir / "b.csv";
  ASSERT_EQ(run({"sweep", "--in", camera(), "--sizes", "232:256:12", "--out", a.string()}).code, 0);
  ASSERT_EQ(run({"sweep", "--in", camera(), "--sizes", "256,244,232", "--threads", "3", "--out", b.string()}).code,
            0);
  const std::string text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  const auto rows = lines(text);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "alpha,size,delta,max_abs_so,eps_gr_percent,per_pixel_rel_max_percent");
  EXPECT_EQ(rows[1].rfind("1,256,0,", 0), 0u);
}

TEST(Cli, ParseSizes) {
  EXPECT_EQ(cli::parse_sizes("100:256:12").size(), 14u);
  EXPECT_EQ(cli::parse_sizes("100:256:12").back(), 256u);
  EXPECT_EQ(cli::parse_sizes("100:110:4"), (std::vector<std::size_t>{100, 104, 108}));
  EXPECT_EQ(cli::parse_sizes("5,7"), (std::vector<std::size_t>{5, 7}));
  EXPECT_THROW(cli::parse_sizes("1:2"), std::invalid_argument);
  EXPECT_THROW(cli::parse_sizes("1:5:0"), std::invalid_argument);
  EXPECT_THROW(cli::parse_sizes("9:5:1"), std::invalid_argument);
  EXPECT_THROW(cli::parse_sizes("a,b"), std::invalid_argument);
  EXPECT_THROW(cli::parse_sizes(""), std::invalid_argument);
}

TEST(Cli, ExitCodes) {
  const auto dir = t::temp_dir("cli_codes");
  const auto out = (dir / "x.csv").string();

  Result r = run({"frobnicate"});
  EXPECT_EQ(r.code, cli::kUnknownCommand);
  EXPECT_NE(r.err.find("unknown command"), std::string::npos);

  EXPECT_EQ(run({}).code, cli::kInvalidParameters);
  EXPECT_EQ(run({"kernel-dump", "--op", "log"}).code, cli::kInvalidParameters);
  EXPECT_EQ(run({"kernel-dump", "--op", "nope", "--out", out}).code, cli::kInvalidParameters);
  EXPECT_EQ(run({"kernel-dump", "--op", "log", "--sigma", "-1", "--out", out}).code, cli::kInvalidParameters);
  EXPECT_EQ(run({"kernel-dump", "--op", "gxxyy", "--out", out}).code, cli::kInvalidParameters);
  EXPECT_EQ(run({"apply-operator", "--in", camera(), "--op", "log", "--out", (dir / "x.png").string()}).code,
            cli::kInvalidParameters);
  EXPECT_EQ(run({"invariant-map", "--in", camera(), "--ops", "grad,nu2,cv", "--out", out}).code,
            cli::kInvalidParameters);
  EXPECT_EQ(run({"simulate", "--in", camera(), "--size", "300", "--out", out}).code, cli::kInvalidParameters);
  EXPECT_EQ(run({"sweep", "--in", camera(), "--sizes", "x", "--out", out}).code, cli::kInvalidParameters);

  r = run({"apply-operator", "--in", (dir / "missing.pgm").string(), "--op", "log", "--out", out});
  EXPECT_EQ(r.code, cli::kIoFailure);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  EXPECT_EQ(run({"kernel-dump", "--op", "log", "--out", (dir / "no" / "dir.csv").string()}).code,
            cli::kIoFailure);
  EXPECT_TRUE(fs::is_empty(dir));
}

TEST(Cli, NoPartialOutputs) {
  const auto dir = t::temp_dir("cli_partial");
  const auto img = small_image(dir);
  // The report and first map are valid, the last target directory does not exist.
  const Result r = run({"simulate", "--in", img.string(), "--size", "40", "--out", (dir / "r.csv").string(),
                        "--sf-map", (dir / "sf.pfm").string(), "--so-map", (dir / "gone" / "so.pfm").string()});
  EXPECT_EQ(r.code, cli::kIoFailure);
  EXPECT_FALSE(fs::exists(dir / "r.csv"));
  EXPECT_FALSE(fs::exists(dir / "sf.pfm"));
  EXPECT_FALSE(fs::exists(dir / "sf.pfm.partial"));

  // Invalid parameters are caught before anything is computed or written.
  EXPECT_EQ(run({"simulate", "--in", img.string(), "--size", "40", "--out", (dir / "r.csv").string(),
                 "--so-map", (dir / "so.txt").string()})
                .code,
            cli::kInvalidParameters);
  EXPECT_FALSE(fs::exists(dir / "r.csv"));
}

TEST(Cli, Help) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* cmd : {"kernel-dump", "cross-section", "apply-operator", "invariant-map", "simulate", "sweep"})
    EXPECT_NE(r.out.find(cmd), std::string::npos) << cmd;
  const Result sub = run({"sweep", "--help"});
  EXPECT_EQ(sub.code, 0);
  for (const char* flag : {"--sizes", "--threads", "--no-prefilter", "--mask", "--ops", "--border", "--sigma"})
    EXPECT_NE(sub.out.find(flag), std::string::npos) << flag;
}
