#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "c1homeo/cli.hpp"
#include "c1homeo/sequences.hpp"

using namespace c1homeo;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_dir() {
  fs::path d = fs::temp_directory_path() / "c1homeo_cli_test";
  fs::create_directories(d);
  return d;
}

void put_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

}  // namespace

TEST_CASE("verify subcommand verdicts and exit codes") {
  RunResult ok = run({"verify", "--map", "identity"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("\"overall\": \"PASS\"") != std::string::npos);
  CHECK(ok.out.find("\"map\": \"identity\"") != std::string::npos);

  RunResult bad = run({"verify", "--map", "corner_shear"});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("\"overall\": \"FAIL\"") != std::string::npos);
}

TEST_CASE("verify output is deterministic and --out mirrors stdout") {
  fs::path report = temp_dir() / "report.json";
  RunResult a = run({"verify", "--map", "identity", "--out", report.string()});
  RunResult b = run({"verify", "--map", "identity"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::ifstream in(report);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == a.out);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"verify"}).code == 1);
  CHECK(run({"verify", "--map", "no_such_map"}).code == 1);
  CHECK(run({"induced", "--map", "G"}).code == 1);
  CHECK(run({"induced", "--map", "G", "--point", "zap"}).code == 1);
  CHECK(run({"construct"}).code == 1);
  CHECK(run({"verify", "--map", "identity", "--resolution", "bogus=1"}).code == 1);
  CHECK(run({"verify", "--map", "identity", "--resolution", "c1_ratio=1.5"}).code == 1);
}

TEST_CASE("resolution overrides are accepted") {
  RunResult r = run({"verify", "--map", "identity", "--resolution",
                     "tail_length=35", "--resolution", "slope_tolerance=2e-3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"tail_length\": 35") != std::string::npos);
}

TEST_CASE("config file supplies defaults that flags override") {
  fs::path cfg = temp_dir() / "config.json";
  put_file(cfg, "{\"map\": \"identity\"}\n");
  RunResult r = run({"verify", "--config", cfg.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"map\": \"identity\"") != std::string::npos);

  RunResult over = run({"verify", "--config", cfg.string(), "--map", "corner_shear"});
  CHECK(over.code == 2);
}

TEST_CASE("induced subcommand prints a direction table") {
  RunResult r = run({"induced", "--map", "G", "--point", "0,0", "--samples", "12"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("theta_in,theta_out,residual,exists", 0) == 0);
  size_t rows = 0;
  for (char c : r.out)
    if (c == '\n') ++rows;
  CHECK(rows == 13);
  CHECK(r.err.find("PASS") != std::string::npos);
}

TEST_CASE("construct subcommand builds, reports and renders") {
  DirectionSequence s;
  for (int n = 1; n <= 2400; ++n)
    s.entries.push_back({{1.0 / n, 1.0 / (double(n) * n)}, dir_from_slope(2.0 / n)});
  s.limit_point = {0.0, 0.0};
  s.limit_dir = ProjDir{0.0};
  fs::path seq = temp_dir() / "seq.csv";
  put_file(seq, sequence_to_csv(s));

  fs::path svg = temp_dir() / "curve.svg";
  RunResult r = run({"construct", "--seq", seq.string(), "--want", "6",
                     "--samples", "128", "--svg", svg.string()});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t,x,y,slope", 0) == 0);
  CHECK(r.err.find("construction: PASS") != std::string::npos);
  CHECK(fs::exists(svg));

  // A sequence that refuses the construction hypothesis is an input error.
  DirectionSequence bad;
  for (int k = 1; k <= 40; ++k)
    bad.entries.push_back({{1.0 / ((2 * k + 1) * 3.14159265358979), 0.0},
                           ProjDir{0.7853981633974483}});
  bad.limit_point = {0.0, 0.0};
  bad.limit_dir = ProjDir{0.0};
  fs::path badseq = temp_dir() / "bad_seq.csv";
  put_file(badseq, sequence_to_csv(bad));
  CHECK(run({"construct", "--seq", badseq.string(), "--want", "4"}).code == 1);
}

TEST_CASE("gallery renders one SVG per requested map") {
  fs::path dir = temp_dir() / "gallery" / "nested";
  fs::remove_all(dir);  // the command must create missing directories itself
  RunResult r = run({"gallery", "--out", dir.string(), "--maps", "identity,P:8",
                     "--samples", "64"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "identity.svg"));
  CHECK(fs::exists(dir / "P_8.svg"));
  std::ifstream in(dir / "identity.svg");
  std::string first;
  std::getline(in, first);
  CHECK(first.find("<?xml") != std::string::npos);
}
