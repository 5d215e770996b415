#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "crestwave/config.hpp"
#include "crestwave/diagnostics.hpp"
#include "crestwave/errors.hpp"
#include "crestwave/harness.hpp"
#include "crestwave/verify.hpp"

using namespace cw;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  static const std::string tag = std::to_string(std::random_device{}());
  const fs::path p = fs::temp_directory_path() / ("crestwave_test_" + tag) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

std::size_t line_count(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

const char* kFlat = R"(# flat interface at rest
[grid]
n = 64
[time]
cfl = 0.5
T = 1
report_interval = 0.25
[initial]
family = flat
)";

const char* kSmooth = R"([grid]
n = 64
[time]
dt = 0.01
T = 0.2
report_interval = 0.1
[initial]
family = smooth_wave
a = 0.05
m = 2
velocity = 1
[filter]
projection = on
)";

std::string rejection(const std::string& text) {
  try {
    config_from_document(IniDocument::parse(text, "test.ini"));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(CW_CLI_PATH) + " " + args + " > " + (log / "stdout").string() +
                          " 2> " + (log / "stderr").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config grammar") {
  const IniDocument doc = IniDocument::parse(
      "; leading comment\n\n[grid]\n  n =  128   # trailing\n[time]\ncfl=0.25\n[initial]\n"
      "family = smooth_wave\na = 0.05 ; note\n",
      "g.ini");
  CHECK(doc.find("grid.n")->value == "128");
  CHECK(doc.find("grid.n")->line == 4);
  CHECK(doc.find("initial.a")->value == "0.05");
  CHECK(doc.where("time.cfl") == "g.ini:6: time.cfl");
  CHECK(doc.find("grid.missing") == nullptr);

  const SimConfig c = config_from_document(doc);
  CHECK(c.n == 128);
  CHECK(*c.cfl == 0.25);
  CHECK_FALSE(c.dt);
  CHECK(c.family == Family::smooth_wave);

  const IniDocument again = IniDocument::parse(doc.serialize());
  CHECK(again.serialize() == doc.serialize());
  CHECK(config_hash(again) == config_hash(doc));
  CHECK(config_hash(doc).size() == 16);

  CHECK_THROWS_AS(IniDocument::parse("n = 3\n"), ConfigError);
  CHECK_THROWS_AS(IniDocument::parse("[grid\nn = 3\n"), ConfigError);
  CHECK_THROWS_AS(IniDocument::parse("[grid]\nn 3\n"), ConfigError);
  CHECK_THROWS_AS(IniDocument::load("/nonexistent/cw.ini"), ConfigError);
}

TEST_CASE("config errors name the line") {
  CHECK(rejection("[grid]\nn = 64\nn = 128\n[time]\ncfl = 1\n").find("test.ini:3") !=
        std::string::npos);
  const std::string unknown = rejection("[grid]\nn = 64\n[time]\ncfl = 0.5\nbogus = 1\n");
  CHECK(unknown.find("test.ini:5: time.bogus") != std::string::npos);
  CHECK(unknown.find("unknown key") != std::string::npos);
  CHECK(rejection("[grid]\nn = 100\n[time]\ncfl = 0.5\n").find("test.ini:2") != std::string::npos);
  CHECK(rejection("[time]\ncfl = 0.5\ndt = 0.1\n").find("exactly one") != std::string::npos);
  CHECK(rejection("[grid]\nn = 64\n").find("exactly one") != std::string::npos);
  CHECK(rejection("[time]\ndt = -0.1\n").find("positive") != std::string::npos);
  CHECK(rejection("[time]\ncfl = 0.5\n[monitor]\nkappa = 0\n").find("test.ini:4") !=
        std::string::npos);
  CHECK(rejection("[time]\ncfl = 0.5\n[filter]\nprojection = maybe\n").find("boolean") !=
        std::string::npos);
  CHECK(rejection("[time]\ncfl = 0.5\n[mollify]\neps = 0.1, 0.04\n") != "");
  // dots are not allowed in key names, so sweep axes use section/key
  CHECK(rejection("[time]\ncfl = 0.5\n[sweep]\ninitial.a = 0.1\n").find("test.ini:4") !=
        std::string::npos);
  CHECK(rejection("[time]\ncfl = 0.5\n[sweep]\na = 0.1\n").find("section/key") !=
        std::string::npos);
  CHECK(rejection("[time]\ncfl = 0.5\n[initial]\nfamily = tsunami\n").find("test.ini:4") !=
        std::string::npos);
  CHECK(rejection(kSmooth) == "");
}

TEST_CASE("overrides") {
  const auto [k, v] = parse_override("grid.n=256");
  CHECK(k == "grid.n");
  CHECK(v == "256");
  CHECK_THROWS_AS(parse_override("grid.n"), ConfigError);
  CHECK_THROWS_AS(parse_override("n=256"), ConfigError);

  IniDocument doc = IniDocument::parse(kSmooth);
  const std::string h0 = config_hash(doc);
  doc.set("grid.n", "128");
  CHECK(doc.where("grid.n") == "override grid.n");
  CHECK(config_from_document(doc).n == 128);
  CHECK(config_hash(doc) != h0);
  doc.set("grid.n", "77");
  try {
    config_from_document(doc);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("override grid.n") != std::string::npos);
  }
}

TEST_CASE("simulate writes an auditable run directory") {
  const fs::path dir = scratch("flat");
  const RunRecord rec = simulate(IniDocument::parse(kFlat), (dir / "run").string());
  CHECK(rec.trajectory.reason == TerminationReason::completed);
  CHECK(rec.trajectory.reports.size() == 5);
  for (const auto& r : rec.trajectory.reports) {
    CHECK(r.Ea == 0.0);
    CHECK(r.Eb == 0.0);
    CHECK(r.E2 == 0.0);
  }
  for (const char* f : {"config.ini", "energy.csv", "summary.json", "termination.txt", "timing.json"})
    CHECK(fs::exists(dir / "run" / f));
  CHECK(first_line(dir / "run" / "energy.csv") == csv_header());
  CHECK(line_count(dir / "run" / "energy.csv") == 6);
  CHECK(first_line(dir / "run" / "termination.txt") == "completed");

  const nlohmann::json s = load_json_file((dir / "run" / "summary.json").string());
  CHECK(s["termination"] == "completed");
  CHECK(s["code_version"] == kCodeVersion);
  CHECK(s["hash"] == rec.hash);
  CHECK(s["reports"] == 5);
  CHECK(s.contains("sup_frakE_ratio"));
  CHECK_FALSE(s.contains("wall_seconds"));
  CHECK(load_json_file((dir / "run" / "timing.json").string()).contains("wall_seconds"));

  // the snapshot reproduces the run on its own
  const IniDocument snap = IniDocument::load((dir / "run" / "config.ini").string());
  CHECK(config_hash(snap) == config_hash(IniDocument::parse(kFlat)));
}

TEST_CASE("identical configurations give byte-identical output") {
  const fs::path dir = scratch("determinism");
  const IniDocument doc = IniDocument::parse(kSmooth);
  simulate(doc, (dir / "a").string());
  simulate(doc, (dir / "b").string());
  for (const char* f : {"config.ini", "energy.csv", "summary.json", "termination.txt"}) {
    CAPTURE(f);
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  CHECK(line_count(dir / "a" / "energy.csv") == 4);
}

TEST_CASE("rough near-crest data ends cleanly") {
  IniDocument doc = IniDocument::parse(
      "[grid]\nn = 256\n[time]\ncfl = 0.5\nT = 0.05\nreport_interval = 0.01\n"
      "[initial]\nfamily = near_crest\nr = 0.4\nq = 0.999\neps = 0.005\n");
  const RunRecord rec = simulate(doc, "");
  const std::string reason = to_string(rec.trajectory.reason);
  MESSAGE("near-crest q = 0.999, eps = 0.005: " << reason << " " << rec.trajectory.detail);
  const std::set<std::string> named = {"completed", "blowup_monitor", "jacobian_guard",
                                       "a1_violation", "self_intersection"};
  CHECK(named.count(reason) == 1);
}

TEST_CASE("inadmissible initial data is a configuration error") {
  IniDocument doc = IniDocument::parse(kSmooth);
  doc.set("initial.a", "2.0");
  CHECK_THROWS_AS(simulate(doc, ""), ConfigError);
}

TEST_CASE("sweep") {
  SUBCASE("empty grid") {
    const fs::path dir = scratch("sweep_empty");
    const SweepSummary s = sweep(IniDocument::parse(kFlat), dir.string(), 2);
    CHECK(s.cells.empty());
    CHECK(line_count(dir / "summary.csv") == 1);
    CHECK(first_line(dir / "summary.csv") ==
          "cell,termination,steps,final_t,sup_frakE_ratio,cauchy_difference,error");
  }
  SUBCASE("a failing cell does not stop its siblings") {
    const fs::path dir = scratch("sweep_fail");
    const std::string text = std::string(kSmooth) + "[sweep]\ninitial/a = 0.05, 2.0, 0.02\n";
    const SweepSummary s = sweep(IniDocument::parse(text), dir.string(), 2);
    REQUIRE(s.cells.size() == 3);
    CHECK(s.cells[0].reason == "completed");
    CHECK(s.cells[1].reason == "error");
    CHECK(s.cells[1].error.find("graph") != std::string::npos);
    CHECK(s.cells[2].reason == "completed");
    CHECK(fs::exists(dir / "cell_0000" / "energy.csv"));
    CHECK(fs::exists(dir / "cell_0002" / "energy.csv"));
    CHECK(first_line(dir / "summary.csv") ==
          "cell,initial.a,termination,steps,final_t,sup_frakE_ratio,cauchy_difference,error");
    CHECK(line_count(dir / "summary.csv") == 4);
  }
  SUBCASE("cartesian product, Cauchy column, worker independence") {
    const std::string text = std::string(kSmooth) +
                             "[sweep]\ninitial/eps = 0.1, 0.05, 0.025\ninitial/m = 1, 2\n";
    const fs::path d1 = scratch("sweep_w1"), d2 = scratch("sweep_w3");
    const SweepSummary s1 = sweep(IniDocument::parse(text), d1.string(), 1);
    const SweepSummary s2 = sweep(IniDocument::parse(text), d2.string(), 3);
    REQUIRE(s1.cells.size() == 6);
    CHECK(slurp(d1 / "summary.csv") == slurp(d2 / "summary.csv"));
    CHECK(slurp(d1 / "cell_0003" / "energy.csv") == slurp(d2 / "cell_0003" / "energy.csv"));
    // cells ordered eps-major: (0.1,1) (0.1,2) (0.05,1) ...
    CHECK(s1.cells[1].point[0].second == "0.1");
    CHECK(s1.cells[1].point[1].second == "2");
    for (std::size_t i = 0; i < 4; ++i) CHECK(s1.cells[i].cauchy.has_value());
    CHECK_FALSE(s1.cells[4].cauchy.has_value());
    CHECK_FALSE(s1.cells[5].cauchy.has_value());
    // d_eps shrinks as eps halves for smooth data
    CHECK(*s1.cells[2].cauchy < *s1.cells[0].cauchy);
  }
}

TEST_CASE("mollification study") {
  const fs::path dir = scratch("mollify");
  const std::string text = std::string(kSmooth) + "[mollify]\neps = 0.1, 0.05, 0.025\n";
  const MollifyTable t = mollify_study(IniDocument::parse(text), dir.string(), 2);
  // four runs, three consecutive differences
  REQUIRE(t.rows.size() == 3);
  CHECK(t.decreasing);
  CHECK(t.chord_arc_ok);
  // the difference tracks a first-order expansion in eps
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    CHECK(t.rows[i].d_eps / t.rows[i - 1].d_eps == doctest::Approx(0.5).epsilon(0.1));
  CHECK(first_line(dir / "mollify.csv") == "eps,d_eps,ratio_to_previous,delta0,delta_min,termination");
  CHECK(line_count(dir / "mollify.csv") == 4);
  CHECK(fs::exists(dir / "eps_03" / "energy.csv"));
  CHECK_THROWS_AS(mollify_study(IniDocument::parse(kSmooth), dir.string(), 1), ConfigError);
}

TEST_CASE("verify and euler-check outputs") {
  const fs::path dir = scratch("verify");
  const std::string text = std::string(kFlat) +
                           "[verify]\ntrials = 100\ninequality_n = 64\n[euler]\nheights = -0.2, -0.5\n";
  IniDocument doc = IniDocument::parse(text);
  doc.set("grid.n", "128");
  const VerifyOutcome v = verify(doc, dir.string());
  CHECK(v.passed);
  CHECK(load_json_file((dir / "identities.json").string())["passed"] == true);
  CHECK(load_json_file((dir / "inequalities.json").string())["trials"] == 100);

  IniDocument sdoc = IniDocument::parse(std::string(kSmooth) + "[euler]\nheights = -0.2, -0.5\n");
  const EulerTable e = euler_check(sdoc, dir.string());
  CHECK(e.heights.size() == 2);
  CHECK(e.times.size() == 3);
  CHECK(e.max < 1e-4);
  CHECK(first_line(dir / "euler.csv").rfind("t,", 0) == 0);
}

TEST_CASE("command-line exit codes") {
  const fs::path dir = scratch("cli");
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const std::string flat = write("flat.ini", kFlat);
  CHECK(run_cli("simulate --config " + flat + " --out " + (dir / "ok").string(), dir) == 0);
  CHECK(fs::exists(dir / "ok" / "energy.csv"));

  const std::string bad = write("bad.ini", std::string(kFlat) + "colour = blue\n");
  CHECK(run_cli("simulate --config " + bad, dir) == 2);
  CHECK(slurp(dir / "stderr").find("bad.ini:10: initial.colour") != std::string::npos);

  CHECK(run_cli("simulate --config " + flat + " --override grid.n=100", dir) == 2);
  CHECK(run_cli("simulate --config " + (dir / "missing.ini").string(), dir) == 2);

  // a Taylor floor above the flat value of 1 trips the monitor at once
  CHECK(run_cli("simulate --config " + flat + " --out " + (dir / "guard").string() +
                    " --override monitor.taylor_floor=2",
                dir) == 3);
  CHECK(slurp(dir / "stderr").find("blowup_monitor") != std::string::npos);
  CHECK(first_line(dir / "guard" / "termination.txt").rfind("blowup_monitor", 0) == 0);

  CHECK(run_cli("sweep --config " + flat + " --out " + (dir / "sw").string() + " --workers 2",
                dir) == 0);
  CHECK(fs::exists(dir / "sw" / "summary.csv"));
  CHECK(run_cli("mollify-study --config " + flat, dir) == 2);
}
