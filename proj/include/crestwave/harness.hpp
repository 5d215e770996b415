#pragma once
// Subcommand implementations behind the command-line tool. Every run writes a
// self-describing directory: config.ini, energy.csv, summary.json,
// termination.txt (and timing.json, the only file that varies between
// identical runs).

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crestwave/config.hpp"
#include "crestwave/simulation.hpp"

namespace cw {

inline constexpr const char* kCodeVersion = "crestwave-1.0";

struct RunRecord {
  SimConfig config;
  std::string config_text;  // canonical snapshot
  std::string hash;         // code version + config
  Trajectory trajectory;
  double wall_seconds = 0.0;
  std::string run_dir;
};

// Builds the initial data and runs it. Inadmissible initial data is reported
// as ConfigError (the configuration asked for something impossible).
RunRecord simulate(const IniDocument& doc, const std::string& run_dir,
                   bool keep_snapshots = false);

void write_run_directory(const RunRecord& rec);

struct SweepCell {
  std::vector<std::pair<std::string, std::string>> point;
  std::string run_dir;
  std::string reason;  // termination reason or "error"
  std::string error;
  std::size_t steps = 0;
  double final_t = 0.0;
  double frakE_ratio = 0.0;  // sup_t frakE / frakE(0)
  std::optional<double> cauchy;
};

struct SweepSummary {
  std::vector<std::string> axes;
  std::vector<SweepCell> cells;
  std::string csv() const;
};

// Cartesian product over [sweep] axes. Cells share nothing and run on up to
// `workers` threads; a failing cell is recorded and its siblings continue.
// With an initial/eps axis, each cell also gets sup |Z^eps - Z^{eps/2}| over
// report times against the matching cell at half the depth, when present.
SweepSummary sweep(const IniDocument& doc, const std::string& out_dir, std::size_t workers);

struct MollifyRow {
  double eps = 0.0;
  double d_eps = 0.0;  // sup over grid and report times of |Z^eps - Z^{eps/2}|
  double delta0 = 0.0, delta_min = 0.0;
  std::string reason;
};

struct MollifyTable {
  std::vector<MollifyRow> rows;
  bool decreasing = false;   // d_eps strictly decreasing as eps halves
  bool chord_arc_ok = false; // delta(t) >= delta(0)/2 for every run
  std::string csv() const;
};

// Runs every depth in [mollify] eps plus half of the last one.
MollifyTable mollify_study(const IniDocument& doc, const std::string& out_dir,
                           std::size_t workers);

struct VerifyOutcome {
  nlohmann::json identities, inequalities;
  bool passed = false;
};
VerifyOutcome verify(const IniDocument& doc, const std::string& out_dir);

struct EulerTable {
  std::vector<double> heights;
  std::vector<double> times;
  std::vector<std::vector<double>> residuals;  // [time][height]
  double max = 0.0;
  std::string csv() const;
};
// Simulates the configured run and evaluates the interior residual at every
// report time.
EulerTable euler_check(const IniDocument& doc, const std::string& out_dir);

}  // namespace cw
