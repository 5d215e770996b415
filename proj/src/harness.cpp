#include "crestwave/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "crestwave/errors.hpp"
#include "crestwave/interior.hpp"
#include "crestwave/spectral.hpp"
#include "crestwave/verify.hpp"

namespace fs = std::filesystem;

namespace cw {

namespace {

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw CrestwaveError("cannot write " + p.string());
  out << text;
}

std::string hash_with_code(const IniDocument& doc) {
  IniDocument tagged = doc;
  tagged.set("code.version", kCodeVersion);
  return config_hash(tagged);
}

double sup_frakE_ratio(const Trajectory& tr) {
  if (tr.reports.empty()) return 0.0;
  const double e0 = tr.reports.front().frakE;
  double m = 0.0;
  for (const auto& r : tr.reports) m = std::max(m, r.frakE / e0);
  return m;
}

// sup over common report times of |Z_a - Z_b| on the grid
double sup_difference(const Trajectory& a, const Trajectory& b) {
  double d = 0.0;
  const std::size_t k = std::min(a.snapshots.size(), b.snapshots.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(a.snapshots[i].t() - b.snapshots[i].t()) > 1e-12) break;
    d = std::max(d, linf_norm(a.snapshots[i].P() - b.snapshots[i].P()));
  }
  return d;
}

template <class F>
void parallel_for(std::size_t count, std::size_t workers, F&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  if (workers == 1) {
    loop();
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(loop);
  for (auto& t : pool) t.join();
}

}  // namespace

RunRecord simulate(const IniDocument& doc, const std::string& run_dir, bool keep_snapshots) {
  RunRecord rec;
  rec.config = config_from_document(doc);
  rec.config_text = doc.serialize();
  rec.hash = hash_with_code(doc);
  rec.run_dir = run_dir;

  InitialData init;
  try {
    init = rec.config.initial_data();
  } catch (const ValidationError& e) {
    throw ConfigError(doc.where("initial.family"), e.what());
  } catch (const DomainError& e) {
    throw ConfigError(doc.where("initial.family"), e.what());
  }
  RunOptions opt = rec.config.run_options();
  opt.keep_snapshots = keep_snapshots;
  const auto start = std::chrono::steady_clock::now();
  rec.trajectory = run(init.to_state(), opt);
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!run_dir.empty()) write_run_directory(rec);
  return rec;
}

void write_run_directory(const RunRecord& rec) {
  const fs::path dir(rec.run_dir);
  fs::create_directories(dir);
  write_text(dir / "config.ini", rec.config_text);

  std::string csv = csv_header() + "\n";
  for (const auto& r : rec.trajectory.reports) csv += csv_row(r) + "\n";
  write_text(dir / "energy.csv", csv);

  const Trajectory& tr = rec.trajectory;
  nlohmann::json s;
  s["termination"] = to_string(tr.reason);
  s["detail"] = tr.detail;
  s["steps"] = tr.steps;
  s["final_t"] = tr.final_state.t();
  s["reports"] = tr.reports.size();
  s["min_A1"] = tr.min_A1;
  s["max_mean_drift"] = tr.max_mean_drift;
  s["sup_frakE_ratio"] = sup_frakE_ratio(tr);
  s["hash"] = rec.hash;
  s["code_version"] = kCodeVersion;
  write_text(dir / "summary.json", s.dump(2) + "\n");

  std::string term = to_string(tr.reason);
  if (!tr.detail.empty()) term += ": " + tr.detail;
  write_text(dir / "termination.txt", term + "\n");

  nlohmann::json timing = {{"wall_seconds", rec.wall_seconds}, {"steps", tr.steps}};
  write_text(dir / "timing.json", timing.dump(2) + "\n");
}

// ---------------------------------------------------------------- sweep

std::string SweepSummary::csv() const {
  std::ostringstream out;
  out << "cell";
  for (const auto& a : axes) out << ',' << a;
  out << ",termination,steps,final_t,sup_frakE_ratio,cauchy_difference,error\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    out << i;
    for (const auto& p : c.point) out << ',' << p.second;
    out << ',' << c.reason << ',' << c.steps << ',' << fmt17(c.final_t) << ','
        << fmt17(c.frakE_ratio) << ',' << (c.cauchy ? fmt17(*c.cauchy) : "") << ',';
    std::string e = c.error;
    std::replace(e.begin(), e.end(), ',', ';');
    std::replace(e.begin(), e.end(), '\n', ' ');
    out << e << '\n';
  }
  return out.str();
}

SweepSummary sweep(const IniDocument& doc, const std::string& out_dir, std::size_t workers) {
  const SimConfig base = config_from_document(doc);
  SweepSummary summary;
  for (const auto& [k, v] : base.sweep) summary.axes.push_back(k);
  fs::create_directories(out_dir);

  std::size_t count = base.sweep.empty() ? 0 : 1;
  for (const auto& axis : base.sweep) count *= axis.second.size();
  summary.cells.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rem = i;
    std::vector<std::pair<std::string, std::string>> point(base.sweep.size());
    for (std::size_t a = base.sweep.size(); a-- > 0;) {
      const auto& vals = base.sweep[a].second;
      point[a] = {base.sweep[a].first, vals[rem % vals.size()]};
      rem /= vals.size();
    }
    char name[32];
    std::snprintf(name, sizeof name, "cell_%04zu", i);
    summary.cells[i].point = std::move(point);
    summary.cells[i].run_dir = (fs::path(out_dir) / name).string();
  }

  const bool eps_axis = std::count(summary.axes.begin(), summary.axes.end(), "initial.eps") > 0;
  std::vector<Trajectory> trajectories(count);
  parallel_for(count, workers, [&](std::size_t i) {
    SweepCell& cell = summary.cells[i];
    try {
      IniDocument cdoc;
      for (const auto& [k, e] : doc.entries())
        if (k.rfind("sweep.", 0) != 0) cdoc.set(k, e.value, e.line);
      for (const auto& [k, v] : cell.point) cdoc.set(k, v);
      RunRecord rec = simulate(cdoc, cell.run_dir, eps_axis);
      cell.reason = to_string(rec.trajectory.reason);
      cell.steps = rec.trajectory.steps;
      cell.final_t = rec.trajectory.final_state.t();
      cell.frakE_ratio = sup_frakE_ratio(rec.trajectory);
      trajectories[i] = std::move(rec.trajectory);
    } catch (const std::exception& e) {
      cell.reason = "error";
      cell.error = e.what();
    }
  });

  if (eps_axis) {
    const std::size_t ax = std::find(summary.axes.begin(), summary.axes.end(), "initial.eps") -
                           summary.axes.begin();
    for (std::size_t i = 0; i < count; ++i) {
      if (summary.cells[i].reason == "error") continue;
      const double e = std::stod(summary.cells[i].point[ax].second);
      for (std::size_t j = 0; j < count; ++j) {
        if (summary.cells[j].reason == "error") continue;
        bool match = true;
        for (std::size_t a = 0; a < summary.axes.size() && match; ++a) {
          if (a == ax) {
            match = std::abs(std::stod(summary.cells[j].point[a].second) - 0.5 * e) <= 1e-12 * e;
          } else {
            match = summary.cells[j].point[a].second == summary.cells[i].point[a].second;
          }
        }
        if (match) summary.cells[i].cauchy = sup_difference(trajectories[i], trajectories[j]);
      }
    }
  }
  write_text(fs::path(out_dir) / "summary.csv", summary.csv());
  return summary;
}

// ---------------------------------------------------------------- mollification study

std::string MollifyTable::csv() const {
  std::ostringstream out;
  out << "eps,d_eps,ratio_to_previous,delta0,delta_min,termination\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << fmt17(r.eps) << ',' << fmt17(r.d_eps) << ','
        << (i > 0 && rows[i - 1].d_eps > 0.0 ? fmt17(r.d_eps / rows[i - 1].d_eps) : "") << ','
        << fmt17(r.delta0) << ',' << fmt17(r.delta_min) << ',' << r.reason << '\n';
  }
  return out.str();
}

MollifyTable mollify_study(const IniDocument& doc, const std::string& out_dir,
                           std::size_t workers) {
  const SimConfig base = config_from_document(doc);
  if (base.mollify_eps.empty()) throw ConfigError(doc.where("mollify.eps"), "no depths given");
  std::vector<double> eps = base.mollify_eps;
  eps.push_back(0.5 * eps.back());
  fs::create_directories(out_dir);

  std::vector<Trajectory> runs(eps.size());
  std::vector<std::string> errors(eps.size());
  parallel_for(eps.size(), workers, [&](std::size_t i) {
    IniDocument cdoc = doc;
    cdoc.set("initial.eps", fmt17(eps[i]));
    char name[32];
    std::snprintf(name, sizeof name, "eps_%02zu", i);
    try {
      runs[i] = simulate(cdoc, (fs::path(out_dir) / name).string(), true).trajectory;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  MollifyTable table;
  table.decreasing = true;
  table.chord_arc_ok = true;
  for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
    MollifyRow row;
    row.eps = eps[i];
    row.reason = errors[i].empty() ? to_string(runs[i].reason) : "error";
    row.d_eps = sup_difference(runs[i], runs[i + 1]);
    if (!runs[i].reports.empty()) {
      row.delta0 = runs[i].reports.front().chord_arc_delta;
      row.delta_min = row.delta0;
      for (const auto& r : runs[i].reports) row.delta_min = std::min(row.delta_min, r.chord_arc_delta);
    }
    if (row.reason != "completed" || row.delta_min < 0.5 * row.delta0) table.chord_arc_ok = false;
    if (!table.rows.empty() && !(row.d_eps < table.rows.back().d_eps)) table.decreasing = false;
    table.rows.push_back(row);
  }
  if (!errors.back().empty() || runs.back().reason != TerminationReason::completed)
    table.chord_arc_ok = false;
  write_text(fs::path(out_dir) / "mollify.csv", table.csv());
  return table;
}

// ---------------------------------------------------------------- batteries

VerifyOutcome verify(const IniDocument& doc, const std::string& out_dir) {
  const SimConfig c = config_from_document(doc);
  VerifyOutcome out;
  IdentityOptions io;
  io.n = c.n;
  io.seed = c.seed;
  const IdentityReport ir = run_identity_battery(io);
  std::optional<nlohmann::json> baseline;
  if (!c.verify_baseline.empty()) {
    try {
      baseline = load_json_file(c.verify_baseline);
    } catch (const std::exception& e) {
      throw ConfigError(doc.where("verify.baseline"), e.what());
    }
  }
  const InequalityReport qr =
      run_inequality_battery(c.verify_inequality_n, c.verify_trials, c.seed, baseline);
  out.identities = ir.to_json();
  out.inequalities = qr.to_json();
  out.passed = ir.passed && qr.passed;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "identities.json", out.identities.dump(2) + "\n");
    write_text(fs::path(out_dir) / "inequalities.json", out.inequalities.dump(2) + "\n");
  }
  return out;
}

std::string EulerTable::csv() const {
  std::ostringstream out;
  out << 't';
  for (double y : heights) out << ",y=" << fmt17(y);
  out << '\n';
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << fmt17(times[i]);
    for (double r : residuals[i]) out << ',' << fmt17(r);
    out << '\n';
  }
  return out.str();
}

EulerTable euler_check(const IniDocument& doc, const std::string& out_dir) {
  const RunRecord rec = simulate(doc, out_dir, true);
  EulerTable table;
  table.heights = rec.config.euler_heights;
  for (const auto& s : rec.trajectory.snapshots) {
    const EulerResidual e = euler_residual(s, rhs(s), table.heights);
    table.times.push_back(s.t());
    table.residuals.push_back(e.residuals);
    table.max = std::max(table.max, e.max);
  }
  if (!out_dir.empty()) write_text(fs::path(out_dir) / "euler.csv", table.csv());
  return table;
}

}  // namespace cw
