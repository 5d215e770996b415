// Command-line front end: simulate, sweep, mollify-study, verify, euler-check.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crestwave/config.hpp"
#include "crestwave/errors.hpp"
#include "crestwave/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;

struct Common {
  std::string config;
  std::string out;
  std::size_t workers = 0;
  long long seed = -1;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "configuration file")->required();
  sub->add_option("--out", c.out, "output directory (overrides output.dir)");
  sub->add_option("--workers", c.workers, "concurrent runs (overrides run.workers)");
  sub->add_option("--seed", c.seed, "master seed (overrides run.seed)");
  sub->add_option("--override", c.overrides, "section.key=value, repeatable");
}

cw::IniDocument load(const Common& c) {
  cw::IniDocument doc = cw::IniDocument::load(c.config);
  for (const auto& o : c.overrides) {
    auto [k, v] = cw::parse_override(o);
    doc.set(k, v);
  }
  if (!c.out.empty()) doc.set("output.dir", c.out);
  if (c.seed >= 0) doc.set("run.seed", std::to_string(c.seed));
  if (c.workers > 0) doc.set("run.workers", std::to_string(c.workers));
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crestwave: periodic gravity water waves in conformal variables"};
  app.require_subcommand(1);
  Common c;
  auto* sim = app.add_subcommand("simulate", "run one trajectory with monitors");
  auto* swp = app.add_subcommand("sweep", "run the [sweep] parameter grid");
  auto* mol = app.add_subcommand("mollify-study", "Cauchy differences across mollification depths");
  auto* ver = app.add_subcommand("verify", "identity and inequality batteries");
  auto* eul = app.add_subcommand("euler-check", "interior Euler residual along a run");
  for (auto* s : {sim, swp, mol, ver, eul}) add_common(s, c);

  CLI11_PARSE(app, argc, argv);

  try {
    const cw::IniDocument doc = load(c);
    const cw::SimConfig cfg = cw::config_from_document(doc);

    if (sim->parsed()) {
      const cw::RunRecord rec = cw::simulate(doc, cfg.out_dir);
      const auto& tr = rec.trajectory;
      std::printf("%s: %zu steps, t = %.6g, %.3f s\n", cw::to_string(tr.reason), tr.steps,
                  tr.final_state.t(), rec.wall_seconds);
      if (tr.reason != cw::TerminationReason::completed) {
        std::fprintf(stderr, "terminated: %s%s%s\n", cw::to_string(tr.reason),
                     tr.detail.empty() ? "" : ": ", tr.detail.c_str());
        return kExitGuard;
      }
      return kExitOk;
    }
    if (swp->parsed()) {
      const cw::SweepSummary s = cw::sweep(doc, cfg.out_dir, cfg.workers);
      std::fputs(s.csv().c_str(), stdout);
      return kExitOk;
    }
    if (mol->parsed()) {
      const cw::MollifyTable t = cw::mollify_study(doc, cfg.out_dir, cfg.workers);
      std::fputs(t.csv().c_str(), stdout);
      std::printf("d_eps decreasing: %s, chord-arc held: %s\n", t.decreasing ? "yes" : "no",
                  t.chord_arc_ok ? "yes" : "no");
      return kExitOk;
    }
    if (ver->parsed()) {
      const cw::VerifyOutcome v = cw::verify(doc, cfg.out_dir);
      std::printf("identities: %s\ninequalities: %s\n",
                  v.identities["passed"].get<bool>() ? "pass" : "FAIL",
                  v.inequalities["passed"].get<bool>() ? "pass" : "FAIL");
      return v.passed ? kExitOk : kExitFailed;
    }
    if (eul->parsed()) {
      const cw::EulerTable t = cw::euler_check(doc, cfg.out_dir);
      std::fputs(t.csv().c_str(), stdout);
      std::printf("max residual: %.3e\n", t.max);
      return kExitOk;
    }
  } catch (const cw::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailed;
  }
  return kExitFailed;
}
