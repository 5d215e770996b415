#pragma once
// Run configuration: a sectioned key = value text format and its typed view.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crestwave/initial_data.hpp"
#include "crestwave/simulation.hpp"

namespace cw {

// Raw parse result. Keys are stored as "section.key"; each entry remembers the
// line it came from so later validation can point at it.
class IniDocument {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static IniDocument parse(const std::string& text, const std::string& origin = "<config>");
  static IniDocument load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const Entry* find(const std::string& key) const;
  // Inserts or replaces; line 0 marks a value that came from an override.
  void set(const std::string& key, const std::string& value, int line = 0);
  const std::map<std::string, Entry>& entries() const { return entries_; }
  const std::string& origin() const { return origin_; }
  std::string where(const std::string& key) const;
  // Canonical text: sections sorted, keys sorted; parse(serialize()) round-trips.
  std::string serialize() const;

 private:
  std::string origin_;
  std::map<std::string, Entry> entries_;
};

// "section.key=value"; ConfigError if malformed.
std::pair<std::string, std::string> parse_override(const std::string& text);

struct SimConfig {
  std::size_t n = 512;
  std::optional<double> dt;
  std::optional<double> cfl;
  double T = 1.0;
  Family family = Family::flat;
  FamilyParams params;
  double eps = 0.0;  // mollification depth applied to the initial data
  FilterSettings filter;
  double report_interval = 0.1;
  MonitorPolicy monitor;
  DiagnosticsOptions diagnostics;
  std::string out_dir = "runs";
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::size_t markers = 0;

  // Sweep axes: full key -> values (cartesian product, in key order).
  std::vector<std::pair<std::string, std::vector<std::string>>> sweep;
  // Mollification study depths (geometric, ratio 2).
  std::vector<double> mollify_eps;
  // Battery and interior settings.
  std::size_t verify_trials = 100;
  std::size_t verify_inequality_n = 128;
  std::string verify_baseline;
  std::vector<double> euler_heights = {-0.2, -0.5, -1.0};

  RunOptions run_options() const;
  InitialData initial_data() const;
};

// Typed view of a document. ConfigError names the key and line on failure;
// unknown keys are rejected.
SimConfig config_from_document(const IniDocument& doc);
SimConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides = {});

// FNV-1a over the canonical text, rendered as 16 hex digits.
std::string config_hash(const IniDocument& doc);

}  // namespace cw
