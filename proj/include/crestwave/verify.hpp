#pragma once
// Identity and inequality batteries: every exact relation is evaluated by two
// independent routes, every inequality by its empirical ratio.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cw {

enum class IdentityKind { spectral, quadrature, finite_difference, composite };
const char* to_string(IdentityKind k);
double default_tolerance(IdentityKind k);  // 1e-10, 1e-6, 1e-6, n/a

struct IdentityResult {
  std::string name;
  IdentityKind kind = IdentityKind::spectral;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;  // for composite entries: which check covers it
};

struct NegativeControl {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool failed_as_expected = false;
};

struct IdentityOptions {
  std::size_t n = 512;
  std::uint64_t seed = 1;
  double slope = 0.2;    // size of the random admissible state; 0 gives flat rest
  double speed = 0.1;
  int kmax = 0;          // 0 picks min(12, n/32)
  double fd_dt = 1e-3;
  bool negative_controls = true;
};

struct IdentityReport {
  IdentityOptions options;
  std::vector<IdentityResult> identities;
  std::vector<NegativeControl> controls;
  bool passed = false;

  const IdentityResult& find(const std::string& name) const;
  nlohmann::json to_json() const;
};

IdentityReport run_identity_battery(const IdentityOptions& opt);
IdentityReport run_identity_battery(std::size_t n, std::uint64_t seed);

struct InequalityResult {
  std::string name;
  double max_ratio = 0.0;
  std::uint64_t argmax_seed = 0;
  double bound = 10.0;
  std::optional<double> baseline;
  bool passed = false;
};

struct InequalityReport {
  std::size_t n = 128;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::vector<InequalityResult> results;
  bool passed = false;

  const InequalityResult& find(const std::string& name) const;
  nlohmann::json to_json() const;
};

// Sobolev ratio is checked against 2 + 1e-6, everything else against 10.
// When a baseline JSON (name -> max ratio) is supplied every ratio must also
// stay within 1.2 x baseline. DomainError if trials < 100.
InequalityReport run_inequality_battery(std::size_t n, std::size_t trials,
                                        std::uint64_t seed,
                                        const std::optional<nlohmann::json>& baseline = {});

nlohmann::json load_json_file(const std::string& path);

}  // namespace cw
