#include "crestwave/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "crestwave/errors.hpp"

namespace cw {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '/';
  });
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

const IniDocument::Entry* IniDocument::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void IniDocument::set(const std::string& key, const std::string& value, int line) {
  entries_[key] = Entry{value, line};
}

std::string IniDocument::where(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return origin_ + ": " + key;
  if (e->line == 0) return "override " + key;
  return origin_ + ":" + std::to_string(e->line) + ": " + key;
}

IniDocument IniDocument::parse(const std::string& text, const std::string& origin) {
  IniDocument doc;
  doc.origin_ = origin;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string where = origin + ":" + std::to_string(line);
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(where, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!valid_name(section)) throw ConfigError(where, "bad section name '" + section + "'");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(where, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    // trailing comments need a space before the marker
    for (const char* mark : {" #", " ;"}) {
      const auto c = value.find(mark);
      if (c != std::string::npos) value = trim(value.substr(0, c));
    }
    if (section.empty()) throw ConfigError(where, "key outside of any section");
    if (!valid_name(key)) throw ConfigError(where, "bad key '" + key + "'");
    const std::string full = section + "." + key;
    if (doc.has(full)) throw ConfigError(where, "duplicate key " + full);
    doc.set(full, value, line);
  }
  return doc;
}

IniDocument IniDocument::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::string IniDocument::serialize() const {
  std::ostringstream out;
  std::string current;
  for (const auto& [key, e] : entries_) {
    const auto dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != current) {
      if (!current.empty()) out << '\n';
      out << '[' << sec << "]\n";
      current = sec;
    }
    out << key.substr(dot + 1) << " = " << e.value << '\n';
  }
  return out.str();
}

std::pair<std::string, std::string> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("override " + text, "expected section.key=value");
  const std::string key = trim(text.substr(0, eq));
  const auto dot = key.find('.');
  if (dot == std::string::npos || !valid_name(key.substr(0, dot)) ||
      !valid_name(key.substr(dot + 1)))
    throw ConfigError("override " + text, "expected section.key=value");
  return {key, trim(text.substr(eq + 1))};
}

namespace {

class Reader {
 public:
  explicit Reader(const IniDocument& d) : doc_(d) {}

  bool has(const std::string& k) {
    used_.insert(k);
    return doc_.has(k);
  }
  [[noreturn]] void fail(const std::string& k, const std::string& msg) const {
    throw ConfigError(doc_.where(k), msg);
  }
  std::string str(const std::string& k) {
    used_.insert(k);
    return doc_.find(k)->value;
  }
  double real(const std::string& k) {
    const std::string v = str(k);
    std::size_t pos = 0;
    double x = 0.0;
    try {
      x = std::stod(v, &pos);
    } catch (const std::exception&) {
      fail(k, "not a number: '" + v + "'");
    }
    if (pos != v.size() || !std::isfinite(x)) fail(k, "not a number: '" + v + "'");
    return x;
  }
  double positive(const std::string& k) {
    const double x = real(k);
    if (!(x > 0.0)) fail(k, "must be positive");
    return x;
  }
  long long integer(const std::string& k) {
    const std::string v = str(k);
    std::size_t pos = 0;
    long long x = 0;
    try {
      x = std::stoll(v, &pos);
    } catch (const std::exception&) {
      fail(k, "not an integer: '" + v + "'");
    }
    if (pos != v.size()) fail(k, "not an integer: '" + v + "'");
    return x;
  }
  bool boolean(const std::string& k) {
    std::string v = str(k);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "off" || v == "no" || v == "0") return false;
    fail(k, "not a boolean: '" + v + "'");
  }
  std::vector<double> reals(const std::string& k) {
    std::vector<double> out;
    for (const auto& item : split_list(str(k))) {
      std::size_t pos = 0;
      double x = 0.0;
      try {
        x = std::stod(item, &pos);
      } catch (const std::exception&) {
        fail(k, "not a number: '" + item + "'");
      }
      if (pos != item.size()) fail(k, "not a number: '" + item + "'");
      out.push_back(x);
    }
    return out;
  }

  void reject_unknown() const {
    for (const auto& [k, e] : doc_.entries()) {
      if (k.rfind("sweep.", 0) == 0) continue;
      if (!used_.count(k)) fail(k, "unknown key");
    }
  }

 private:
  const IniDocument& doc_;
  std::set<std::string> used_;
};

}  // namespace

SimConfig config_from_document(const IniDocument& doc) {
  Reader r(doc);
  SimConfig c;

  if (r.has("grid.n")) {
    const long long n = r.integer("grid.n");
    if (n < 16 || (n & (n - 1)) != 0) r.fail("grid.n", "must be a power of two >= 16");
    c.n = static_cast<std::size_t>(n);
  }
  const bool has_dt = r.has("time.dt"), has_cfl = r.has("time.cfl");
  if (has_dt == has_cfl) r.fail(has_dt ? "time.cfl" : "time.dt", "set exactly one of dt and cfl");
  if (has_dt) c.dt = r.positive("time.dt");
  if (has_cfl) c.cfl = r.positive("time.cfl");
  if (r.has("time.T")) {
    c.T = r.real("time.T");
    if (c.T < 0.0) r.fail("time.T", "must be non-negative");
  }
  if (r.has("time.report_interval")) c.report_interval = r.positive("time.report_interval");

  if (r.has("initial.family")) {
    try {
      c.family = family_from_string(r.str("initial.family"));
    } catch (const DomainError& e) {
      r.fail("initial.family", e.what());
    }
  }
  if (r.has("initial.a")) c.params.a = r.real("initial.a");
  if (r.has("initial.m")) {
    const long long m = r.integer("initial.m");
    if (m < 1) r.fail("initial.m", "must be >= 1");
    c.params.m = static_cast<int>(m);
  }
  if (r.has("initial.r")) c.params.r = r.real("initial.r");
  if (r.has("initial.q")) c.params.q = r.real("initial.q");
  if (r.has("initial.velocity")) c.params.velocity = r.real("initial.velocity");
  if (r.has("initial.eps")) {
    c.eps = r.real("initial.eps");
    if (c.eps < 0.0) r.fail("initial.eps", "must be non-negative");
  }

  if (r.has("filter.dealias")) c.filter.dealias = r.boolean("filter.dealias");
  if (r.has("filter.eps_filter")) {
    c.filter.eps_filter = r.real("filter.eps_filter");
    if (c.filter.eps_filter < 0.0) r.fail("filter.eps_filter", "must be non-negative");
  }
  if (r.has("filter.projection")) c.filter.projection = r.boolean("filter.projection");

  if (r.has("monitor.kappa")) c.monitor.kappa = r.positive("monitor.kappa");
  if (r.has("monitor.taylor_floor")) c.monitor.taylor_floor = r.positive("monitor.taylor_floor");
  if (r.has("monitor.chord_floor")) c.monitor.chord_arc_floor = r.positive("monitor.chord_floor");

  if (r.has("diagnostics.eb_squared")) c.diagnostics.eb_squared = r.boolean("diagnostics.eb_squared");
  if (r.has("diagnostics.higher_energies"))
    c.diagnostics.higher_energies = r.boolean("diagnostics.higher_energies");
  if (r.has("diagnostics.resolution_tail_max"))
    c.diagnostics.resolution_tail_max = r.positive("diagnostics.resolution_tail_max");
  if (r.has("diagnostics.markers")) {
    const long long m = r.integer("diagnostics.markers");
    if (m < 0) r.fail("diagnostics.markers", "must be non-negative");
    c.markers = static_cast<std::size_t>(m);
  }

  if (r.has("output.dir")) c.out_dir = r.str("output.dir");
  if (r.has("run.seed")) {
    const long long s = r.integer("run.seed");
    if (s < 0) r.fail("run.seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (r.has("run.workers")) {
    const long long w = r.integer("run.workers");
    if (w < 1) r.fail("run.workers", "must be >= 1");
    c.workers = static_cast<std::size_t>(w);
  }

  for (const auto& [k, e] : doc.entries()) {
    if (k.rfind("sweep.", 0) != 0) continue;
    const std::string target = k.substr(6);
    const auto dot = target.find('.');
    // sweep axes are written as "section/key = v1, v2, ..."
    const auto slash = target.find('/');
    if (dot != std::string::npos || slash == std::string::npos)
      r.fail(k, "sweep keys are written section/key");
    std::string full = target;
    full[slash] = '.';
    auto values = split_list(e.value);
    if (values.empty()) r.fail(k, "empty sweep axis");
    c.sweep.emplace_back(full, std::move(values));
  }

  if (r.has("mollify.eps")) {
    c.mollify_eps = r.reals("mollify.eps");
    if (c.mollify_eps.empty()) r.fail("mollify.eps", "empty list");
    for (std::size_t i = 0; i < c.mollify_eps.size(); ++i) {
      if (!(c.mollify_eps[i] > 0.0)) r.fail("mollify.eps", "depths must be positive");
      if (i > 0 && std::abs(c.mollify_eps[i - 1] / c.mollify_eps[i] - 2.0) > 1e-9)
        r.fail("mollify.eps", "depths must halve from one entry to the next");
    }
  }

  if (r.has("verify.trials")) {
    const long long t = r.integer("verify.trials");
    if (t < 100) r.fail("verify.trials", "must be >= 100");
    c.verify_trials = static_cast<std::size_t>(t);
  }
  if (r.has("verify.inequality_n")) {
    const long long n = r.integer("verify.inequality_n");
    if (n < 16 || (n & (n - 1)) != 0) r.fail("verify.inequality_n", "must be a power of two >= 16");
    c.verify_inequality_n = static_cast<std::size_t>(n);
  }
  if (r.has("verify.baseline")) c.verify_baseline = r.str("verify.baseline");
  if (r.has("euler.heights")) {
    c.euler_heights = r.reals("euler.heights");
    for (double y : c.euler_heights)
      if (!(y < 0.0)) r.fail("euler.heights", "heights must be negative");
  }

  r.reject_unknown();
  return c;
}

SimConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  IniDocument doc = IniDocument::load(path);
  for (const auto& o : overrides) {
    auto [k, v] = parse_override(o);
    doc.set(k, v);
  }
  return config_from_document(doc);
}

RunOptions SimConfig::run_options() const {
  RunOptions o;
  o.T = T;
  o.dt = dt ? DtPolicy::fixed(*dt) : DtPolicy::cfl(*cfl);
  o.filter = filter;
  o.report_interval = report_interval;
  o.policy = monitor;
  o.diagnostics = diagnostics;
  o.markers = markers;
  return o;
}

InitialData SimConfig::initial_data() const {
  InitialData d;
  switch (family) {
    case Family::flat: d = make_flat(n); break;
    case Family::smooth_wave: d = make_smooth_wave(n, params.a, params.m, params.velocity); break;
    case Family::near_crest: d = make_near_crest(n, params.r, params.q, params.velocity); break;
  }
  if (eps > 0.0) d = mollify(d, eps);
  return d;
}

std::string config_hash(const IniDocument& doc) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : doc.serialize()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cw
