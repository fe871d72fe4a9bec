#include <algorithm>
#include <sstream>

#include "chromalg/error.hpp"
#include "chromalg/suites.hpp"
#include "json.hpp"

namespace chromalg {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["p"] = c.p;
  j["n"] = c.n;
  j["xdeg"] = c.xdeg;
  j["uprec"] = c.uprec;
  j["modulus"] = c.modulus;
  j["selection"] = c.selection;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  return j;
}

nlohmann::ordered_json report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["config"] = config_json(r.config);
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["anchor"] = c.anchor;
    e["status"] = c.ok ? "pass" : "fail";
    if (!c.witness.empty()) e["witness"] = c.witness;
    j["checks"].push_back(e);
  }
  j["ok"] = r.ok();
  return j;
}

void text_body(std::ostringstream& os, const Report& r) {
  const auto& c = r.config;
  os << "suite " << r.suite << "  p=" << c.p << " n=" << c.n << " xdeg=" << c.xdeg << " uprec=" << c.uprec
     << " selection=" << c.selection << " seed=" << c.seed << "\n";
  std::size_t passed = 0;
  for (const auto& k : r.checks) {
    os << (k.ok ? "  PASS " : "  FAIL ") << k.id << " [" << k.anchor << "]";
    if (!k.witness.empty()) os << "  witness: " << k.witness;
    os << "\n";
    passed += k.ok ? 1 : 0;
  }
  os << "  " << passed << "/" << r.checks.size() << " passed\n";
}

}  // namespace

void validate(const RunConfig& cfg, const std::vector<std::string>& selections) {
  if (!is_prime(cfg.p) || cfg.p == 2) throw Error(ErrorCode::ConfigError, "p must be an odd prime, got " + std::to_string(cfg.p));
  if (cfg.n < 1 || cfg.n > 3) throw Error(ErrorCode::ConfigError, "n must lie in 1..3, got " + std::to_string(cfg.n));
  if (cfg.xdeg < 0 || cfg.uprec < 0) throw Error(ErrorCode::ConfigError, "degrees must be positive");
  if (cfg.samples < 1) throw Error(ErrorCode::ConfigError, "samples must be positive");
  if (!selections.empty() && std::find(selections.begin(), selections.end(), cfg.selection) == selections.end())
    throw Error(ErrorCode::ConfigError, "unknown selection " + cfg.selection);
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

std::mt19937_64 check_rng(std::uint64_t seed, std::string_view id) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : id) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

std::string render(const Report& r, Format f) {
  if (f == Format::Json) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["seed"] = r.config.seed;
    const auto body = report_json(r);
    for (const auto& [k, v] : body.items()) j[k] = v;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "chromalg report " << kReportSchema << "\n";
  text_body(os, r);
  return os.str();
}

std::string render(const std::vector<Report>& rs, Format f) {
  const std::uint64_t seed = rs.empty() ? 0 : rs.front().config.seed;
  bool ok = true;
  for (const auto& r : rs) ok = ok && r.ok();
  if (f == Format::Json) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["seed"] = seed;
    j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : rs) j["reports"].push_back(report_json(r));
    j["ok"] = ok;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "chromalg report " << kReportSchema << "  seed=" << seed << "\n";
  for (const auto& r : rs) text_body(os, r);
  os << (ok ? "all suites passed\n" : "some checks failed\n");
  return os.str();
}

int default_xdeg(int p, int n) {
  int q = 1;
  for (int i = 0; i < n; ++i) q *= p;
  return std::max(10, q + 1);
}

int default_uprec(int n) { return n == 1 ? 6 : 4; }

TowerPtr base_tower(const RunConfig& cfg) {
  const int uprec = cfg.uprec ? cfg.uprec : default_uprec(cfg.n);
  return Tower::laurent(FiniteField::make(cfg.p, cfg.n * (cfg.n + 1), cfg.modulus), uprec);
}

}  // namespace chromalg
