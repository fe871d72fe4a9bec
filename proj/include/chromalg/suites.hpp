#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "chromalg/spaces.hpp"

namespace chromalg {

inline constexpr const char* kReportSchema = "chromalg.report/1";

enum class Format { Text, Json };

struct RunConfig {
  int p = 3;
  int n = 1;
  int xdeg = 0;   // 0 selects a per-suite default
  int uprec = 0;  // 0 selects a per-suite default
  std::vector<int> modulus;  // base field modulus; empty selects the default
  std::string selection = "all";
  Format format = Format::Text;
  std::uint64_t seed = 1;
  int samples = 50;  // random instances per randomized check
};

/// Throws ConfigError for p not an odd prime, n outside 1..3, negative
/// degrees or an unknown selection.
void validate(const RunConfig& cfg, const std::vector<std::string>& selections);

struct CheckResult {
  std::string id;
  std::string anchor;
  bool ok = false;
  std::string witness;
};

struct Report {
  std::string suite;
  RunConfig config;
  std::vector<CheckResult> checks;

  bool ok() const;
};

/// mt19937_64 keyed by (seed, check id): the seed mixed with the FNV-1a hash
/// of the id, so checks draw independent streams in any order.
std::mt19937_64 check_rng(std::uint64_t seed, std::string_view id);

std::string render(const Report& r, Format f);
std::string render(const std::vector<Report>& rs, Format f);

/// selection: "check".
Report run_fgl(const RunConfig& cfg);
/// selection: "check".
Report run_iso(const RunConfig& cfg);
/// selection: lambda, cgr, composite or all.
Report run_hopf(const RunConfig& cfg);
/// selection: equivalence, milnor, assembly or all.
Report run_comod(const RunConfig& cfg);
/// selection: chern.
Report run_spaces(const RunConfig& cfg);
/// Every suite at the configured (p, n).
std::vector<Report> run_all(const RunConfig& cfg);

/// Lens-model coaction tables rho(x), rho(y) over the composite, and the
/// projective-space coaction of x.
std::string coaction_tables(const RunConfig& cfg);

/// Defaults shared by the CLI and the tests.
int default_xdeg(int p, int n);
int default_uprec(int n);
TowerPtr base_tower(const RunConfig& cfg);

}  // namespace chromalg
