// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chromalg/fgl.hpp"
#include "chromalg/suites.hpp"
#include "json.hpp"

#ifndef CHROMALG_CLI_PATH
#error "CHROMALG_CLI_PATH must point at the chromalg binary"
#endif

namespace {

using namespace chromalg;
using Clock = std::chrono::steady_clock;

// Every comparison below is equality of normal forms; no numeric slack.
constexpr const char* kTolerance = "exact";
constexpr double kPerCaseLimit = 30.0;
constexpr double kHopfLimit = 60.0;
constexpr double kSolverLimit = 120.0;
constexpr double kChernLimit = 180.0;
constexpr int kLinearizationSamples = 100;
constexpr int kRandomInstances = 50;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct Case {
  int p, n;
};
constexpr std::array<Case, 3> kCases{{{3, 1}, {3, 2}, {5, 1}}};

TowerPtr laurent_for(const Case& c) { return Tower::laurent(FiniteField::make(c.p, c.n * (c.n + 1)), default_uprec(c.n)); }

int fgl_bound(const Case& c) { return static_cast<int>(ipow(c.p, c.n + 1) + c.p); }

std::string case_name(const Case& c) { return "(" + std::to_string(c.p) + "," + std::to_string(c.n) + ")"; }

// Runs f once per case and enforces the per-case limit.
Outcome per_case(const std::function<void(const Case&, Outcome&)>& f) {
  Outcome out;
  double worst = 0;
  for (const Case& c : kCases) {
    const auto t0 = Clock::now();
    try {
      f(c, out);
    } catch (const std::exception& e) {
      out.fail(case_name(c) + " threw " + e.what());
    }
    const double s = seconds_since(t0);
    worst = std::max(worst, s);
    if (s > kPerCaseLimit) out.fail(case_name(c) + " took " + std::to_string(s) + " s");
  }
  if (out.ok) {
    std::ostringstream os;
    os.precision(3);
    os << "slowest case " << worst << " s";
    out.detail = os.str();
  }
  return out;
}

// Laws of criterion 1: the Honda law and three specializations of the Hazewinkel law.
std::vector<std::pair<std::string, FGL>> laws_for(const Case& c) {
  const TowerPtr T = laurent_for(c);
  const int N = fgl_bound(c);
  const int q = static_cast<int>(ipow(c.p, c.n));
  return {{"honda", honda_fgl(c.n, T, N)},
          {"e_law", e_law(c.n, T, N)},
          {"v_n=1", specialize_hazewinkel(c.p, {VAssignment::of_int(c.n, 1, -(q - 1))}, T, N)},
          {"v_(n+1)=1", specialize_hazewinkel(c.p, {VAssignment::of_int(c.n + 1, 1, -static_cast<int>(ipow(c.p, c.n + 1) - 1))}, T, N)}};
}

Outcome fgl_axioms() {
  return per_case([](const Case& c, Outcome& out) {
    const int q = static_cast<int>(ipow(c.p, c.n));
    for (const auto& [name, F] : laws_for(c)) {
      const std::string at = case_name(c) + " " + name;
      if (F.N != fgl_bound(c)) out.fail(at + " truncated at " + std::to_string(F.N));
      if (auto fails = check_fgl_axioms(F); !fails.empty()) out.fail(at + " " + fails[0].axiom + " at " + fails[0].witness);
      // X + Y below total degree p^n, checked against the sum itself.
      auto V = F.F.vars();
      const TSeries sum = TSeries::var(V, F.tower(), 0) + TSeries::var(V, F.tower(), 1);
      if (!(F.F.truncate_total(q) == sum.truncate_total(q))) out.fail(at + " is not X+Y below degree p^n");
      if (!strict_height_at_least(F, c.n)) out.fail(at + " strict height check disagrees");
    }
  });
}

Outcome p_series_values() {
  return per_case([](const Case& c, Outcome& out) {
    const TowerPtr T = laurent_for(c);
    const int N = fgl_bound(c);
    const int q = static_cast<int>(ipow(c.p, c.n));
    const auto V = x_table(N);
    const TSeries X = TSeries::var(V, T, 0);
    const FGL H = honda_fgl(c.n, T, N);
    const TSeries ph = p_series(H);
    if (!(ph == TSeries::var(V, T, 0, q))) out.fail(case_name(c) + " honda [p] = " + ph.to_string());
    // p-fold formal sum as a second route.
    if (!(formal_sum(H, std::vector<TSeries>(static_cast<std::size_t>(c.p), X)) == ph))
      out.fail(case_name(c) + " honda [p] differs from the p-fold sum");

    const FGL E = e_law(c.n, T, N);
    const TSeries pe = p_series(E);
    if (!(formal_sum(E, std::vector<TSeries>(static_cast<std::size_t>(c.p), X)) == pe))
      out.fail(case_name(c) + " e_law [p] differs from the p-fold sum");
    if (pe.is_zero()) {
      out.fail(case_name(c) + " e_law [p] = 0");
      return;
    }
    const auto& [m, coef] = pe.terms().front();
    if (m.e[0] != q) out.fail(case_name(c) + " e_law [p] starts at X^" + std::to_string(m.e[0]));
    const TowerElem unit = coef * T->u_pow(1).inv();
    if (unit.is_zero() || unit.valuation() != 0) out.fail(case_name(c) + " e_law leading coefficient is not u times a unit");
  });
}

Outcome linearization() {
  Outcome out;
  auto rng = check_rng(kSeed, "acceptance.linearization");
  for (const Case& c : kCases) {
    if (c.p != 3) continue;  // F_9 sits inside the base field only for p = 3
    const TowerPtr T = laurent_for(c);
    const FiniteField& F = *T->field();
    const auto g9 = F.pow(F.primitive(), static_cast<std::int64_t>((F.order() - 1) / 8));
    const int N = fgl_bound(c);
    const int q = static_cast<int>(ipow(c.p, c.n));
    const auto V = x_table(N);
    for (const FGL& law : {honda_fgl(c.n, T, N), e_law(c.n, T, N)}) {
      for (int s = 0; s < kLinearizationSamples; ++s) {
        std::vector<TSeries> terms;
        TSeries plain(V, T);
        for (int i = 0; ipow(c.p, i) < N; ++i) {
          const auto k = rng() % 9;
          const TowerElem a = k == 0 ? T->zero() : T->from_fq(F.pow(g9, static_cast<std::int64_t>(k - 1)));
          terms.push_back(TSeries::var(V, T, 0, static_cast<int>(ipow(c.p, i))).scale(a));
          plain += terms.back();
        }
        if (!(formal_sum(law, terms).truncate_total(q) == plain.truncate_total(q)))
          out.fail(case_name(c) + " sample " + std::to_string(s));
      }
    }
  }
  if (out.ok) out.detail = std::to_string(kLinearizationSamples) + " tuples per law, (3,1) and (3,2)";
  return out;
}

// Fails unless every listed check id is present and green.
void require(const Report& r, const std::vector<std::string>& ids, Outcome& out) {
  for (const auto& id : ids) {
    bool found = false;
    for (const auto& c : r.checks) {
      if (c.id != id) continue;
      found = true;
      if (!c.ok) out.fail(r.suite + " n=" + std::to_string(r.config.n) + " " + id + ": " + c.witness);
    }
    if (!found) out.fail(r.suite + " n=" + std::to_string(r.config.n) + " " + id + " did not run");
  }
}

void require_all(const Report& r, Outcome& out) {
  for (const auto& c : r.checks)
    if (!c.ok) out.fail(r.suite + " n=" + std::to_string(r.config.n) + " " + c.id + ": " + c.witness);
}

RunConfig config(int n, const std::string& selection) {
  RunConfig c;
  c.n = n;
  c.selection = selection;
  c.seed = kSeed;
  c.samples = kRandomInstances;
  return c;
}

std::vector<Report> hopf_runs;

Outcome hopf_axioms() {
  Outcome out;
  const auto t0 = Clock::now();
  for (int n = 1; n <= 3; ++n) hopf_runs.push_back(run_hopf(config(n, "all")));
  const double s = seconds_since(t0);
  std::set<std::string> groups;
  for (const auto& r : hopf_runs) {
    require(r, {"hopf.lambda.axioms", "hopf.composite.axioms", "hopf.composite.splitting"}, out);
    for (const auto& c : r.checks) {
      if (c.id.rfind("hopf.cgr.", 0) != 0 || c.id.find(".axioms") == std::string::npos) continue;
      groups.insert(c.id.substr(0, c.id.rfind('.')));
      if (!c.ok) out.fail(c.id + ": " + c.witness);
    }
    require_all(r, out);
  }
  for (const std::string g : {"Z/2", "Z/3", "S3"})
    for (const std::string ring : {"ring0", "ring1"})
      if (!groups.count("hopf.cgr." + g + "." + ring)) out.fail("no C(G,R) instance for " + g + " " + ring);
  if (s > kHopfLimit) out.fail("took " + std::to_string(s) + " s");
  if (out.ok) out.detail = std::to_string(groups.size()) + " C(G,R) instances, Lambda and composite for n = 1..3";
  return out;
}

Outcome two_route_psi() {
  Outcome out;
  if (hopf_runs.empty())
    for (int n = 1; n <= 3; ++n) hopf_runs.push_back(run_hopf(config(n, "all")));
  for (const auto& r : hopf_runs) require(r, {"hopf.composite.two_route_psi"}, out);
  if (out.ok) out.detail = "honda and e_law, i < n for n = 1..3";
  return out;
}

Outcome assembly() {
  Outcome out;
  require(run_comod(config(2, "assembly")),
          {"comod.assembly.lens", "comod.assembly.random", "comod.assembly.generator_identities",
           "comod.assembly.rejects_non_colinear"},
          out);
  if (out.ok) out.detail = "lens model n <= 2 and " + std::to_string(kRandomInstances) + " random C-Lambda comodules";
  return out;
}

Outcome equivalence() {
  Outcome out;
  require(run_comod(config(1, "equivalence")), {"comod.equivalence.random", "comod.equivalence.trivial"}, out);
  if (out.ok) out.detail = std::to_string(kRandomInstances) + " random twisted modules with tensor products";
  return out;
}

Outcome milnor() {
  Outcome out;
  for (int n = 1; n <= 3; ++n)
    require(run_comod(config(n, "milnor")),
            {"comod.milnor.lens_values", "comod.milnor.anticommutation", "comod.milnor.derivation",
             "comod.milnor.twist", "comod.milnor.recognizer"},
            out);
  if (out.ok) out.detail = "n = 1..3";
  return out;
}

Outcome solver() {
  Outcome out;
  RunConfig c = config(1, "check");
  c.xdeg = 10;
  c.uprec = 6;
  const auto t0 = Clock::now();
  const Report r = run_iso(c);
  const double s = seconds_since(t0);
  require(r, {"iso.solve", "iso.verify", "iso.conjugated_round_trip"}, out);
  if (s > kSolverLimit) out.fail("took " + std::to_string(s) + " s");
  if (out.ok) out.detail = "X-degree 10, uprec 6";
  return out;
}

struct Captured {
  int status = -1;
  std::string out;
};

Captured run_cli(const std::string& args) {
  Captured c;
  const std::string cmd = std::string("\"") + CHROMALG_CLI_PATH + "\" " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), k);
  const int st = pclose(pipe);
  c.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return c;
}

Outcome chern() {
  Outcome out;
  const auto t0 = Clock::now();
  for (const std::string args : {"spaces chern --p 3 --n 1 --xdeg 10 --uprec 6 --format json",
                                 "spaces chern --p 3 --n 2 --format json"}) {
    const Captured c = run_cli(args);
    if (c.status != 0) out.fail(args + " exited " + std::to_string(c.status));
    try {
      const auto j = nlohmann::json::parse(c.out);
      std::set<std::string> green;
      for (const auto& chk : j.at("checks"))
        if (chk.at("status") == "pass") green.insert(chk.at("id").get<std::string>());
      for (const std::string id : {"spaces.chern.theta_generators", "spaces.chern.ring_map",
                                   "spaces.chern.bhat_triangular", "spaces.chern.q_transport"})
        if (!green.count(id)) out.fail(args + ": " + id + " not green");
    } catch (const std::exception& e) {
      out.fail(args + ": unreadable report: " + e.what());
    }
  }
  const double s = seconds_since(t0);
  if (s > kChernLimit) out.fail("took " + std::to_string(s) + " s");
  if (out.ok) out.detail = "(3,1) and (3,2) through the CLI";
  return out;
}

Outcome determinism() {
  Outcome out;
  const std::string args = "all --seed " + std::to_string(kSeed) + " --format json";
  const Captured a = run_cli(args), b = run_cli(args);
  if (a.status != 0 || b.status != 0) out.fail("exit status " + std::to_string(a.status) + "/" + std::to_string(b.status));
  if (a.out.empty()) out.fail("empty report");
  if (a.out != b.out) out.fail("reports differ");
  if (out.ok) out.detail = std::to_string(a.out.size()) + " identical bytes";
  return out;
}

struct Criterion {
  int id;
  std::string name;
  std::string limit;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "FGL axioms and additivity below degree p^n", "30 s per case", fgl_axioms},
      {2, "p-series of the Honda and E laws", "30 s per case", p_series_values},
      {3, "linearization over F_9", "none", linearization},
      {4, "Hopf algebroid axioms", "60 s total", hopf_axioms},
      {5, "two-route comultiplication", "none", two_route_psi},
      {6, "assembly identities and round trips", "none", assembly},
      {7, "twisted module / comodule equivalence", "none", equivalence},
      {8, "Milnor operation suite", "none", milnor},
      {9, "isomorphism solver", "120 s", solver},
      {10, "Chern character", "180 s", chern},
      {11, "determinism of chromalg all", "none", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw ") + e.what());
    }
    failed += o.ok ? 0 : 1;
    std::printf("%s criterion %2d  %-44s tol=%s limit=%s elapsed=%.2fs  %s\n", o.ok ? "PASS" : "FAIL", c.id,
                c.name.c_str(), kTolerance, c.limit.c_str(), seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
