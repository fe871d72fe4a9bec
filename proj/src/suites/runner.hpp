#pragma once

#include <exception>
#include <string>
#include <vector>

#include "chromalg/suites.hpp"

namespace chromalg::detail {

struct Verdict {
  bool ok = true;
  std::string witness;
};

inline Verdict verdict(bool ok, std::string witness = "") { return {ok, ok ? "" : std::move(witness)}; }

inline Verdict from_checks(const std::vector<AxiomCheck>& cs) {
  for (const auto& c : cs)
    if (!c.ok) return {false, c.axiom + " at " + c.witness};
  return {};
}

inline Verdict both(const Verdict& a, const Verdict& b) { return a.ok ? b : a; }

/// Runs one check; module errors become failures carrying the message.
template <class F>
void run_check(Report& r, std::string id, std::string anchor, F&& f) {
  CheckResult c{std::move(id), std::move(anchor), false, ""};
  try {
    Verdict v = f();
    c.ok = v.ok;
    c.witness = std::move(v.witness);
  } catch (const std::exception& e) {
    c.witness = std::string("error: ") + e.what();
  }
  r.checks.push_back(std::move(c));
}

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Generator of F_{p^d}^x inside the field of T.
inline FiniteField::Elem subfield_gen(const FiniteField& F, int d) {
  return F.pow(F.primitive(), (F.order() - 1) / (ipow(F.p(), d) - 1));
}

}  // namespace chromalg::detail
