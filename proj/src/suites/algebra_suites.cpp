#include <map>

#include "chromalg/error.hpp"
#include "runner.hpp"

namespace chromalg {

using detail::both;
using detail::from_checks;
using detail::ipow;
using detail::run_check;
using detail::Verdict;
using detail::verdict;

namespace {

Verdict fgl_axioms(const FGL& F) {
  auto fails = check_fgl_axioms(F);
  return fails.empty() ? Verdict{} : Verdict{false, fails[0].axiom + " at " + fails[0].witness};
}

// Uniform element of F_{p^2} inside the field of T.
TowerElem random_fp2(const Tower& T, std::mt19937_64& rng) {
  const FiniteField& F = *T.field();
  const auto k = rng() % static_cast<std::uint64_t>(F.p() * F.p());
  if (k == 0) return T.zero();
  return T.from_fq(F.pow(detail::subfield_gen(F, 2), static_cast<std::int64_t>(k - 1)));
}

Verdict linearization(const FGL& F, int n, int samples, std::mt19937_64& rng) {
  const int q = static_cast<int>(ipow(F.p, n));
  const TowerPtr& T = F.tower();
  auto V = x_table(F.N);
  for (int s = 0; s < samples; ++s) {
    std::vector<TSeries> terms;
    TSeries plain(V, T);
    for (int i = 0; ipow(F.p, i) < F.N; ++i) {
      TSeries t = TSeries::var(V, T, 0, static_cast<int>(ipow(F.p, i))).scale(random_fp2(*T, rng));
      plain += t;
      terms.push_back(t);
    }
    if (!(formal_sum(F, terms).truncate_total(q) == plain.truncate_total(q))) return {false, "sample " + std::to_string(s)};
  }
  return {};
}

// c(X) = X +_H gamma X^p conjugates H into a p-typical law.
FGL conjugate(const FGL& H, const TSeries& c) {
  auto V2 = H.F.vars();
  const auto& T = H.tower();
  TSeries cX = c.substitute({TSeries::var(V2, T, 0)}), cY = c.substitute({TSeries::var(V2, T, 1)});
  return user_fgl(c.reverse().substitute({H.F.substitute({cX, cY})}), H.p);
}

TSeries lift_series(const TSeries& s, const TowerPtr& T) {
  return s.map_coeffs<TowerElem>(T, [&](const TowerElem& c) { return T->lift(c); });
}

}  // namespace

Report run_fgl(const RunConfig& cfg) {
  validate(cfg, {"check", "all"});
  Report r{"fgl", cfg, {}};
  const int p = cfg.p, n = cfg.n;
  const int N = cfg.xdeg ? cfg.xdeg + 1 : static_cast<int>(ipow(p, n + 1) + p);
  const int q = static_cast<int>(ipow(p, n));
  r.config.xdeg = N - 1;
  TowerPtr T;
  std::optional<FGL> honda, elaw;
  run_check(r, "fgl.construct", "fgl:laws", [&] {
    T = base_tower(cfg);
    r.config.uprec = T->uprec();
    honda = honda_fgl(n, T, N);
    elaw = e_law(n, T, N);
    return Verdict{};
  });
  if (!honda) return r;
  for (const auto& [name, F] : {std::pair<std::string, const FGL*>{"honda", &*honda}, {"e_law", &*elaw}}) {
    run_check(r, "fgl." + name + ".axioms", "fgl:axioms", [&] { return fgl_axioms(*F); });
    run_check(r, "fgl." + name + ".additive_below_p^n", "fgl:linearization",
              [&] { return verdict(strict_height_at_least(*F, n)); });
  }
  run_check(r, "fgl.honda.p_series", "fgl:p-series", [&] {
    TSeries ps = p_series(*honda);
    return verdict(ps == TSeries::var(x_table(N), T, 0, q), ps.to_string());
  });
  run_check(r, "fgl.e_law.p_series", "fgl:p-series", [&] {
    TSeries ps = p_series(*elaw);
    if (ps.is_zero()) return Verdict{false, "[p](X) = 0"};
    const auto& [m, c] = ps.terms().front();
    return verdict(m.e[0] == q && c.valuation() == T->e(), "lowest term " + T->format(c) + " X^" + std::to_string(m.e[0]));
  });
  run_check(r, "fgl.specialize.v_n_one_is_honda", "fgl:specialize", [&] {
    auto S = specialize_hazewinkel(p, {VAssignment::of_int(n, 1, -(q - 1))}, T, N);
    return verdict(S.F == honda->F);
  });
  run_check(r, "fgl.specialize.all_v_zero_is_additive", "fgl:specialize",
            [&] { return verdict(specialize_hazewinkel(p, {}, T, N).F == additive_fgl(T, N).F); });
  run_check(r, "fgl.linearization.random_fp2", "fgl:linearization", [&] {
    auto rng = check_rng(cfg.seed, "fgl.linearization.random_fp2");
    return both(linearization(*honda, n, cfg.samples, rng), linearization(*elaw, n, cfg.samples, rng));
  });
  return r;
}

Report run_iso(const RunConfig& cfg) {
  validate(cfg, {"check", "all"});
  Report r{"iso", cfg, {}};
  const int p = cfg.p, n = cfg.n;
  const int xdeg = cfg.xdeg ? cfg.xdeg : default_xdeg(p, n);
  const int N = xdeg + 1;
  const int uprec = cfg.uprec ? cfg.uprec : default_uprec(n);
  r.config.xdeg = xdeg;
  r.config.uprec = uprec;
  RunConfig tc = cfg;
  tc.uprec = uprec;
  std::optional<FGLIso> iso;
  TowerPtr T;
  run_check(r, "iso.solve", "iso:solve", [&] {
    T = base_tower(tc);
    iso = solve_phi(e_law(n, T, N), honda_fgl(n, T, N), n, {N, uprec});
    for (const auto& rule : iso->tower->rules())
      if (rule.kind != Tower::RuleKind::Kummer && rule.kind != Tower::RuleKind::Additive)
        return Verdict{false, "unexpected adjunction"};
    return Verdict{};
  });
  if (!iso) return r;
  run_check(r, "iso.verify", "iso:verify", [&] {
    IsoReport v = verify_iso(*iso);
    return verdict(v.ok && v.inverse_ok, v.discrepancy.empty() ? "inverse" : v.discrepancy);
  });
  run_check(r, "iso.conjugated_round_trip", "iso:conjugation", [&] {
    FGL H = honda_fgl(n, T, N);
    auto V = x_table(N);
    TowerElem gamma = T->one() + T->u_pow(1);
    TSeries c = formal_sum(H, {TSeries::var(V, T, 0), TSeries::var(V, T, 0, p).scale(gamma)});
    FGLIso back = solve_phi(conjugate(H, c), H, n, {N, uprec});
    if (!verify_iso(back).ok) return Verdict{false, "recovered isomorphism does not verify"};
    TSeries aut = back.phi.substitute({lift_series(c, back.tower).reverse()});
    return verdict(is_honda_automorphism(H, n, aut), aut.to_string());
  });
  const auto& Fq = *T->field();
  const TSeries X = TSeries::var(x_table(N), iso->tower, 0);
  run_check(r, "iso.equivariance.honda_automorphism", "iso:equivariance", [&] {
    auto t = HondaEndo::make(iso->target, n, {iso->tower->from_fq(detail::subfield_gen(Fq, n))}, N);
    auto e = check_equivariance(*iso, {WitnessKind::Gn, t.series, 0});
    return verdict(e.ok, e.detail);
  });
  run_check(r, "iso.equivariance.frobenius", "iso:equivariance", [&] {
    auto e = check_equivariance(*iso, {WitnessKind::Gn, X, 1});
    return verdict(e.ok, e.detail);
  });
  run_check(r, "iso.equivariance.central", "iso:equivariance", [&] {
    auto e = check_equivariance(*iso, {WitnessKind::GnPlus1, formal_sum(iso->source, {X, X}), 0});
    return verdict(e.ok, e.detail);
  });
  return r;
}

Report run_hopf(const RunConfig& cfg) {
  validate(cfg, {"lambda", "cgr", "composite", "all"});
  Report r{"hopf", cfg, {}};
  const int p = cfg.p, n = cfg.n;
  const bool all = cfg.selection == "all";
  auto from_report = [](const HopfReport& h) {
    const AxiomCheck* f = h.first_failure();
    return f ? Verdict{false, f->axiom + " at " + f->witness} : Verdict{};
  };
  if (all || cfg.selection == "lambda")
    run_check(r, "hopf.lambda.axioms", "hopf:exterior",
              [&] { return from_report(check_axioms(exterior_hopf(p, n, Tower::finite(FiniteField::make(p, 1))))); });
  if (all || cfg.selection == "cgr") {
    std::map<std::string, int> seen;
    for (const auto& C : standard_function_hopfs(cfg.seed)) {
      const std::string id = "hopf.cgr." + C.group().name + ".ring" + std::to_string(seen[C.group().name]++);
      run_check(r, id + ".action", "hopf:functions", [&] { return verdict(C.action_is_valid()); });
      run_check(r, id + ".axioms", "hopf:functions", [&] { return from_report(check_axioms(C)); });
      run_check(r, id + ".m_isomorphism", "hopf:functions", [&] { return verdict(C.m_is_isomorphism()); });
    }
  }
  if (all || cfg.selection == "composite") {
    auto Tf = Tower::finite(FiniteField::make(p, 1));
    auto H = composite_hopf(p, n, Tf);
    run_check(r, "hopf.composite.axioms", "hopf:composite", [&] { return from_report(check_axioms(H.full)); });
    run_check(r, "hopf.composite.splitting", "hopf:composite", [&] { return from_checks(check_splitting(H)); });
    run_check(r, "hopf.composite.two_route_psi", "hopf:coaction", [&] {
      auto T = Tower::laurent(FiniteField::make(p, n), 4);
      const int N = static_cast<int>(ipow(p, n)) + 1;
      auto HL = composite_hopf(p, n, T);
      for (const FGL& F : {honda_fgl(n, T, N), e_law(n, T, N)}) {
        auto derived = derive_psi_from_coaction(HL, F);
        for (int i = 0; i < n; ++i)
          if (!(derived[static_cast<std::size_t>(i)] == composite_psi_b(HL, i))) return Verdict{false, "b" + std::to_string(i)};
      }
      return Verdict{};
    });
  }
  return r;
}

}  // namespace chromalg
