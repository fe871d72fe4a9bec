#include <sstream>

#include "chromalg/error.hpp"
#include "runner.hpp"

namespace chromalg {

using detail::from_checks;
using detail::ipow;
using detail::run_check;
using detail::Verdict;
using detail::verdict;

Report run_spaces(const RunConfig& cfg) {
  validate(cfg, {"chern", "all"});
  Report r{"spaces", cfg, {}};
  const int p = cfg.p, n = cfg.n;
  const int q = static_cast<int>(ipow(p, n));
  const int xdeg = cfg.xdeg ? cfg.xdeg : default_xdeg(p, n);
  const int N = xdeg + 1;
  const int uprec = cfg.uprec ? cfg.uprec : default_uprec(n);
  r.config.xdeg = xdeg;
  r.config.uprec = uprec;
  RunConfig tc = cfg;
  tc.uprec = uprec;

  TowerPtr T;
  std::optional<ChernData> d;
  run_check(r, "spaces.chern.data", "spaces:chern-data", [&] {
    T = base_tower(tc);
    d = chern_data(solve_phi(e_law(n, T, N), honda_fgl(n, T, N), n, {N, uprec}));
    return Verdict{};
  });
  if (!d) return r;
  const TowerPtr& L = d->iso.tower;
  std::optional<LensMap> theta;
  run_check(r, "spaces.chern.theta_generators", "spaces:theta-generators", [&] {
    theta = chern_theta(*d);
    const std::size_t yi = lens_index(p, n, true, 0);
    for (int a = 0; a < q; ++a)
      if (!(theta->m[1][static_cast<std::size_t>(a)] == d->theta_x.coeff({a}))) return Verdict{false, "x"};
    for (std::size_t l = 0; l < theta->m.size(); ++l)
      if (!(theta->m[yi][l] == (l == yi ? L->one() : L->zero()))) return Verdict{false, "y"};
    // Phi(Theta(x_E)) is the K-side coordinate.
    TSeries phi_q(x_table(q), L);
    for (const auto& [m, c] : d->iso.phi.terms())
      if (m.e[0] < q) phi_q += TSeries::monomial(x_table(q), L, m, c);
    return verdict(phi_q.substitute({d->theta_x}) == TSeries::var(x_table(q), L, 0), "Phi(Theta(x)) != x");
  });
  if (!theta) return r;
  run_check(r, "spaces.chern.ring_map", "spaces:theta-ring-map", [&] { return from_checks(check_ring_map(*theta)); });
  run_check(r, "spaces.chern.bhat_triangular", "spaces:bhat", [&] {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& b = d->bhat[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        const std::string at = "(" + std::to_string(j) + "," + std::to_string(i) + ")";
        if (j > i && !b.is_zero()) return Verdict{false, "nonzero below diagonal at " + at};
        if (j == i && !(b == d->phi0.pow(ipow(p, i)).inv())) return Verdict{false, "diagonal at " + at};
        if (j == i && !d->bhat_w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].is_one())
          return Verdict{false, "w-normalized diagonal at " + at};
      }
    invert(d->bhat);
    return Verdict{};
  });
  auto H = composite_hopf(p, n, L);
  run_check(r, "spaces.chern.bhat_iso", "spaces:bhat-iso",
            [&] { return from_checks(check_hopf_map(bhat_iso(d->bhat, H.lambda))); });
  run_check(r, "spaces.chern.q_transport", "spaces:milnor-transport",
            [&] { return from_checks(q_transport_check(*theta, d->bhat, H)); });
  run_check(r, "spaces.chern.bhat_invariance", "spaces:bhat-invariance", [&] {
    const TSeries X = TSeries::var(x_table(N), L, 0);
    const auto& Fq = *T->field();
    auto h = HondaEndo::make(d->iso.target, n, {L->from_fq(detail::subfield_gen(Fq, n))}, N);
    std::vector<ActionWitness> ws{{WitnessKind::Gn, X, 0},
                                  {WitnessKind::Gn, h.series, 0},
                                  {WitnessKind::Gn, X, 1},
                                  {WitnessKind::GnPlus1, formal_sum(d->iso.source, {X, X}), 0}};
    return from_checks(bhat_invariance_check(*d, ws));
  });
  run_check(r, "spaces.proj.coaction", "spaces:projective", [&] {
    const int Np = static_cast<int>(ipow(p, n + 1));
    auto HT = composite_hopf(p, n, T);
    return from_checks(proj_checks(proj_model(Flavor::E, e_law(n, T, Np), n), HT));
  });
  return r;
}

std::vector<Report> run_all(const RunConfig& cfg) {
  RunConfig c = cfg;
  std::vector<Report> out;
  c.selection = "check";
  out.push_back(run_fgl(c));
  out.push_back(run_iso(c));
  c.selection = "all";
  out.push_back(run_hopf(c));
  out.push_back(run_comod(c));
  c.selection = "chern";
  out.push_back(run_spaces(c));
  return out;
}

std::string coaction_tables(const RunConfig& cfg) {
  validate(cfg, {});
  const int p = cfg.p, n = cfg.n;
  std::ostringstream os;
  auto Tp = Tower::finite(FiniteField::make(p, 1));
  auto H = composite_hopf(p, n, Tp);
  LensModel L{Flavor::K, p, n};
  const auto names = L.names();
  auto row = [&](const std::string& label, const CoactionVec& v, const std::vector<std::string>& basis) {
    os << label << " =";
    bool first = true;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_zero()) continue;
      os << (first ? " " : " + ") << "(" << v[k].to_string() << ") (x) " << basis[k];
      first = false;
    }
    os << "\n";
  };
  os << "lens model p=" << p << " n=" << n << " over " << H.full.name() << "\n";
  row("rho(x)", coaction_x(L, H), names);
  row("rho(y)", coaction_y(L, H), names);
  const int Np = static_cast<int>(ipow(p, n + 1));
  auto T = Tower::laurent(FiniteField::make(p, 1), cfg.uprec ? cfg.uprec : default_uprec(n));
  auto HT = composite_hopf(p, n, T);
  ProjModel M = proj_model(Flavor::E, e_law(n, T, Np), n);
  std::vector<std::string> xs;
  for (int a = 0; a < Np; ++a) xs.push_back(a == 0 ? "1" : a == 1 ? "x" : "x^" + std::to_string(a));
  os << "projective model p=" << p << " n=" << n << " mod x^" << Np << " over " << HT.full.name() << "\n";
  row("rho(x)", coaction_x(M, HT), xs);
  return os.str();
}

}  // namespace chromalg
