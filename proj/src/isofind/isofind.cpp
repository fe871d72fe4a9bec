#include "chromalg/isofind.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>

#include "chromalg/error.hpp"

namespace chromalg {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool z_free(const TowerElem& x) {
  const auto& c = x.coords();
  for (std::size_t k = 1; k < c.size(); ++k)
    if (!c[k].empty() || c[k].prec < LSeries::kExact) return false;
  return true;
}

TSeries lift_series(const TSeries& s, const TowerPtr& T) {
  if (s.ctx().get() == T.get()) return s;
  return s.map_coeffs<TowerElem>(T, [&](const TowerElem& c) { return T->lift(c); });
}

FGL lift_law(const FGL& F, const TowerPtr& T) {
  FGL out = F;
  out.F = lift_series(F.F, T);
  return out;
}

std::string lowest_term(const TSeries& s) {
  if (s.is_zero()) return "";
  return TSeries::from_terms(s.vars(), s.ctx(), {s.terms().front()}).to_string();
}

// Phi(F(X,Y)) - H(Phi(X), Phi(Y)); everything over one tower.
TSeries residual(const FGL& F, const FGL& H, const TSeries& phi) {
  auto V2 = F.F.vars();
  const auto& T = F.tower();
  TSeries lhs = phi.substitute({F.F});
  TSeries pX = phi.substitute({TSeries::var(V2, T, 0)}), pY = phi.substitute({TSeries::var(V2, T, 1)});
  return lhs - H.F.substitute({pX, pY});
}

std::optional<FiniteField::Elem> fq_root(const FiniteField& F, FiniteField::Elem a, int k) {
  if (a == 0) return FiniteField::Elem{0};
  const long long q1 = F.order() - 1;
  const long long L = F.discrete_log(a);
  const long long g = std::gcd(static_cast<long long>(k), q1);
  if (L % g != 0) return std::nullopt;
  const long long m = q1 / g;
  long long x = 0;
  if (m > 1) {
    const long long kk = (k / g) % m;
    x = ((L / g) % m) * mod_inverse(kk, m) % m;
  }
  return F.pow(F.primitive(), x);
}

// (1 + h)^(1/k) for h of positive valuation, by the binomial series.
TowerElem unit_root(const TowerElem& w, int k) {
  const Tower& T = *w.tower();
  TowerElem h = w - T.one();
  if (h.is_zero()) return T.one();
  const int p = T.p();
  const PLocalRational r = PLocalRational(1) / PLocalRational(k);
  PLocalRational b(1);
  TowerElem acc = T.one(), hp = T.one();
  for (int i = 1; i <= T.cap() + 1; ++i) {
    b = b * (r - PLocalRational(i - 1)) / PLocalRational(i);
    hp = hp * h;
    if (hp.is_zero()) break;
    acc += hp * T.from_int(b.reduce_mod_p(p));
  }
  return acc;
}

struct Root {
  TowerPtr tower;
  TowerElem root;
  int gen = -1;
  std::string step;
};

// A root of z^k = a, found in the tower when possible.
Root kummer_root(const TowerPtr& T, int k, const TowerElem& a) {
  if (z_free(a) && !a.is_zero()) {
    const LSeries& s = a.coords()[0];
    const int v = s.val;
    const auto lead = s.coef.front();
    if (v % k == 0) {
      if (auto r0 = fq_root(*T->field(), lead, k)) {
        TowerElem w = a * T->t_pow(-v, T->field()->inv(lead));
        return {T, T->t_pow(v / k, *r0) * unit_root(w, k), -1, ""};
      }
    }
    const bool bare = T->is_laurent() && T->e() == 1 && T->eps() == 1 && T->num_gens() == 0;
    if (bare && v == 1) {
      auto adj = T->adjoin_kummer(k, T->t_pow(1, lead));
      Root r = kummer_root(adj.tower, k, adj.tower->lift(a));
      const auto& Fq = *T->field();
      r.step = "u = " + (lead == 1 ? std::string() : Fq.to_string(Fq.inv(lead)) + "*") + "t^" + std::to_string(k);
      return r;
    }
  }
  auto adj = T->adjoin_kummer(k, a);
  return {adj.tower, adj.root, adj.tower->num_gens() - 1,
          "z" + std::to_string(adj.tower->num_gens()) + "^" + std::to_string(k) + " = " + T->format(a)};
}

void check_bounds(const TowerElem& x, int pole_u, const std::string& what) {
  if (x.is_zero()) return;
  const Tower& T = *x.tower();
  if (!T.is_laurent()) return;
  if (x.valuation() < -pole_u * T.e())
    throw Error(ErrorCode::PrecisionExhausted, what + " has a pole beyond the bound u^-" + std::to_string(pole_u));
  if (x.precision() < LSeries::kExact && x.precision() <= 0)
    throw Error(ErrorCode::PrecisionExhausted, what + " is only known mod t^" + std::to_string(x.precision()));
}

TowerPtr rebase_uprec(const TowerPtr& T, int uprec) {
  if (!T->is_laurent() || T->num_gens() != 0)
    throw Error(ErrorCode::ConfigError, "u-precision can only be reset on a bare Laurent tower");
  return Tower::make(T->field(), true, T->e(), uprec, T->eps(), {});
}

TowerElem move_coords(const TowerElem& x, const TowerPtr& T) {
  if (x.tower() == T.get()) return x;
  if (x.tower()->is_laurent() && x.tower()->num_gens() == 0 && x.tower()->e() == T->e()) return T->from_coords(x.coords());
  return T->lift(x);
}

}  // namespace

TSeries lazard_c(int d, int p, const VarTablePtr& vars, const TowerPtr& tower) {
  using boost::multiprecision::cpp_int;
  std::vector<TSeries::Term> terms;
  cpp_int b = 1;
  for (int k = 1; k < d; ++k) {
    b = b * (d - k + 1) / k;
    cpp_int c = (b / p) % p;
    if (c == 0) continue;
    Monomial m{};
    m.e[0] = static_cast<std::uint8_t>(k);
    m.e[1] = static_cast<std::uint8_t>(d - k);
    if (!vars->admissible(m)) continue;
    terms.push_back({m, tower->from_int(c.convert_to<long long>())});
  }
  return TSeries::from_terms(vars, tower, std::move(terms));
}

TSeries formal_negation(const FGL& F, const VarTablePtr& vars) {
  const auto& T = F.tower();
  TSeries X = TSeries::var(vars, T, 0);
  TSeries i = -X;
  for (int it = 0; it <= vars->vars()[0].trunc + 1; ++it) {
    TSeries q = F.F.substitute({X, i}) - X - i;
    TSeries next = -X - q;
    if (next == i) break;
    i = std::move(next);
  }
  return i;
}

std::vector<TowerElem> ptypical_coeffs(const FGL& H0, const TSeries& s) {
  const auto& T = s.ctx();
  FGL H = lift_law(H0, T);
  auto V = s.vars();
  const int N = V->vars()[0].trunc;
  const int p = H.p;
  TSeries neg = formal_negation(H, V);
  TSeries rest = s;
  std::vector<TowerElem> out;
  for (long long d = 1; d < N; d *= p) {
    if (!rest.is_zero()) {
      const int low = rest.terms().front().first.e[0];
      if (low < d)
        throw Error(ErrorCode::UnsupportedExtension, "series has a non-p-typical term at degree " + std::to_string(low));
    }
    TowerElem c = rest.coeff({static_cast<int>(d)});
    out.push_back(c);
    if (!c.is_zero()) {
      TSeries m = TSeries::var(V, T, 0, static_cast<int>(d)).scale(c);
      rest = H.F.substitute({rest, neg.substitute({m})});
    }
  }
  if (!rest.is_zero())
    throw Error(ErrorCode::UnsupportedExtension,
                "series has a non-p-typical term at degree " + std::to_string(rest.terms().front().first.e[0]));
  return out;
}

bool is_honda_automorphism(const FGL& H0, int n, const TSeries& s) {
  const auto& T = s.ctx();
  FGL H = lift_law(H0, T);
  std::vector<TowerElem> a;
  try {
    a = ptypical_coeffs(H, s);
  } catch (const Error&) {
    return false;
  }
  if (a.empty() || !(a[0].pow(ipow(H.p, n) - 1) == T->one())) return false;
  const int N = s.vars()->vars()[0].trunc;
  for (std::size_t j = 0; j < a.size() && ipow(H.p, n + static_cast<int>(j)) < N; ++j)
    if (!(a[j].pow(ipow(H.p, n)) == a[j])) return false;
  auto V2 = H.F.vars();
  TSeries lhs = s.substitute({H.F});
  TSeries sX = s.substitute({TSeries::var(V2, T, 0)}), sY = s.substitute({TSeries::var(V2, T, 1)});
  return lhs == H.F.substitute({sX, sY});
}

FGLIso solve_phi(const FGL& F0, const FGL& H0, int n, SolveOptions o) {
  const int p = F0.p;
  if (H0.p != p) throw Error(ErrorCode::BaseMismatch, "laws over different primes");
  if (n < 1) throw Error(ErrorCode::HeightTooLow, "height must be at least 1");
  const int N = o.N > 0 ? o.N : std::min(F0.N, H0.N);
  if (N > F0.N || N > H0.N) throw Error(ErrorCode::PrecisionExhausted, "laws are truncated below the requested degree");
  const int pole = o.pole_bound >= 0 ? o.pole_bound : static_cast<int>(2 * (ipow(p, n) - 1));

  TowerPtr T = F0.tower();
  if (o.uprec > 0 && T->is_laurent() && T->uprec() != o.uprec) T = rebase_uprec(T, o.uprec);
  auto V2 = xy_table(N);
  auto V1 = x_table(N);
  auto restrict = [&](const FGL& G) {
    FGL out = G;
    out.N = N;
    std::vector<TSeries::Term> terms;
    for (const auto& [m, c] : G.F.terms())
      if (V2->admissible(m)) terms.push_back({m, move_coords(c, T)});
    out.F = TSeries::from_terms(V2, T, std::move(terms));
    return out;
  };
  FGL F = restrict(F0), H = restrict(H0);

  const long long q = ipow(p, n);
  {
    TSeries ps = p_series(H);
    if (!(ps == TSeries::var(V1, T, 0, static_cast<int>(q))))
      throw Error(ErrorCode::UnsupportedExtension, "target is not the height " + std::to_string(n) + " Honda law");
  }
  if (!strict_height_at_least(F, n))
    throw Error(ErrorCode::UnsupportedExtension, "source is not X + Y below degree " + std::to_string(q));

  FGLIso iso;
  iso.n = n;
  iso.N = N;

  TowerElem c0 = T->one();
  int c0_gen = -1;
  if (q < N) {
    TSeries Fq = F.F.homogeneous_part(static_cast<int>(q));
    TSeries Cq = lazard_c(static_cast<int>(q), p, V2, T);
    TowerElem a = -Fq.coeff({static_cast<int>(q / p), static_cast<int>(q - q / p)});
    if (!(Fq + Cq.scale(a)).is_zero())
      throw Error(ErrorCode::UnsupportedExtension, "degree " + std::to_string(q) + " part of the source is not a multiple of C");
    if (a.is_zero()) throw Error(ErrorCode::UnsupportedExtension, "source has height above " + std::to_string(n));
    Root r = kummer_root(T, static_cast<int>(q - 1), a);
    T = r.tower;
    c0 = r.root;
    c0_gen = r.gen;
    iso.steps.push_back(r.step.empty() ? "c_0 = " + T->format(c0) : r.step + ", c_0 = " + T->format(c0));
  } else {
    iso.free_indices.push_back(0);
  }
  iso.c.push_back(c0);
  iso.c_gen.push_back(c0_gen);
  TSeries phi = TSeries::var(V1, T, 0).scale(c0);

  for (int j = 1; ipow(p, j) < N; ++j) {
    const long long pj = ipow(p, j);
    const long long d = q * pj;
    if (d >= N) {
      iso.c.push_back(T->zero());
      iso.c_gen.push_back(-1);
      iso.free_indices.push_back(j);
      continue;
    }
    FGL Fl = lift_law(F, T), Hl = lift_law(H, T);
    TSeries R = residual(Fl, Hl, phi);
    TSeries low = R.truncate_total(static_cast<int>(d));
    if (!low.is_zero())
      throw Error(ErrorCode::UnsupportedExtension, "obstruction outside the supported shapes: " + lowest_term(low));
    TSeries Rd = R.homogeneous_part(static_cast<int>(d));
    TSeries Cd = lazard_c(static_cast<int>(d), p, V2, T);
    TowerElem kappa = Rd.coeff({static_cast<int>(d / p), static_cast<int>(d - d / p)});
    if (!(Rd - Cd.scale(kappa)).is_zero())
      throw Error(ErrorCode::UnsupportedExtension, "degree " + std::to_string(d) + " obstruction is not a multiple of C");
    TowerElem lambda = c0.pow(pj);
    TowerElem cj = T->zero();
    int gen = -1;
    if (kappa.is_zero()) {
      iso.steps.push_back("c_" + std::to_string(j) + " = 0");
    } else {
      TowerElem rule = -(kappa * lambda.pow(q).inv());
      check_bounds(rule, pole, "additive constant for c_" + std::to_string(j));
      auto adj = T->adjoin_additive(static_cast<int>(q), rule);
      iso.steps.push_back("z" + std::to_string(adj.tower->num_gens()) + "^" + std::to_string(q) + " = z" +
                          std::to_string(adj.tower->num_gens()) + " + " + T->format(rule));
      T = adj.tower;
      gen = T->num_gens() - 1;
      cj = T->lift(lambda) * adj.root;
      check_bounds(cj, pole, "c_" + std::to_string(j));
      phi = lift_series(phi, T);
      c0 = T->lift(c0);
      phi = formal_sum(lift_law(H, T), {phi, TSeries::var(V1, T, 0, static_cast<int>(pj)).scale(cj)});
    }
    iso.c.push_back(cj);
    iso.c_gen.push_back(gen);
  }

  for (auto& c : iso.c) c = T->lift(c);
  iso.tower = T;
  iso.source = lift_law(F, T);
  iso.target = lift_law(H, T);
  iso.phi = lift_series(phi, T);
  iso.inverse = iso.phi.reverse();
  return iso;
}

FGLIso make_iso(const FGL& F, const FGL& H, int n, TSeries phi) {
  FGLIso iso;
  iso.n = n;
  iso.N = phi.vars()->vars()[0].trunc;
  iso.tower = phi.ctx();
  iso.source = lift_law(F, iso.tower);
  iso.target = lift_law(H, iso.tower);
  iso.phi = std::move(phi);
  iso.inverse = iso.phi.reverse();
  iso.c = ptypical_coeffs(iso.target, iso.phi);
  // Same bookkeeping as solve_phi: c_0 may be a Kummer root, c_j = c_0^(p^j) z.
  const TowerPtr& T = iso.tower;
  const long long q = ipow(F.p, n);
  iso.c_gen.assign(iso.c.size(), -1);
  for (std::size_t j = 0; j < iso.c.size(); ++j) {
    if (q * ipow(F.p, static_cast<int>(j)) >= iso.N) {
      iso.free_indices.push_back(static_cast<int>(j));
      continue;
    }
    if (iso.c[j].is_zero()) continue;
    const TowerElem z = j == 0 ? iso.c[0] : iso.c[j] * iso.c[0].pow(ipow(F.p, static_cast<int>(j))).inv();
    for (int g = 0; g < T->num_gens(); ++g)
      if (z == T->gen(g)) iso.c_gen[j] = g;
  }
  return iso;
}

IsoReport verify_iso(const FGLIso& iso) {
  IsoReport r;
  TSeries R = residual(iso.source, iso.target, iso.phi);
  r.ok = R.is_zero();
  if (!r.ok) {
    r.degree = R.vars()->degree(R.terms().front().first);
    r.discrepancy = lowest_term(R);
  }
  TSeries X = TSeries::var(iso.phi.vars(), iso.tower, 0);
  r.inverse_ok = iso.phi.substitute({iso.inverse}) == X && iso.inverse.substitute({iso.phi}) == X;
  return r;
}

TSeries apply_to_coeffs(const TowerAutomorphism& g, const TSeries& s) {
  return s.map_coeffs<TowerElem>(g.tower(), [&](const TowerElem& c) { return g.apply(c); });
}

EquivarianceReport check_equivariance(const FGLIso& iso, const ActionWitness& w) {
  const TowerPtr& T = iso.tower;
  const FiniteField& Fq = *T->field();
  const int p = iso.source.p;
  EquivarianceReport rep;
  TSeries s = lift_series(w.series, T).with_vars(iso.phi.vars());
  if (s.coeff({1}).is_zero()) throw Error(ErrorCode::InvalidWitness, "witness has no linear term");

  // Homomorphy of the witness itself.
  const FGL& law = w.kind == WitnessKind::GnPlus1 ? iso.source : iso.target;
  FGL twisted = law;
  twisted.F = law.F.map_coeffs<TowerElem>(T, [&](const TowerElem& c) { return T->frobenius_coeffs(c, w.frob); });
  {
    auto V2 = law.F.vars();
    TSeries lhs = s.substitute({law.F});
    TSeries sX = s.substitute({TSeries::var(V2, T, 0)}), sY = s.substitute({TSeries::var(V2, T, 1)});
    TSeries diff = lhs - twisted.F.substitute({sX, sY});
    if (!diff.is_zero()) throw Error(ErrorCode::InvalidWitness, "witness is not a homomorphism: " + lowest_term(diff));
  }

  TSeries target = w.kind == WitnessKind::Gn ? s.substitute({iso.phi}) : iso.phi.substitute({s.reverse()});
  std::vector<TowerElem> ct = ptypical_coeffs(iso.target, target);

  int bound = iso.N;
  for (int j : iso.free_indices) bound = std::min<long long>(bound, ipow(p, j));
  rep.compared_below = bound;

  // t -> alpha t must fix u = eps t^e.
  const auto eps = T->eps();
  const auto ratio = Fq.div(eps, Fq.frobenius(eps, w.frob));
  std::vector<FiniteField::Elem> alphas;
  if (!T->is_laurent()) {
    alphas.push_back(1);
  } else {
    for (std::uint32_t a = 1; a < Fq.order(); ++a)
      if (Fq.pow(a, T->e()) == ratio) alphas.push_back(a);
  }

  auto truncated_diff = [&](const TSeries& a, const TSeries& b) {
    TSeries d = a - b;
    std::vector<TSeries::Term> keep;
    for (const auto& t : d.terms())
      if (t.first.e[0] < bound) keep.push_back(t);
    return TSeries::from_terms(d.vars(), d.ctx(), std::move(keep));
  };

  std::string last = "no uniformizer scaling fixes u";
  for (auto alpha : alphas) {
    std::vector<TowerElem> images;
    for (int g = 0; g < T->num_gens(); ++g) images.push_back(T->gen(g));
    bool fail = false;
    for (std::size_t j = 0; j < iso.c.size() && !fail; ++j) {
      const int g = iso.c_gen[j];
      if (g < 0) continue;
      TowerAutomorphism partial(T, w.frob, alpha, images);
      TowerElem scale = j == 0 ? T->one() : partial.apply(iso.c[0]).pow(ipow(p, static_cast<int>(j)));
      if (ct.size() <= j) {
        fail = true;
        last = "prediction lacks coefficient " + std::to_string(j);
        break;
      }
      images[static_cast<std::size_t>(g)] = ct[j] * scale.inv();
    }
    if (fail) continue;
    TowerAutomorphism g(T, w.frob, alpha, images);
    if (!g.fixes_u()) {
      last = "derived action moves u";
      continue;
    }
    if (!g.preserves_rules()) {
      last = "derived action does not preserve the tower relations";
      continue;
    }
    TSeries diff = truncated_diff(apply_to_coeffs(g, iso.phi), target);
    if (!diff.is_zero()) {
      last = "Phi^g differs at " + lowest_term(diff);
      continue;
    }
    rep.ok = true;
    rep.detail = "alpha = " + Fq.to_string(alpha);
    rep.action = g;
    return rep;
  }
  rep.detail = last;
  return rep;
}

}  // namespace chromalg
