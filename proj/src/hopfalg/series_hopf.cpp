#include "chromalg/error.hpp"
#include "chromalg/hopfalg.hpp"

namespace chromalg {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<TSeries> vars_of(const VarTablePtr& V, const TowerPtr& T, std::size_t offset, const VarTablePtr& target) {
  std::vector<TSeries> out;
  for (std::size_t i = 0; i < V->size(); ++i) out.push_back(TSeries::var(target, T, offset + i));
  return out;
}

}  // namespace

SeriesHopf::SeriesHopf(std::string name, TowerPtr tower, VarTablePtr vars)
    : name_(std::move(name)), T_(std::move(tower)), V_(std::move(vars)) {
  V2_ = VarTable::tensor(*V_, *V_, "_1", "_2");
  V3_ = VarTable::tensor(*V2_, *V_, "", "_3");
}

TSeries SeriesHopf::left(const TSeries& a) const { return a.substitute(vars_of(V_, T_, 0, V2_)); }
TSeries SeriesHopf::right(const TSeries& a) const { return a.substitute(vars_of(V_, T_, V_->size(), V2_)); }
TSeries SeriesHopf::factor3(const TSeries& a, int k) const {
  return a.substitute(vars_of(V_, T_, static_cast<std::size_t>(k) * V_->size(), V3_));
}

std::vector<std::pair<std::string, TSeries>> SeriesHopf::samples() const {
  std::vector<std::pair<std::string, TSeries>> out;
  for (std::size_t i = 0; i < V_->size(); ++i) out.push_back({(*V_)[i].name, gen(i)});
  return out;
}

std::vector<TowerElem> SeriesHopf::base_samples() const {
  return {T_->one(), T_->from_fq(T_->field()->primitive())};
}

TowerElem SeriesHopf::eps(const TSeries& a) const {
  std::vector<TSeries> im;
  for (const auto& e : eps_gen) im.push_back(TSeries::constant(V_, T_, e));
  return a.substitute(im).constant_term();
}

TSeries SeriesHopf::eps_left(const TSeries& x) const {
  std::vector<TSeries> im;
  for (const auto& e : eps_gen) im.push_back(TSeries::constant(V_, T_, e));
  for (std::size_t i = 0; i < V_->size(); ++i) im.push_back(gen(i));
  return x.substitute(im);
}

TSeries SeriesHopf::eps_right(const TSeries& x) const {
  std::vector<TSeries> im;
  for (std::size_t i = 0; i < V_->size(); ++i) im.push_back(gen(i));
  for (const auto& e : eps_gen) im.push_back(TSeries::constant(V_, T_, e));
  return x.substitute(im);
}

TSeries SeriesHopf::psi_left(const TSeries& x) const {
  auto lift12 = vars_of(V2_, T_, 0, V3_);
  std::vector<TSeries> im;
  for (const auto& p : psi_gen) im.push_back(p.substitute(lift12));
  for (std::size_t i = 0; i < V_->size(); ++i) im.push_back(factor3(gen(i), 2));
  return x.substitute(im);
}

TSeries SeriesHopf::psi_right(const TSeries& x) const {
  auto lift23 = vars_of(V2_, T_, V_->size(), V3_);
  std::vector<TSeries> im;
  for (std::size_t i = 0; i < V_->size(); ++i) im.push_back(factor3(gen(i), 0));
  for (const auto& p : psi_gen) im.push_back(p.substitute(lift23));
  return x.substitute(im);
}

TSeries SeriesHopf::mu_chi_left(const TSeries& x) const {
  std::vector<TSeries> im = chi_gen;
  for (std::size_t i = 0; i < V_->size(); ++i) im.push_back(gen(i));
  return x.substitute(im);
}

TSeries SeriesHopf::mu_chi_right(const TSeries& x) const {
  std::vector<TSeries> im;
  for (std::size_t i = 0; i < V_->size(); ++i) im.push_back(gen(i));
  for (const auto& c : chi_gen) im.push_back(c);
  return x.substitute(im);
}

namespace {

VarSpec b_spec(int p, int i) { return VarSpec{"b" + std::to_string(i), -1, Parity::Odd, 2, static_cast<int>(2 * ipow(p, i) - 1)}; }
VarSpec t_spec(int p, int i) {
  const int d = static_cast<int>(2 * (ipow(p, i) - 1));
  return VarSpec{"t" + std::to_string(i), d, Parity::Even, 0, d};
}

// psi(t_m) and chi(t_m) for m = 1..k, with t_i given as generators of H.
void fill_t_structure(SeriesHopf& H, int p, int k, std::size_t offset) {
  auto t = [&](int i) { return i == 0 ? H.one() : H.gen(offset + static_cast<std::size_t>(i - 1)); };
  std::vector<TSeries> chi_t{H.one()};
  for (int m = 1; m <= k; ++m) {
    TSeries ps = H.left(t(m)) + H.right(t(m));
    for (int i = 1; i < m; ++i) ps += H.left(t(i)) * H.right(t(m - i)).pow(static_cast<int>(ipow(p, i)));
    H.psi_gen[offset + static_cast<std::size_t>(m - 1)] = ps;
    TSeries c(H.vars(), H.tower());
    for (int i = 1; i <= m; ++i) c -= t(i) * chi_t[static_cast<std::size_t>(m - i)].pow(static_cast<int>(ipow(p, i)));
    chi_t.push_back(c);
    H.chi_gen[offset + static_cast<std::size_t>(m - 1)] = c;
  }
}

void size_maps(SeriesHopf& H) {
  H.psi_gen.assign(H.num_gens(), TSeries(H.vars2(), H.tower()));
  H.chi_gen.assign(H.num_gens(), TSeries(H.vars(), H.tower()));
  H.eps_gen.assign(H.num_gens(), H.tower()->zero());
}

}  // namespace

SeriesHopf exterior_hopf(int p, int n, const TowerPtr& tower) {
  std::vector<VarSpec> vs;
  for (int i = 0; i < n; ++i) vs.push_back(b_spec(p, i));
  SeriesHopf H("Lambda(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")", tower, VarTable::make(vs));
  size_maps(H);
  for (std::size_t i = 0; i < H.num_gens(); ++i) {
    H.psi_gen[i] = H.left(H.gen(i)) + H.right(H.gen(i));
    H.chi_gen[i] = -H.gen(i);
  }
  return H;
}

SeriesHopf c_hopf(int p, int k, const TowerPtr& tower) {
  std::vector<VarSpec> vs;
  for (int i = 1; i <= k; ++i) vs.push_back(t_spec(p, i));
  SeriesHopf H("C(p=" + std::to_string(p) + ",t<=" + std::to_string(k) + ")", tower, VarTable::make(vs));
  size_maps(H);
  fill_t_structure(H, p, k, 0);
  return H;
}

TSeries CompositeHopf::t(int i) const { return i == 0 ? full.one() : full.gen(t_index(i)); }

TSeries composite_psi_b(const CompositeHopf& H, int i) {
  if (i < 0 || i >= H.n) throw Error(ErrorCode::IndexOutOfRange, "b index " + std::to_string(i) + " outside 0.." + std::to_string(H.n - 1));
  const SeriesHopf& A = H.full;
  TSeries out = A.right(H.b(i));
  for (int j = 0; j <= i; ++j) out += A.left(H.b(j)) * A.right(H.t(i - j)).pow(static_cast<int>(ipow(H.p, j)));
  return out;
}

CompositeHopf composite_hopf(int p, int n, const TowerPtr& tower, int tbound) {
  if (n < 1) throw Error(ErrorCode::HeightTooLow, "height must be at least 1");
  if (tbound <= 0) tbound = n;
  if (tbound < n - 1) throw Error(ErrorCode::ConfigError, "t bound must reach n-1");
  std::vector<VarSpec> vs;
  for (int i = 1; i <= tbound; ++i) vs.push_back(t_spec(p, i));
  for (int i = 0; i < n; ++i) vs.push_back(b_spec(p, i));
  CompositeHopf H{p, n, tbound,
                  SeriesHopf("A(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")", tower, VarTable::make(vs)),
                  c_hopf(p, tbound, tower), exterior_hopf(p, n, tower)};
  SeriesHopf& A = H.full;
  size_maps(A);
  fill_t_structure(A, p, tbound, 0);
  for (int i = 0; i < n; ++i) {
    A.psi_gen[H.b_index(i)] = composite_psi_b(H, i);
    TSeries c = -H.b(i);
    for (int j = 0; j < i; ++j) c -= A.chi_gen[H.b_index(j)] * H.t(i - j).pow(static_cast<int>(ipow(p, j)));
    A.chi_gen[H.b_index(i)] = c;
  }
  return H;
}

namespace {

struct Expansion {
  std::vector<TSeries> right_b;   // coefficient of X^(p^i) in 1 (x) b(X)
  std::vector<TSeries> left_b_t;  // coefficient of X^(p^i) in (b (x) 1)(t(X))
};

Expansion expand_coaction(const CompositeHopf& H, const FGL& F) {
  const int p = H.p, n = H.n;
  if (!strict_height_at_least(F, n))
    throw Error(ErrorCode::HeightTooLow, "law is not X + Y below degree " + std::to_string(ipow(p, n)));
  const SeriesHopf& A = H.full;
  const TowerPtr& T = A.tower();
  const int q = static_cast<int>(ipow(p, n));
  std::vector<VarSpec> ws{VarSpec{"X", 0, Parity::Even, q, 0}};
  for (const auto& v : A.vars2()->vars()) ws.push_back(v);
  auto W = VarTable::make(ws);
  auto into_w = vars_of(A.vars2(), T, 1, W);
  TSeries X = TSeries::var(W, T, 0);

  // F below degree p^n; the rest cannot contribute mod X^(p^n).
  TSeries Flow = F.F.truncate_total(q).map_coeffs<TowerElem>(T, [&](const TowerElem& c) { return T->lift(c); });
  TSeries tX = X;
  for (int i = 1; i < n; ++i) {
    TSeries term = A.right(H.t(i)).substitute(into_w) * X.pow(static_cast<int>(ipow(p, i)));
    tX = Flow.substitute({tX, term});
  }
  TSeries bR(W, T), bLt(W, T);
  for (int i = 0; i < n; ++i) {
    bR += A.right(H.b(i)).substitute(into_w) * X.pow(static_cast<int>(ipow(p, i)));
    bLt += A.left(H.b(i)).substitute(into_w) * tX.pow(static_cast<int>(ipow(p, i)));
  }
  auto coefficients = [&](const TSeries& s) {
    std::vector<std::vector<TSeries::Term>> by(static_cast<std::size_t>(n));
    for (const auto& [m, c] : s.terms()) {
      const int e = m.e[0];
      int k = 0;
      while (ipow(p, k) < e) ++k;
      if (ipow(p, k) != e || k >= n)
        throw Error(ErrorCode::RelationNotPreserved, "term at X^" + std::to_string(e) + " survives linearization");
      Monomial r{};
      for (std::size_t v = 1; v < W->size(); ++v) r.e[v - 1] = m.e[v];
      by[static_cast<std::size_t>(k)].push_back({r, c});
    }
    std::vector<TSeries> out;
    for (auto& terms : by) out.push_back(TSeries::from_terms(A.vars2(), T, std::move(terms)));
    return out;
  };
  return {coefficients(bR), coefficients(bLt)};
}

}  // namespace

std::vector<TSeries> derive_psi_from_coaction(const CompositeHopf& H, const FGL& F) {
  Expansion e = expand_coaction(H, F);
  std::vector<TSeries> out;
  for (int i = 0; i < H.n; ++i) out.push_back(e.right_b[static_cast<std::size_t>(i)] + e.left_b_t[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<TSeries> lambda_c_coaction(const CompositeHopf& H) {
  const SeriesHopf& A = H.full;
  std::vector<TSeries> out;
  for (int i = 0; i < H.n; ++i) {
    TSeries s(A.vars2(), A.tower());
    for (int j = 0; j <= i; ++j) s += A.left(H.b(j)) * A.right(H.t(i - j)).pow(static_cast<int>(ipow(H.p, j)));
    out.push_back(s);
  }
  return out;
}

std::vector<TSeries> lambda_c_coaction_from_series(const CompositeHopf& H, const FGL& F) {
  return expand_coaction(H, F).left_b_t;
}

std::vector<std::vector<TowerElem>> lambda_action(int p, int n, const TSeries& tg) {
  const int q = static_cast<int>(ipow(p, n));
  const TowerPtr& T = tg.ctx();
  auto V = x_table(q);
  TSeries t = TSeries::from_terms(V, T, tg.terms());
  if (t.coeff({1}).is_zero()) throw Error(ErrorCode::InvalidWitness, "t(g) has no linear term");
  TSeries inv = t.reverse();
  for (const auto& [m, c] : inv.terms()) {
    int k = 0;
    while (ipow(p, k) < m.e[0]) ++k;
    if (ipow(p, k) != m.e[0]) throw Error(ErrorCode::InvalidWitness, "t(g) is not additive below X^" + std::to_string(q));
  }
  std::vector<std::vector<TowerElem>> M(static_cast<std::size_t>(n), std::vector<TowerElem>(static_cast<std::size_t>(n), T->zero()));
  for (int j = 0; j < n; ++j) {
    TSeries pw = inv.pow(static_cast<int>(ipow(p, j)));
    for (int i = 0; i < n; ++i) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pw.coeff({static_cast<int>(ipow(p, i))});
  }
  return M;
}

TSeries HopfMap::tensor2(const TSeries& x) const {
  std::vector<TSeries> im;
  for (const auto& a : images) im.push_back(dst->left(a));
  for (const auto& a : images) im.push_back(dst->right(a));
  return x.substitute(im);
}

std::vector<AxiomCheck> check_hopf_map(const HopfMap& f) {
  AxiomCheck psi{"psi compatible", true, ""}, eps{"eps compatible", true, ""}, chi{"chi compatible", true, ""};
  for (std::size_t i = 0; i < f.src->num_gens(); ++i) {
    const TSeries x = f.src->gen(i);
    const std::string name = (*f.src->vars())[i].name;
    if (psi.ok && !(f.dst->psi(f(x)) == f.tensor2(f.src->psi(x)))) psi = {psi.axiom, false, name};
    if (eps.ok && !(f.dst->eps(f(x)) == f.src->eps(x))) eps = {eps.axiom, false, name};
    if (chi.ok && !(f.dst->chi(f(x)) == f(f.src->chi(x)))) chi = {chi.axiom, false, name};
  }
  return {psi, eps, chi};
}

HopfMap pi_c(const CompositeHopf& H) {
  HopfMap f{&H.full, &H.c_part, {}};
  for (int i = 1; i <= H.tbound; ++i) f.images.push_back(H.c_part.gen(static_cast<std::size_t>(i - 1)));
  for (int i = 0; i < H.n; ++i) f.images.push_back(TSeries(H.c_part.vars(), H.c_part.tower()));
  return f;
}

HopfMap pi_lambda(const CompositeHopf& H) {
  HopfMap f{&H.full, &H.lambda, {}};
  for (int i = 1; i <= H.tbound; ++i) f.images.push_back(TSeries(H.lambda.vars(), H.lambda.tower()));
  for (int i = 0; i < H.n; ++i) f.images.push_back(H.lambda.gen(static_cast<std::size_t>(i)));
  return f;
}

HopfMap i_c(const CompositeHopf& H) {
  HopfMap f{&H.c_part, &H.full, {}};
  for (int i = 1; i <= H.tbound; ++i) f.images.push_back(H.t(i));
  return f;
}

HopfMap i_lambda(const CompositeHopf& H) {
  HopfMap f{&H.lambda, &H.full, {}};
  for (int i = 0; i < H.n; ++i) f.images.push_back(H.b(i));
  return f;
}

std::vector<AxiomCheck> check_splitting(const CompositeHopf& H) {
  std::vector<AxiomCheck> out;
  auto add = [&](const std::string& prefix, std::vector<AxiomCheck> cs) {
    for (auto& c : cs) {
      c.axiom = prefix + ": " + c.axiom;
      out.push_back(std::move(c));
    }
  };
  add("pi_C", check_hopf_map(pi_c(H)));
  add("pi_Lambda", check_hopf_map(pi_lambda(H)));
  add("i_C", check_hopf_map(i_c(H)));
  auto identity_on = [&](const std::string& what, const SeriesHopf& S, const HopfMap& a, const HopfMap& b) {
    AxiomCheck c{what, true, ""};
    for (std::size_t i = 0; i < S.num_gens() && c.ok; ++i)
      if (!(a(b(S.gen(i))) == S.gen(i))) c = {what, false, (*S.vars())[i].name};
    out.push_back(c);
  };
  identity_on("pi_C i_C = id", H.c_part, pi_c(H), i_c(H));
  identity_on("pi_Lambda i_Lambda = id", H.lambda, pi_lambda(H), i_lambda(H));
  AxiomCheck c{"pi_Lambda i_C = eta eps", true, ""};
  for (int i = 1; i <= H.tbound && c.ok; ++i) {
    TSeries x = H.c_part.gen(static_cast<std::size_t>(i - 1));
    if (!(pi_lambda(H)(i_c(H)(x)) == H.lambda.eta_l(H.c_part.eps(x)))) c = {c.axiom, false, "t" + std::to_string(i)};
  }
  out.push_back(c);
  return out;
}

}  // namespace chromalg
