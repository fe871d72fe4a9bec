#include "chromalg/spaces.hpp"

#include "chromalg/error.hpp"

namespace chromalg {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int lens_q(int p, int n) { return static_cast<int>(ipow(p, n)); }

CoactionVec zeros(const SeriesHopf& H, std::size_t n) { return CoactionVec(n, TSeries(H.vars(), H.tower())); }

// Truncated product of two vectors in the basis x^a.
CoactionVec poly_mul(const SeriesHopf& H, const CoactionVec& a, const CoactionVec& b) {
  const std::size_t N = a.size();
  CoactionVec out = zeros(H, N);
  for (std::size_t i = 0; i < N; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < N; ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::string vec_name(int a) { return a == 0 ? "1" : a == 1 ? "x" : "x^" + std::to_string(a); }

AxiomCheck all_ok(std::string axiom) { return {std::move(axiom), true, ""}; }

void fail(AxiomCheck& c, const std::string& witness) {
  if (!c.ok) return;
  c.ok = false;
  c.witness = witness;
}

}  // namespace

// ------------------------------------------------------------ models

ProjModel proj_model(Flavor flavor, const FGL& law, int n, int N) {
  if (n < 1) throw Error(ErrorCode::ConfigError, "height must be positive");
  if (N == 0) N = lens_q(law.p, n + 1);
  if (N < 2 || N > law.N) throw Error(ErrorCode::PrecisionExhausted, "truncation exceeds the law's precision");
  return {flavor, law.p, n, N, law};
}

std::size_t LensModel::rank() const { return static_cast<std::size_t>(2 * lens_q(p, n)); }

std::vector<std::string> LensModel::names() const {
  std::vector<std::string> out;
  const int q = lens_q(p, n);
  for (int w = 0; w < 2; ++w)
    for (int a = 0; a < q; ++a) {
      std::string x = a == 0 ? "" : vec_name(a);
      out.push_back(w ? "y" + x : (x.empty() ? "1" : x));
    }
  return out;
}

CoactionVec coaction_x(const ProjModel& M, const CompositeHopf& H) {
  const SeriesHopf& A = H.full;
  const TowerPtr& T = A.tower();
  std::vector<VarSpec> ws = A.vars()->vars();
  const std::size_t xi = ws.size();
  ws.push_back(VarSpec{"x", 2, Parity::Even, M.N, 0});
  auto W = VarTable::make(ws, A.vars()->total_cap());
  std::vector<TSeries> summands;
  for (int i = 0; ipow(M.p, i) < M.N; ++i) {
    TSeries xp = TSeries::var(W, T, xi, static_cast<int>(ipow(M.p, i)));
    if (i == 0) {
      summands.push_back(xp);
    } else if (i <= H.tbound) {
      summands.push_back(TSeries::var(W, T, H.t_index(i)) * xp);
    }
  }
  TSeries s = formal_sum(M.law, summands);
  CoactionVec out = zeros(A, static_cast<std::size_t>(M.N));
  for (const auto& [m, c] : s.terms()) {
    Monomial rest = m;
    const int a = rest.e[xi];
    rest.e[xi] = 0;
    out[static_cast<std::size_t>(a)] += TSeries::monomial(A.vars(), T, rest, c);
  }
  return out;
}

CoactionVec coaction_x(const LensModel& M, const CompositeHopf& H) {
  if (M.p != H.p || M.n != H.n) throw Error(ErrorCode::BaseMismatch, "lens model and Hopf algebra disagree on (p, n)");
  return lens_comodule(H).rho[lens_index(M.p, M.n, false, 1)];
}

CoactionVec coaction_y(const LensModel& M, const CompositeHopf& H) {
  if (M.p != H.p || M.n != H.n) throw Error(ErrorCode::BaseMismatch, "lens model and Hopf algebra disagree on (p, n)");
  return lens_comodule(H).rho[lens_index(M.p, M.n, true, 0)];
}

Comodule proj_comodule(const ProjModel& M, const CompositeHopf& H) {
  const SeriesHopf& A = H.full;
  const std::size_t N = static_cast<std::size_t>(M.N);
  Comodule C{&A, {}, {}, {}, {}};
  CoactionVec one = zeros(A, N);
  one[0] = A.one();
  const CoactionVec rx = coaction_x(M, H);
  CoactionVec cur = one;
  for (std::size_t a = 0; a < N; ++a) {
    C.names.push_back(vec_name(static_cast<int>(a)));
    C.degree.push_back(2 * static_cast<int>(a));
    C.weight.push_back(static_cast<int>(a));
    C.rho.push_back(cur);
    if (a + 1 < N) cur = poly_mul(A, cur, rx);
  }
  return C;
}

std::vector<AxiomCheck> proj_checks(const ProjModel& M, const CompositeHopf& H) {
  std::vector<AxiomCheck> out;
  const int q = lens_q(M.p, M.n);
  ProjModel low = M;
  low.N = std::min(q, M.N);
  for (auto c : check_comodule(proj_comodule(low, H))) {
    c.axiom += " mod x^" + std::to_string(low.N);
    out.push_back(std::move(c));
  }
  AxiomCheck tower = all_ok("rho mod x^(N-1) agrees with truncation N-1");
  if (M.N > 2) {
    ProjModel shorter = M;
    shorter.N = M.N - 1;
    const CoactionVec a = coaction_x(M, H), b = coaction_x(shorter, H);
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!(a[k] == b[k])) fail(tower, vec_name(static_cast<int>(k)));
  }
  out.push_back(tower);
  return out;
}

// ------------------------------------------------------------ Chern data

TMatrix bhat_matrix(int p, int n, const TSeries& psi) {
  const TowerPtr& T = psi.ctx();
  const std::size_t un = static_cast<std::size_t>(n);
  TMatrix B(un, std::vector<TowerElem>(un, T->zero()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      B[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          psi.coeff({static_cast<int>(ipow(p, i - j))}).pow(ipow(p, j));
  return B;
}

ChernData chern_data(const FGLIso& iso) {
  const int p = iso.source.p, n = iso.n;
  const int q = lens_q(p, n);
  if (iso.N < q) throw Error(ErrorCode::PrecisionExhausted, "Phi^-1 is needed below X^" + std::to_string(q));
  IsoReport r = verify_iso(iso);
  if (!r.ok || !r.inverse_ok) throw Error(ErrorCode::InvalidWitness, "isomorphism does not verify: " + r.discrepancy);
  ChernData d{iso, p, n, iso.phi.coeff({1}), TSeries(x_table(q), iso.tower), {}, {}};
  auto V = x_table(q);
  for (const auto& [m, c] : iso.inverse.terms())
    if (m.e[0] < q) d.theta_x += TSeries::monomial(V, iso.tower, m, c);
  // Below X^(p^n) both laws are additive, so Phi^-1 has only p-power terms.
  for (const auto& [m, c] : d.theta_x.terms()) {
    long long e = m.e[0];
    while (e % p == 0) e /= p;
    if (e != 1) throw Error(ErrorCode::UnsupportedExtension, "Phi^-1 has a non-p-power term below X^(p^n)");
  }
  d.bhat = bhat_matrix(p, n, d.theta_x);
  d.bhat_w = d.bhat;
  for (int j = 0; j < n; ++j)
    for (auto& e : d.bhat_w[static_cast<std::size_t>(j)]) e *= d.phi0.pow(ipow(p, j));
  return d;
}

TMatrix bhat_basis(const ChernData& data) { return data.bhat; }

// ------------------------------------------------------------ lens ring maps

std::vector<TowerElem> lens_mul(int p, int n, const std::vector<TowerElem>& a, const std::vector<TowerElem>& b) {
  const int q = lens_q(p, n);
  const Tower* T = a.front().tower();
  std::vector<TowerElem> out(a.size(), T->zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    const int ya = static_cast<int>(i) / q, xa = static_cast<int>(i) % q;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      const int yb = static_cast<int>(j) / q, xb = static_cast<int>(j) % q;
      if ((ya && yb) || xa + xb >= q) continue;
      out[lens_index(p, n, ya || yb, xa + xb)] += a[i] * b[j];
    }
  }
  return out;
}

LensMap lens_ring_map(int p, int n, const TSeries& x_image) {
  const int q = lens_q(p, n);
  const std::size_t r = static_cast<std::size_t>(2 * q);
  const TowerPtr& T = x_image.ctx();
  std::vector<TowerElem> one(r, T->zero()), x(r, T->zero()), y(r, T->zero());
  one[0] = T->one();
  y[lens_index(p, n, true, 0)] = T->one();
  for (int a = 0; a < q; ++a) x[static_cast<std::size_t>(a)] = x_image.coeff({a});
  std::vector<TowerElem> xq = one;
  for (int a = 0; a < q; ++a) xq = lens_mul(p, n, xq, x);
  for (const auto& c : xq)
    if (!c.is_zero()) throw Error(ErrorCode::RelationNotPreserved, "image of x has nonzero p^n-th power");
  LensMap f{p, n, {}};
  std::vector<TowerElem> cur = one;
  std::vector<std::vector<TowerElem>> xs;
  for (int a = 0; a < q; ++a) {
    xs.push_back(cur);
    cur = lens_mul(p, n, cur, x);
  }
  for (const auto& v : xs) f.m.push_back(v);
  for (const auto& v : xs) f.m.push_back(lens_mul(p, n, y, v));
  return f;
}

LensMap chern_theta(const ChernData& data) { return lens_ring_map(data.p, data.n, data.theta_x); }

std::vector<AxiomCheck> check_ring_map(const LensMap& f) {
  const int p = f.p, n = f.n, q = lens_q(p, n);
  const std::size_t r = f.m.size();
  const Tower* T = f.m[0][0].tower();
  LensModel L{Flavor::K, p, n};
  const auto names = L.names();
  auto basis = [&](std::size_t k) {
    std::vector<TowerElem> v(r, T->zero());
    v[k] = T->one();
    return v;
  };
  // f applied to a coordinate vector
  auto apply = [&](const std::vector<TowerElem>& v) {
    std::vector<TowerElem> out(r, T->zero());
    for (std::size_t k = 0; k < r; ++k)
      if (!v[k].is_zero())
        for (std::size_t l = 0; l < r; ++l) out[l] += v[k] * f.m[k][l];
    return out;
  };
  auto is_zero = [](const std::vector<TowerElem>& v) {
    for (const auto& c : v)
      if (!c.is_zero()) return false;
    return true;
  };
  AxiomCheck unit = all_ok("f(1) = 1");
  if (!(f.m[0] == basis(0))) fail(unit, "1");
  AxiomCheck rel = all_ok("f(y)^2 = 0, f(x)^(p^n) = 0");
  const std::size_t yi = lens_index(p, n, true, 0);
  if (!is_zero(lens_mul(p, n, f.m[yi], f.m[yi]))) fail(rel, "y");
  std::vector<TowerElem> xq = basis(0);
  for (int a = 0; a < q; ++a) xq = lens_mul(p, n, xq, f.m[1]);
  if (!is_zero(xq)) fail(rel, "x");
  AxiomCheck mult = all_ok("f(ab) = f(a) f(b)");
  for (std::size_t k = 0; k < r && mult.ok; ++k)
    for (std::size_t l = 0; l < r && mult.ok; ++l)
      if (!(apply(lens_mul(p, n, basis(k), basis(l))) == lens_mul(p, n, f.m[k], f.m[l])))
        fail(mult, names[k] + " * " + names[l]);
  return {unit, rel, mult};
}

HopfMap bhat_iso(const TMatrix& bhat, const SeriesHopf& lambda) {
  const std::size_t n = bhat.size();
  TMatrix Bt(n, std::vector<TowerElem>(n, bhat[0][0]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Bt[i][j] = bhat[j][i];
  const TMatrix C = invert(Bt);  // b_j = sum_i C[j][i] bhat_i
  HopfMap f{&lambda, &lambda, {}};
  for (std::size_t j = 0; j < n; ++j) {
    TSeries img(lambda.vars(), lambda.tower());
    for (std::size_t i = 0; i < n; ++i) img += lambda.gen("b" + std::to_string(i)).scale(C[j][i]);
    f.images.push_back(img);
  }
  return f;
}

std::vector<AxiomCheck> q_transport_check(const LensMap& f, const TMatrix& bhat, const CompositeHopf& H) {
  const SeriesHopf& Lam = H.lambda;
  const Comodule M = lens_lambda_comodule(H);
  const HopfMap rename = bhat_iso(bhat, Lam);
  const std::size_t r = M.rank();
  AxiomCheck coact = all_ok("(1 x f) rho_E = rho_K f after bhat_i -> b^K_i");
  std::vector<CoactionVec> pushed;
  for (std::size_t k = 0; k < r; ++k) {
    CoactionVec got = zeros(Lam, r), want = zeros(Lam, r);
    for (std::size_t l = 0; l < r; ++l) {
      if (M.rho[k][l].is_zero()) continue;
      for (std::size_t l2 = 0; l2 < r; ++l2)
        if (!f.m[l][l2].is_zero()) got[l2] += M.rho[k][l].scale(f.m[l][l2]);
    }
    for (auto& g : got) g = rename(g);
    for (std::size_t j = 0; j < r; ++j) {
      if (f.m[k][j].is_zero()) continue;
      for (std::size_t l = 0; l < r; ++l)
        if (!M.rho[j][l].is_zero()) want[l] += M.rho[j][l].scale(f.m[k][j]);
    }
    if (!(got == want)) fail(coact, M.names[k]);
    pushed.push_back(std::move(got));
  }
  AxiomCheck milnor = all_ok("(y) Qhat_i = x^(p^i)");
  const std::size_t yi = lens_index(H.p, H.n, true, 0);
  for (int i = 0; i < H.n; ++i) {
    Monomial b{};
    b.e[Lam.vars()->index("b" + std::to_string(i))] = 1;
    const std::size_t target = lens_index(H.p, H.n, false, static_cast<int>(ipow(H.p, i)));
    for (std::size_t l = 0; l < r; ++l) {
      const TowerElem c = pushed[yi][l].coeff(b);
      const bool ok = l == target ? c.is_one() : c.is_zero();
      if (!ok) fail(milnor, "Q" + std::to_string(i) + " at " + M.names[l]);
    }
  }
  return {coact, milnor};
}

std::vector<AxiomCheck> bhat_invariance_check(const ChernData& data, const std::vector<ActionWitness>& witnesses) {
  const int p = data.p, n = data.n;
  const std::size_t un = static_cast<std::size_t>(n);
  const TMatrix& B = data.bhat;
  std::vector<AxiomCheck> out;
  int idx = 0;
  for (const auto& w : witnesses) {
    const bool plus = w.kind == WitnessKind::GnPlus1;
    AxiomCheck c = all_ok(std::string(plus ? "bhat^g = bhat" : "bhat^h = bhat o t_K(h)^-1") + " (witness " +
                          std::to_string(idx++) + ")");
    EquivarianceReport er = check_equivariance(data.iso, w);
    if (!er.ok || !er.action) {
      fail(c, "equivariance: " + er.detail);
      out.push_back(c);
      continue;
    }
    const TowerAutomorphism& g = *er.action;
    const auto M = lambda_action(p, n, w.series);
    for (std::size_t i = 0; i < un && c.ok; ++i)
      for (std::size_t k = 0; k < un && c.ok; ++k) {
        TowerElem lhs = data.iso.tower->zero(), rhs = data.iso.tower->zero();
        if (plus) {
          // b^g_j = sum_k M[j][k] b_k
          for (std::size_t j = 0; j < un; ++j) lhs += g.apply(B[j][i]) * M[j][k];
          rhs = B[k][i];
        } else {
          lhs = g.apply(B[k][i]);
          for (std::size_t j = 0; j < un; ++j) rhs += M[i][j] * B[k][j];
        }
        if (!(lhs == rhs)) fail(c, "bhat_" + std::to_string(i) + " at b" + std::to_string(k));
      }
    out.push_back(c);
  }
  return out;
}

}  // namespace chromalg
