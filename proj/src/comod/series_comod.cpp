#include <bit>

#include "chromalg/comod.hpp"
#include "chromalg/error.hpp"

namespace chromalg {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

TSeries zero_of(const SeriesHopf& H) { return TSeries(H.vars(), H.tower()); }

CoactionVec zero_vec(const SeriesHopf& H, std::size_t n) { return CoactionVec(n, zero_of(H)); }

std::string join(const std::string& a, const std::string& b) { return a + "(x)" + b; }

// Row of M's basis where two matrices first differ; empty if equal.
std::string first_diff(const TMatrix& a, const TMatrix& b, const std::vector<std::string>& names) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return names[k];
  return "";
}

TMatrix zero_matrix(const TowerPtr& T, std::size_t n) { return TMatrix(n, std::vector<TowerElem>(n, T->zero())); }

TMatrix add(const TMatrix& a, const TMatrix& b) {
  TMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

TMatrix scale(const TMatrix& a, const TowerElem& s) {
  TMatrix c = a;
  for (auto& row : c)
    for (auto& x : row) x *= s;
  return c;
}

// Value of a polynomial at the given values of its variables.
TowerElem evaluate(const TSeries& s, const std::vector<TowerElem>& values) {
  const TowerPtr& T = s.ctx();
  TowerElem acc = T->zero();
  for (const auto& [m, c] : s.terms()) {
    TowerElem v = c;
    for (std::size_t i = 0; i < values.size() && !v.is_zero(); ++i)
      if (m.e[i]) v *= values[i].pow(m.e[i]);
    acc += v;
  }
  return acc;
}

std::vector<std::string> lens_names(int p, int n) {
  const int q = static_cast<int>(ipow(p, n));
  std::vector<std::string> out;
  for (int w = 0; w < 2; ++w)
    for (int a = 0; a < q; ++a) {
      std::string x = a == 0 ? "" : a == 1 ? "x" : "x^" + std::to_string(a);
      out.push_back(w ? "y" + x : (x.empty() ? "1" : x));
    }
  return out;
}

}  // namespace

TSeries koszul_twist(const TSeries& s, bool odd) {
  if (!odd) return s;
  std::vector<TSeries::Term> t;
  for (const auto& [m, c] : s.terms()) t.push_back({m, std::popcount(s.vars()->odd_bits(m)) % 2 ? -c : c});
  return TSeries::from_terms(s.vars(), s.ctx(), std::move(t));
}

std::vector<AxiomCheck> check_comodule(const Comodule& M) {
  const SeriesHopf& H = *M.hopf;
  const TowerPtr& T = H.tower();
  AxiomCheck counit{"(eps x 1) rho = id", true, ""}, coassoc{"(psi x 1) rho = (1 x rho) rho", true, ""};
  for (std::size_t k = 0; k < M.rank(); ++k)
    for (std::size_t l = 0; l < M.rank(); ++l) {
      if (counit.ok && !(H.eps(M.rho[k][l]) == (k == l ? T->one() : T->zero()))) counit = {counit.axiom, false, M.names[k]};
      if (!coassoc.ok) continue;
      TSeries rhs(H.vars2(), T);
      for (std::size_t j = 0; j < M.rank(); ++j)
        if (!M.rho[k][j].is_zero() && !M.rho[j][l].is_zero()) rhs += H.left(M.rho[k][j]) * H.right(M.rho[j][l]);
      if (!(H.psi(M.rho[k][l]) == rhs)) coassoc = {coassoc.axiom, false, M.names[k]};
    }
  return {counit, coassoc};
}

Comodule trivial_comodule(const SeriesHopf& H, std::vector<std::string> names, std::vector<int> degree) {
  const std::size_t n = names.size();
  Comodule M{&H, std::move(names), std::move(degree), std::vector<int>(n, 0), {}};
  for (std::size_t k = 0; k < n; ++k) {
    M.rho.push_back(zero_vec(H, n));
    M.rho[k][k] = H.one();
  }
  return M;
}

Comodule tensor(const Comodule& a, const Comodule& b) {
  if (a.hopf != b.hopf) throw Error(ErrorCode::BaseMismatch, "comodules over different Hopf algebras");
  const std::size_t ra = a.rank(), rb = b.rank();
  Comodule M{a.hopf, {}, {}, {}, {}};
  for (std::size_t k = 0; k < ra; ++k)
    for (std::size_t k2 = 0; k2 < rb; ++k2) {
      M.names.push_back(join(a.names[k], b.names[k2]));
      M.degree.push_back(a.degree[k] + b.degree[k2]);
      M.weight.push_back(a.weight[k] + b.weight[k2]);
    }
  M.rho.assign(ra * rb, zero_vec(*a.hopf, ra * rb));
  for (std::size_t k = 0; k < ra; ++k)
    for (std::size_t l = 0; l < ra; ++l) {
      if (a.rho[k][l].is_zero()) continue;
      for (std::size_t k2 = 0; k2 < rb; ++k2)
        for (std::size_t l2 = 0; l2 < rb; ++l2)
          if (!b.rho[k2][l2].is_zero())
            M.rho[k * rb + k2][l * rb + l2] = a.rho[k][l] * koszul_twist(b.rho[k2][l2], a.odd(l));
    }
  return M;
}

Comodule pushforward(const Comodule& M, const HopfMap& f) {
  Comodule out = M;
  out.hopf = f.dst;
  for (auto& row : out.rho)
    for (auto& g : row) g = f(g);
  return out;
}

TMatrix identity_matrix(const TowerPtr& T, std::size_t n) {
  TMatrix m = zero_matrix(T, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T->one();
  return m;
}

TMatrix matmul(const TMatrix& a, const TMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  const Tower* T = a[0][0].tower();
  TMatrix c(n, std::vector<TowerElem>(m, T->zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (a[i][j].is_zero()) continue;
      for (std::size_t l = 0; l < m; ++l)
        if (!b[j][l].is_zero()) c[i][l] += a[i][j] * b[j][l];
    }
  return c;
}

TMatrix invert(const TMatrix& m) {
  const std::size_t n = m.size();
  const Tower* T = m[0][0].tower();
  TMatrix a = m, inv(n, std::vector<TowerElem>(n, T->zero()));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = T->one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw Error(ErrorCode::DivisionByZero, "matrix is not invertible");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const TowerElem s = a[col][col].inv();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const TowerElem f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

Comodule change_basis(const Comodule& M, const TMatrix& P) {
  const TMatrix Pinv = invert(P);
  const std::size_t n = M.rank();
  Comodule out = M;
  for (std::size_t k = 0; k < n; ++k) {
    out.names[k] = "v" + std::to_string(k);
    for (std::size_t l = 0; l < n; ++l) {
      TSeries s = zero_of(*M.hopf);
      for (std::size_t a = 0; a < n; ++a) {
        if (P[k][a].is_zero()) continue;
        for (std::size_t b = 0; b < n; ++b)
          if (!Pinv[b][l].is_zero() && !M.rho[a][b].is_zero()) s += M.rho[a][b].scale(P[k][a] * Pinv[b][l]);
      }
      out.rho[k][l] = s;
    }
  }
  return out;
}

Comodule cofree_comodule(const SeriesHopf& lambda, const std::vector<int>& v_degrees) {
  const std::size_t n = lambda.num_gens(), masks = std::size_t{1} << n, nv = v_degrees.size();
  const TowerPtr& T = lambda.tower();
  auto mono = [&](std::size_t S) {
    Monomial m{};
    for (std::size_t i = 0; i < n; ++i) m.e[i] = (S >> i) & 1U;
    return m;
  };
  auto idx = [&](std::size_t S, std::size_t a) { return S * nv + a; };
  Comodule M{&lambda, {}, {}, {}, {}};
  for (std::size_t S = 0; S < masks; ++S)
    for (std::size_t a = 0; a < nv; ++a) {
      std::string s;
      for (std::size_t i = 0; i < n; ++i)
        if ((S >> i) & 1U) s += (*lambda.vars())[i].name;
      M.names.push_back((s.empty() ? "" : s + "*") + "v" + std::to_string(a));
      M.degree.push_back(v_degrees[a] - std::popcount(S));
      M.weight.push_back(0);
    }
  M.rho.assign(masks * nv, zero_vec(lambda, masks * nv));
  for (std::size_t S = 0; S < masks; ++S) {
    TSeries ps = lambda.psi(TSeries::monomial(lambda.vars(), T, mono(S), T->one()));
    for (const auto& [m, c] : ps.terms()) {
      std::size_t L = 0, R = 0;
      for (std::size_t i = 0; i < n; ++i) {
        L |= static_cast<std::size_t>(m.e[i]) << i;
        R |= static_cast<std::size_t>(m.e[n + i]) << i;
      }
      for (std::size_t a = 0; a < nv; ++a)
        M.rho[idx(S, a)][idx(R, a)] += TSeries::monomial(lambda.vars(), T, mono(L), c);
    }
  }
  return M;
}

Comodule random_lambda_comodule(const SeriesHopf& lambda, int v_rank, std::mt19937_64& rng) {
  std::vector<int> degs;
  for (int a = 0; a < v_rank; ++a) degs.push_back(static_cast<int>(rng() % 2));
  Comodule M = cofree_comodule(lambda, degs);
  const TowerPtr& T = lambda.tower();
  const std::size_t n = M.rank();
  std::uniform_int_distribution<std::uint32_t> c(0, T->field()->order() - 1);
  for (;;) {
    TMatrix P = zero_matrix(T, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (M.degree[i] == M.degree[j]) P[i][j] = T->from_fq(c(rng));
    try {
      return change_basis(M, P);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DivisionByZero) throw;
    }
  }
}

// ------------------------------------------------------------ lens model

std::size_t lens_index(int p, int n, bool with_y, int a) {
  return static_cast<std::size_t>((with_y ? ipow(p, n) : 0) + a);
}

CoactionVec lens_basis_vector(const SeriesHopf& H, int p, int n, const std::string& name, const TSeries& coeff) {
  const auto names = lens_names(p, n);
  CoactionVec v = zero_vec(H, names.size());
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) {
      v[i] = coeff;
      return v;
    }
  throw Error(ErrorCode::IndexOutOfRange, "no lens basis element " + name);
}

Comodule multiplicative_lens(const SeriesHopf& H, int p, int n, const CoactionVec& rho_x, const CoactionVec& rho_y) {
  const int q = static_cast<int>(ipow(p, n));
  const std::size_t r = static_cast<std::size_t>(2 * q);
  Comodule M{&H, lens_names(p, n), {}, {}, {}};
  for (int w = 0; w < 2; ++w)
    for (int a = 0; a < q; ++a) {
      M.degree.push_back(2 * a + w);
      M.weight.push_back(a);
    }
  // (u_i (x) e_i)(v_j (x) e_j) = u_i v_j^(sign of e_i) (x) e_i e_j
  auto mul = [&](const CoactionVec& u, const CoactionVec& v) {
    CoactionVec out = zero_vec(H, r);
    for (std::size_t i = 0; i < r; ++i) {
      if (u[i].is_zero()) continue;
      const int ya = static_cast<int>(i) / q, a = static_cast<int>(i) % q;
      for (std::size_t j = 0; j < r; ++j) {
        if (v[j].is_zero()) continue;
        const int yb = static_cast<int>(j) / q, b = static_cast<int>(j) % q;
        if ((ya && yb) || a + b >= q) continue;
        out[lens_index(p, n, ya || yb, a + b)] += u[i] * koszul_twist(v[j], ya == 1);
      }
    }
    return out;
  };
  CoactionVec one = zero_vec(H, r);
  one[0] = H.one();
  std::vector<CoactionVec> xpow{one};
  for (int a = 1; a < q; ++a) xpow.push_back(mul(xpow.back(), rho_x));
  for (int a = 0; a < q; ++a) M.rho.push_back(xpow[static_cast<std::size_t>(a)]);
  for (int a = 0; a < q; ++a) M.rho.push_back(mul(rho_y, xpow[static_cast<std::size_t>(a)]));
  return M;
}

namespace {

std::string xp(int p, int i) {
  const long long e = ipow(p, i);
  return e == 1 ? "x" : "x^" + std::to_string(e);
}

Comodule lens_over(const CompositeHopf& H, const SeriesHopf& S, bool with_t, bool with_b) {
  const int p = H.p, n = H.n;
  CoactionVec rx = lens_basis_vector(S, p, n, "x", S.one());
  CoactionVec ry = lens_basis_vector(S, p, n, "y", S.one());
  for (int i = 0; i < n; ++i) {
    if (with_t && i >= 1) {
      const auto t = S.gen("t" + std::to_string(i));
      auto v = lens_basis_vector(S, p, n, xp(p, i), t);
      for (std::size_t k = 0; k < v.size(); ++k) rx[k] += v[k];
    }
    if (with_b) {
      auto v = lens_basis_vector(S, p, n, xp(p, i), S.gen("b" + std::to_string(i)));
      for (std::size_t k = 0; k < v.size(); ++k) ry[k] += v[k];
    }
  }
  return multiplicative_lens(S, p, n, rx, ry);
}

}  // namespace

Comodule lens_comodule(const CompositeHopf& H) { return lens_over(H, H.full, true, true); }
Comodule lens_c_comodule(const CompositeHopf& H) { return lens_over(H, H.c_part, true, false); }
Comodule lens_lambda_comodule(const CompositeHopf& H) { return lens_over(H, H.lambda, false, true); }

// ------------------------------------------------------------ Milnor operations

AxiomCheck MilnorAction::anticommutation() const {
  AxiomCheck c{"Q_i Q_j + Q_j Q_i = 0", true, ""};
  for (int i = 0; i < n && c.ok; ++i)
    for (int j = i; j < n && c.ok; ++j) {
      const auto& a = Q[static_cast<std::size_t>(i)];
      const auto& b = Q[static_cast<std::size_t>(j)];
      TMatrix s = add(matmul(a, b), matmul(b, a));
      for (const auto& row : s)
        for (const auto& x : row)
          if (!x.is_zero()) c = {c.axiom, false, "Q" + std::to_string(i) + ",Q" + std::to_string(j)};
    }
  return c;
}

MilnorAction extract_milnor(const Comodule& M, int n) {
  const TowerPtr& T = M.hopf->tower();
  MilnorAction A{n, {}};
  for (int i = 0; i < n; ++i) {
    Monomial m{};
    m.e[M.hopf->vars()->index("b" + std::to_string(i))] = 1;
    TMatrix Q = zero_matrix(T, M.rank());
    for (std::size_t k = 0; k < M.rank(); ++k)
      for (std::size_t l = 0; l < M.rank(); ++l) {
        const TowerElem c = M.rho[k][l].coeff(m);
        Q[k][l] = M.odd(k) ? c : -c;
      }
    A.Q.push_back(std::move(Q));
  }
  return A;
}

std::vector<AxiomCheck> milnor_derivation_check(const Comodule& M, const Comodule& N, int n) {
  const Comodule MN = tensor(M, N);
  const auto qm = extract_milnor(M, n), qn = extract_milnor(N, n), qmn = extract_milnor(MN, n);
  const TowerPtr& T = M.hopf->tower();
  const std::size_t rm = M.rank(), rn = N.rank();
  std::vector<AxiomCheck> out;
  for (int i = 0; i < n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    TMatrix want = zero_matrix(T, rm * rn);
    for (std::size_t k = 0; k < rm; ++k)
      for (std::size_t k2 = 0; k2 < rn; ++k2)
        for (std::size_t l = 0; l < rm; ++l)
          for (std::size_t l2 = 0; l2 < rn; ++l2) {
            TowerElem v = T->zero();
            if (k == l) v += qn.Q[ii][k2][l2];
            if (k2 == l2) v += N.odd(k2) ? -qm.Q[ii][k][l] : qm.Q[ii][k][l];
            want[k * rn + k2][l * rn + l2] = v;
          }
    const std::string w = first_diff(qmn.Q[ii], want, MN.names);
    out.push_back({"(x(x)y)Q" + std::to_string(i) + " = x(x)(y)Q" + std::to_string(i) + " + (-1)^|y| (x)Q" +
                       std::to_string(i) + "(x)y",
                   w.empty(), w});
  }
  return out;
}

TMatrix twist_action(const Comodule& M, const CompositeHopf& H, const std::vector<TowerElem>& a) {
  if (a.empty() || a[0].is_zero()) throw Error(ErrorCode::InvalidWitness, "t(g) needs a unit linear coefficient");
  const TowerPtr& T = M.hopf->tower();
  const TowerElem inv0 = a[0].inv();
  std::vector<TowerElem> values;
  for (const auto& v : M.hopf->vars()->vars()) {
    TowerElem val = T->zero();
    if (v.name[0] == 't') {
      const int i = std::stoi(v.name.substr(1));
      if (i < static_cast<int>(a.size()) && i < H.n) val = a[static_cast<std::size_t>(i)] * inv0.pow(ipow(H.p, i));
    }
    values.push_back(val);
  }
  TMatrix A = zero_matrix(T, M.rank());
  for (std::size_t k = 0; k < M.rank(); ++k)
    for (std::size_t l = 0; l < M.rank(); ++l)
      if (!M.rho[k][l].is_zero()) A[k][l] = evaluate(M.rho[k][l], values) * a[0].pow(M.weight[l]);
  return A;
}

std::vector<AxiomCheck> milnor_twist_check(const Comodule& M, const CompositeHopf& H, const std::vector<TowerElem>& a) {
  const TMatrix A = twist_action(M, H, a);
  TMatrix Ainv;
  try {
    Ainv = invert(A);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidWitness, "the action of g is not invertible");
  }
  const auto Q = extract_milnor(M, H.n);
  const TowerPtr& T = M.hopf->tower();
  std::vector<AxiomCheck> out;
  for (int i = 0; i < H.n; ++i) {
    TMatrix F = zero_matrix(T, M.rank());
    for (int j = i; j < H.n; ++j) {
      const auto d = static_cast<std::size_t>(j - i);
      if (d < a.size()) F = add(F, scale(Q.Q[static_cast<std::size_t>(j)], a[d].pow(ipow(H.p, i))));
    }
    const auto& Qi = Q.Q[static_cast<std::size_t>(i)];
    const std::string is = std::to_string(i);
    const std::string w1 = first_diff(matmul(matmul(Ainv, Qi), A), F, M.names);
    out.push_back({"(Q" + is + ")^g = sum_j t_(j-" + is + ")(g)^(p^" + is + ") Q_j", w1.empty(), w1});
    const std::string w2 = first_diff(matmul(Qi, A), matmul(A, F), M.names);
    out.push_back({"((x)Q" + is + ")g = ((x)g)(Q" + is + ")^g", w2.empty(), w2});
  }
  return out;
}

MilnorCoordinates recognize_milnor(const MilnorAction& Q, const TMatrix& D, std::size_t y) {
  const std::size_t n = static_cast<std::size_t>(Q.n), r = D.size();
  const Tower* T = D[0][0].tower();
  // Columns of the system are the rows (y)Q_i; solve sum q_i (y)Q_i = (y)D.
  std::vector<std::vector<TowerElem>> sys(r, std::vector<TowerElem>(n + 1, T->zero()));
  for (std::size_t c = 0; c < r; ++c) {
    for (std::size_t i = 0; i < n; ++i) sys[c][i] = Q.Q[i][y][c];
    sys[c][n] = D[y][c];
  }
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < r; ++col) {
    std::size_t piv = row;
    while (piv < r && sys[piv][col].is_zero()) ++piv;
    if (piv == r) continue;
    std::swap(sys[piv], sys[row]);
    const TowerElem s = sys[row][col].inv();
    for (auto& x : sys[row]) x *= s;
    for (std::size_t k = 0; k < r; ++k) {
      if (k == row || sys[k][col].is_zero()) continue;
      const TowerElem f = sys[k][col];
      for (std::size_t j = 0; j <= n; ++j) sys[k][j] -= f * sys[row][j];
    }
    pivcol.push_back(col);
    ++row;
  }
  MilnorCoordinates out;
  out.q.assign(n, T->zero());
  for (std::size_t k = row; k < r; ++k)
    if (!sys[k][n].is_zero()) {
      out.witness = "row of basis element " + std::to_string(y);
      return out;
    }
  for (std::size_t k = 0; k < pivcol.size(); ++k) out.q[pivcol[k]] = sys[k][n];
  TMatrix S(r, std::vector<TowerElem>(r, T->zero()));
  for (std::size_t i = 0; i < n; ++i) S = add(S, scale(Q.Q[i], out.q[i]));
  for (std::size_t k = 0; k < r; ++k)
    if (S[k] != D[k]) {
      out.witness = "basis element " + std::to_string(k);
      return out;
    }
  out.in_span = true;
  return out;
}

Comodule random_composite_comodule(const CompositeHopf& H, std::mt19937_64& rng) {
  const Comodule base = tensor(lens_comodule(H), trivial_comodule(H.full, {"e0", "e1"}, {0, 2}));
  const TowerPtr& T = H.full.tower();
  const std::uint32_t q = T->field()->order();
  const std::size_t r = base.rank();
  TMatrix lo = identity_matrix(T, r), up = identity_matrix(T, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j || base.degree[i] != base.degree[j]) continue;
      (i < j ? up : lo)[i][j] = T->from_fq(static_cast<FiniteField::Elem>(rng() % q));
    }
  return change_basis(base, matmul(lo, up));
}

}  // namespace chromalg
