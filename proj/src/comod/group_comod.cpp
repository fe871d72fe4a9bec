#include "chromalg/comod.hpp"
#include "chromalg/error.hpp"

namespace chromalg {

namespace {

using RElem = ActedRing::Elem;

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

RMatrix identity(const ActedRing& R, std::size_t n) {
  RMatrix m(n, std::vector<RElem>(n, R.zero()));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = R.one();
  return m;
}

RMatrix mul(const ActedRing& R, const RMatrix& a, const RMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RMatrix c(n, std::vector<RElem>(m, R.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < m; ++l) c[i][l] = R.add(c[i][l], R.mul(a[i][j], b[j][l]));
  return c;
}

RMatrix act(const ActedRing& R, const RMatrix& a, int g) {
  RMatrix r = a;
  for (auto& row : r)
    for (auto& x : row) x = R.act(x, g);
  return r;
}

bool is_unit(const RElem& a) { return a[0] != 0; }

}  // namespace

RElem ring_inverse(const ActedRing& R, const RElem& a) {
  if (!is_unit(a)) throw Error(ErrorCode::DivisionByZero, "element of the maximal ideal");
  const auto& F = R.field();
  const RElem c = R.from_fq(F.inv(a[0]));
  RElem nil = R.sub(R.mul(a, c), R.one());  // a/c - 1
  RElem neg = R.neg(nil), term = R.one(), sum = R.zero();
  for (int k = 0; k < R.k(); ++k) {
    sum = R.add(sum, term);
    term = R.mul(term, neg);
  }
  return R.mul(sum, c);
}

RMatrix invert(const ActedRing& R, const RMatrix& m) {
  const std::size_t n = m.size();
  RMatrix a = m, inv = identity(R, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && !is_unit(a[piv][col])) ++piv;
    if (piv == n) throw Error(ErrorCode::DivisionByZero, "matrix is not invertible");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const RElem s = ring_inverse(R, a[col][col]);
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = R.mul(a[col][j], s);
      inv[col][j] = R.mul(inv[col][j], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const RElem f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = R.sub(a[r][j], R.mul(f, a[col][j]));
        inv[r][j] = R.sub(inv[r][j], R.mul(f, inv[col][j]));
      }
    }
  }
  return inv;
}

std::vector<RElem> TwistedModule::act(const std::vector<RElem>& m, int g) const {
  const ActedRing& R = C->ring();
  std::vector<RElem> out(rank(), R.zero());
  const RMatrix& A = action[sz(g)];
  for (std::size_t k = 0; k < rank(); ++k) {
    const RElem c = R.act(m[k], g);
    for (std::size_t l = 0; l < rank(); ++l) out[l] = R.add(out[l], R.mul(c, A[k][l]));
  }
  return out;
}

std::vector<AxiomCheck> check_twisted(const TwistedModule& M, std::uint64_t seed) {
  const FiniteGroup& G = M.C->group();
  const ActedRing& R = M.C->ring();
  AxiomCheck id{"identity acts trivially", M.action[sz(G.identity)] == identity(R, M.rank()), ""};
  AxiomCheck law{"A_(g1 g2) = A_g1^g2 A_g2", true, ""};
  for (int a = 0; a < G.order && law.ok; ++a)
    for (int b = 0; b < G.order && law.ok; ++b)
      if (M.action[sz(G.mul(a, b))] != mul(R, act(R, M.action[sz(a)], b), M.action[sz(b)]))
        law = {law.axiom, false, G.names[sz(a)] + "," + G.names[sz(b)]};
  AxiomCheck semi{"(am)g = a^g (m)g", true, ""};
  std::mt19937_64 rng(seed);
  for (int it = 0; it < 5 && semi.ok; ++it) {
    const RElem a = R.random(rng);
    std::vector<RElem> m;
    for (std::size_t k = 0; k < M.rank(); ++k) m.push_back(R.random(rng));
    std::vector<RElem> am;
    for (const auto& c : m) am.push_back(R.mul(a, c));
    for (int g = 0; g < G.order && semi.ok; ++g) {
      auto rhs = M.act(m, g);
      for (auto& c : rhs) c = R.mul(R.act(a, g), c);
      if (M.act(am, g) != rhs) semi = {semi.axiom, false, "sample " + std::to_string(it) + " at " + G.names[sz(g)]};
    }
  }
  return {id, law, semi};
}

std::vector<AxiomCheck> check_comodule(const GroupComodule& M) {
  const FunctionHopf& C = *M.C;
  const ActedRing& R = C.ring();
  const std::size_t n = M.rank();
  AxiomCheck counit{"(eps x 1) rho = id", true, ""}, coassoc{"(psi x 1) rho = (1 x rho) rho", true, ""};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const auto want = k == l ? R.one() : R.zero();
      if (counit.ok && C.eps(M.rho[k][l]) != want) counit = {counit.axiom, false, "m" + std::to_string(k)};
      if (!coassoc.ok) continue;
      FunctionHopf::Elem2 rhs = C.eta_r2(R.zero());
      for (std::size_t j = 0; j < n; ++j) {
        auto t = C.m(M.rho[k][j], M.rho[j][l]);
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = R.add(rhs[i], t[i]);
      }
      if (C.psi(M.rho[k][l]) != rhs) coassoc = {coassoc.axiom, false, "m" + std::to_string(k)};
    }
  return {counit, coassoc};
}

TwistedModule comod_to_twisted(const GroupComodule& M) {
  const int o = M.C->group().order;
  TwistedModule T{M.C, {}};
  for (int g = 0; g < o; ++g) {
    RMatrix A(M.rank(), std::vector<RElem>(M.rank()));
    for (std::size_t k = 0; k < M.rank(); ++k)
      for (std::size_t l = 0; l < M.rank(); ++l) A[k][l] = M.rho[k][l][sz(g)];
    T.action.push_back(std::move(A));
  }
  return T;
}

GroupComodule twisted_to_comod(const TwistedModule& M) {
  const int o = M.C->group().order;
  GroupComodule C{M.C, {}};
  C.rho.assign(M.rank(), std::vector<FunctionHopf::Elem>(M.rank()));
  for (std::size_t k = 0; k < M.rank(); ++k)
    for (std::size_t l = 0; l < M.rank(); ++l)
      for (int g = 0; g < o; ++g) C.rho[k][l].push_back(M.action[sz(g)][k][l]);
  return C;
}

TwistedModule tensor(const TwistedModule& a, const TwistedModule& b) {
  const ActedRing& R = a.C->ring();
  const std::size_t ra = a.rank(), rb = b.rank();
  TwistedModule T{a.C, {}};
  for (std::size_t g = 0; g < a.action.size(); ++g) {
    RMatrix A(ra * rb, std::vector<RElem>(ra * rb));
    for (std::size_t k = 0; k < ra; ++k)
      for (std::size_t k2 = 0; k2 < rb; ++k2)
        for (std::size_t l = 0; l < ra; ++l)
          for (std::size_t l2 = 0; l2 < rb; ++l2) A[k * rb + k2][l * rb + l2] = R.mul(a.action[g][k][l], b.action[g][k2][l2]);
    T.action.push_back(std::move(A));
  }
  return T;
}

GroupComodule tensor(const GroupComodule& a, const GroupComodule& b) {
  const std::size_t ra = a.rank(), rb = b.rank();
  GroupComodule C{a.C, {}};
  C.rho.assign(ra * rb, std::vector<FunctionHopf::Elem>(ra * rb));
  for (std::size_t k = 0; k < ra; ++k)
    for (std::size_t k2 = 0; k2 < rb; ++k2)
      for (std::size_t l = 0; l < ra; ++l)
        for (std::size_t l2 = 0; l2 < rb; ++l2) C.rho[k * rb + k2][l * rb + l2] = a.C->mul(a.rho[k][l], b.rho[k2][l2]);
  return C;
}

TwistedModule trivial_twisted(const FunctionHopf& C, int rank) {
  return TwistedModule{&C, std::vector<RMatrix>(sz(C.group().order), identity(C.ring(), sz(rank)))};
}

TwistedModule random_twisted(const FunctionHopf& C, int rank, std::mt19937_64& rng) {
  const ActedRing& R = C.ring();
  const FiniteGroup& G = C.group();
  const std::size_t n = sz(rank);
  RMatrix L = identity(R, n), U = identity(R, n);
  std::uniform_int_distribution<std::uint32_t> unit(1, R.field().order() - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i > j) L[i][j] = R.random(rng);
      if (i < j) U[i][j] = R.random(rng);
      if (i == j) {
        U[i][i] = R.random(rng);
        U[i][i][0] = unit(rng);
      }
    }
  const RMatrix P = mul(R, L, U), Pinv = invert(R, P);
  TwistedModule T{&C, {}};
  for (int g = 0; g < G.order; ++g) {
    RMatrix Pi = identity(R, n);
    if (rank >= G.order) {
      for (int h = 0; h < G.order; ++h) {
        Pi[sz(h)][sz(h)] = R.zero();
        Pi[sz(h)][sz(G.mul(h, g))] = R.one();
      }
    }
    T.action.push_back(mul(R, mul(R, act(R, P, g), Pi), Pinv));
  }
  return T;
}

}  // namespace chromalg
