#include "chromalg/comod.hpp"
#include "chromalg/error.hpp"

namespace chromalg {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// b~_i = sum_j chi(t_(i-j))^(p^j) b_j in the composite.
TSeries btilde(const CompositeHopf& H, int i) {
  const SeriesHopf& A = H.full;
  TSeries s(A.vars(), A.tower());
  for (int j = 0; j <= i; ++j) {
    const int d = i - j;
    const TSeries c = d == 0 ? A.one() : A.chi_gen[H.t_index(d)];
    s += c.pow(static_cast<int>(ipow(H.p, j))) * H.b(j);
  }
  return s;
}

// Structure maps of the nine-term diagram. Every X (x) M is stored over the
// composite A or A (x) A: C (x) Lambda sits inside one A factor.
struct Diagram {
  const CompositeHopf& H;
  const SeriesHopf& A;
  std::size_t d;
  std::vector<TSeries> bt;  // b~_i over A
  std::vector<CoactionVec> lam, c;

  explicit Diagram(const CompositeHopf& h) : H(h), A(h.full), d(h.full.num_gens()) {
    for (int i = 0; i < H.n; ++i) bt.push_back(btilde(H, i));
  }

  bool is_b(std::size_t v) const { return (*A.vars())[v].name[0] == 'b'; }
  int b_of(std::size_t v) const { return std::stoi((*A.vars())[v].name.substr(1)); }

  TSeries zero1() const { return TSeries(A.vars(), A.tower()); }
  TSeries zero2() const { return TSeries(A.vars2(), A.tower()); }
  CoactionVec zeros(bool two) const { return CoactionVec(lam.size(), two ? zero2() : zero1()); }

  // Images of the 2d variables of A (x) A.
  std::vector<TSeries> ident2() const {
    std::vector<TSeries> im;
    for (std::size_t v = 0; v < 2 * d; ++v) im.push_back(TSeries::var(A.vars2(), A.tower(), v));
    return im;
  }

  TSeries rho_c_lambda(const TSeries& a) const {
    std::vector<TSeries> im;
    for (std::size_t v = 0; v < d; ++v) im.push_back(is_b(v) ? bt[static_cast<std::size_t>(b_of(v))] : A.gen(v));
    return a.substitute(im);
  }

  // (pi_Lambda (x) 1) psi : A -> Lambda (x) A.
  TSeries rho_lambda_cl(const TSeries& a) const {
    auto im = ident2();
    for (std::size_t v = 0; v < d; ++v)
      if (!is_b(v)) im[v] = zero2();
    return A.psi(a).substitute(im);
  }

  // rho_(C, Lambda (x) C) (x) 1 on Lambda (x) [C Lambda].
  TSeries rho_clc(const TSeries& w) const {
    auto im = ident2();
    for (std::size_t v = 0; v < d; ++v) {
      if (is_b(v)) im[v] = A.left(bt[static_cast<std::size_t>(b_of(v))]);
      else im[d + v] = A.psi(A.gen(v));
    }
    return w.substitute(im);
  }

  CoactionVec rho_l(std::size_t k) const { return lam[k]; }

  // rho_(C, Lambda (x) M) : Lambda (x) M -> C (x) Lambda (x) M.
  CoactionVec rho_clm(const CoactionVec& v) const {
    CoactionVec out = zeros(false);
    for (std::size_t l = 0; l < v.size(); ++l) {
      if (v[l].is_zero()) continue;
      const TSeries s = rho_c_lambda(v[l]);
      for (std::size_t j = 0; j < out.size(); ++j)
        if (!c[l][j].is_zero()) out[j] += s * c[l][j];
    }
    return out;
  }

  // 1 (x) rho_Lambda : X (x) M -> X (x) Lambda (x) M.
  CoactionVec one_rho_l(const CoactionVec& v) const {
    CoactionVec out = zeros(true);
    for (std::size_t l = 0; l < v.size(); ++l) {
      if (v[l].is_zero()) continue;
      const TSeries s = A.left(v[l]);
      for (std::size_t j = 0; j < out.size(); ++j)
        if (!lam[l][j].is_zero()) out[j] += s * A.right(lam[l][j]);
    }
    return out;
  }

  // psi_Lambda (x) 1.
  CoactionVec psi_l(const CoactionVec& v) const {
    std::vector<TSeries> im;
    for (std::size_t x = 0; x < d; ++x) im.push_back(is_b(x) ? A.left(A.gen(x)) + A.right(A.gen(x)) : A.left(A.gen(x)));
    CoactionVec out = zeros(true);
    for (std::size_t l = 0; l < v.size(); ++l) out[l] = v[l].substitute(im);
    return out;
  }

  // rho_(C, Lambda (x) Lambda (x) M).
  CoactionVec rho_cllm(const CoactionVec& w) const {
    auto im = ident2();
    for (std::size_t v = 0; v < d; ++v) {
      if (!is_b(v)) continue;
      const int i = b_of(v);
      im[v] = A.left(bt[static_cast<std::size_t>(i)]);
      TSeries s = zero2();
      for (int j = 0; j <= i; ++j) {
        const int dd = i - j;
        const TSeries ch = dd == 0 ? A.one() : A.chi_gen[H.t_index(dd)];
        s += A.left(ch.pow(static_cast<int>(ipow(H.p, j)))) * A.right(H.b(j));
      }
      im[d + v] = s;
    }
    CoactionVec out = zeros(true);
    for (std::size_t l = 0; l < w.size(); ++l) {
      if (w[l].is_zero()) continue;
      const TSeries s = w[l].substitute(im);
      for (std::size_t j = 0; j < out.size(); ++j)
        if (!c[l][j].is_zero()) out[j] += s * A.left(c[l][j]);
    }
    return out;
  }

  // 1 (x) rho_(C, Lambda (x) M) on the second factor.
  CoactionVec one_rho_clm(const CoactionVec& w) const {
    auto im = ident2();
    for (std::size_t v = 0; v < d; ++v)
      if (is_b(v)) im[d + v] = A.right(bt[static_cast<std::size_t>(b_of(v))]);
    CoactionVec out = zeros(true);
    for (std::size_t l = 0; l < w.size(); ++l) {
      if (w[l].is_zero()) continue;
      const TSeries s = w[l].substitute(im);
      for (std::size_t j = 0; j < out.size(); ++j)
        if (!c[l][j].is_zero()) out[j] += s * A.right(c[l][j]);
    }
    return out;
  }

  CoactionVec rho_lcl_m(const CoactionVec& v) const {
    CoactionVec out = zeros(true);
    for (std::size_t l = 0; l < v.size(); ++l) out[l] = rho_lambda_cl(v[l]);
    return out;
  }

  CoactionVec rho_clc_m(const CoactionVec& w) const {
    CoactionVec out = zeros(true);
    for (std::size_t l = 0; l < w.size(); ++l) out[l] = rho_clc(w[l]);
    return out;
  }

  TSeries b_mono(std::size_t S) const {
    TSeries m = A.one();
    for (int i = 0; i < H.n; ++i)
      if ((S >> i) & 1U) m = m * H.b(i);
    return m;
  }

  std::string b_name(std::size_t S) const {
    std::string s;
    for (int i = 0; i < H.n; ++i)
      if ((S >> i) & 1U) s += "b" + std::to_string(i);
    return s.empty() ? "1" : s;
  }
};

CoactionVec embed(const CoactionVec& v, const HopfMap& f) {
  CoactionVec out;
  for (const auto& s : v) out.push_back(f(s));
  return out;
}

}  // namespace

TSeries rho_c_lambda(const CompositeHopf& H, const TSeries& a) { return Diagram(H).rho_c_lambda(a); }

namespace {

Diagram diagram_for(const CLambdaComodule& M) {
  Diagram D(*M.H);
  const HopfMap ic = i_c(*M.H), il = i_lambda(*M.H);
  for (std::size_t k = 0; k < M.c.rank(); ++k) {
    D.c.push_back(embed(M.c.rho[k], ic));
    D.lam.push_back(embed(M.lambda.rho[k], il));
  }
  return D;
}

}  // namespace

AxiomCheck compatibility_check(const CLambdaComodule& M) {
  if (M.c.rank() != M.lambda.rank()) throw Error(ErrorCode::CompatibilityFailure, "C and Lambda parts have different ranks");
  const Diagram D = diagram_for(M);
  AxiomCheck out{"rho_Lambda is a map of C-comodules", true, ""};
  for (std::size_t k = 0; k < M.c.rank() && out.ok; ++k) {
    const CoactionVec lhs = D.rho_clm(D.rho_l(k));
    CoactionVec rhs = D.zeros(false);
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      if (D.c[k][j].is_zero()) continue;
      for (std::size_t l = 0; l < rhs.size(); ++l)
        if (!D.lam[j][l].is_zero()) rhs[l] += D.c[k][j] * D.lam[j][l];
    }
    if (lhs != rhs) out = {out.axiom, false, M.c.names[k]};
  }
  return out;
}

Comodule assemble(const CLambdaComodule& M) {
  const AxiomCheck c = compatibility_check(M);
  if (!c.ok) throw Error(ErrorCode::CompatibilityFailure, "Lambda-coaction is not C-colinear at " + c.witness);
  const Diagram D = diagram_for(M);
  Comodule out{&M.H->full, M.c.names, M.c.degree, M.c.weight, {}};
  for (std::size_t k = 0; k < M.c.rank(); ++k) out.rho.push_back(D.rho_clm(D.rho_l(k)));
  return out;
}

CLambdaComodule split(const Comodule& M, const CompositeHopf& H) {
  if (M.hopf != &H.full) throw Error(ErrorCode::BaseMismatch, "comodule is not over the composite");
  return {&H, pushforward(M, pi_c(H)), pushforward(M, pi_lambda(H))};
}

std::vector<AxiomCheck> nine_diagram_check(const CLambdaComodule& M) {
  const Diagram D = diagram_for(M);
  const std::size_t r = M.c.rank(), masks = std::size_t{1} << M.H->n;
  const auto& names = M.c.names;
  AxiomCheck tl{"top left: (1 x rho_L) rho_L = (psi_L x 1) rho_L", true, ""};
  for (std::size_t k = 0; k < r && tl.ok; ++k)
    if (D.one_rho_l(D.rho_l(k)) != D.psi_l(D.rho_l(k))) tl = {tl.axiom, false, names[k]};

  AxiomCheck tr{"top right: (1 x 1 x rho_L) rho_(C,L(x)M) = rho_(C,L(x)L(x)M) (1 x rho_L)", true, ""};
  AxiomCheck bl{"bottom left: (rho_(L,C(x)L) x 1) rho_(C,L(x)M) = (1 x rho_(C,L(x)M)) (psi_L x 1)", true, ""};
  for (std::size_t S = 0; S < masks; ++S)
    for (std::size_t k = 0; k < r; ++k) {
      CoactionVec v = D.zeros(false);
      v[k] = D.b_mono(S);
      const std::string w = D.b_name(S) + "(x)" + names[k];
      if (tr.ok && D.one_rho_l(D.rho_clm(v)) != D.rho_cllm(D.one_rho_l(v))) tr = {tr.axiom, false, w};
      if (bl.ok && D.rho_lcl_m(D.rho_clm(v)) != D.one_rho_clm(D.psi_l(v))) bl = {bl.axiom, false, w};
    }

  AxiomCheck br{"bottom right: (rho_(C,L(x)C) x 1 x 1)(1 x rho_(C,L(x)M)) = (1 x 1 x rho_(C,L(x)M)) rho_(C,L(x)L(x)M)",
                true, ""};
  const SeriesHopf& A = M.H->full;
  for (std::size_t S = 0; S < masks && br.ok; ++S)
    for (std::size_t T = 0; T < masks && br.ok; ++T)
      for (std::size_t k = 0; k < r && br.ok; ++k) {
        CoactionVec w = D.zeros(true);
        w[k] = A.left(D.b_mono(S)) * A.right(D.b_mono(T));
        if (D.rho_clc_m(D.one_rho_clm(w)) != D.one_rho_clm(D.rho_cllm(w)))
          br = {br.axiom, false, D.b_name(S) + "(x)" + D.b_name(T) + "(x)" + names[k]};
      }
  std::vector<AxiomCheck> out{tl, tr, bl, br};
  for (auto& c : generator_identities(*M.H)) out.push_back(std::move(c));
  return out;
}

std::vector<AxiomCheck> generator_identities(const CompositeHopf& H) {
  const Diagram D(H);
  const SeriesHopf& A = H.full;
  AxiomCheck f_eq_g{"(1 x rho_(C,L)) psi_L = rho_(L,C(x)L) rho_(C,L) on b_i", true, ""};
  for (int i = 0; i < H.n && f_eq_g.ok; ++i) {
    const TSeries f = A.left(H.b(i)) + A.right(D.bt[static_cast<std::size_t>(i)]);
    const TSeries g = D.rho_lambda_cl(D.bt[static_cast<std::size_t>(i)]);
    if (f != g) f_eq_g = {f_eq_g.axiom, false, "b" + std::to_string(i)};
  }
  AxiomCheck psi{"(rho_(C,L(x)C) x 1) rho_(L,C(x)L) = psi on generators", true, ""};
  for (std::size_t v = 0; v < A.num_gens() && psi.ok; ++v)
    if (D.rho_clc(D.rho_lambda_cl(A.gen(v))) != A.psi(A.gen(v))) psi = {psi.axiom, false, (*A.vars())[v].name};
  return {f_eq_g, psi};
}

}  // namespace chromalg
