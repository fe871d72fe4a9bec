#pragma once

#include <concepts>
#include <random>
#include <string>
#include <vector>

#include "chromalg/fgl.hpp"

namespace chromalg {

struct AxiomCheck {
  std::string axiom;
  bool ok = true;
  std::string witness;
};

struct HopfReport {
  std::string instance;
  std::vector<AxiomCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  const AxiomCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.ok) return &c;
    return nullptr;
  }
};

/// Structure maps of a Hopf algebroid (A, Gamma), with Gamma (x) Gamma and
/// Gamma^(x)3 represented by Elem2 and Elem3.
template <class H>
concept HopfAlgebroidLike = requires(const H& h, const typename H::Elem& a, const typename H::Elem2& x,
                                     const typename H::Elem3& y, const typename H::Base& r) {
  { h.samples() } -> std::same_as<std::vector<std::pair<std::string, typename H::Elem>>>;
  { h.base_samples() } -> std::same_as<std::vector<typename H::Base>>;
  { h.mul(a, a) } -> std::same_as<typename H::Elem>;
  { h.mul2(x, x) } -> std::same_as<typename H::Elem2>;
  { h.base_mul(r, r) } -> std::same_as<typename H::Base>;
  { h.eta_l(r) } -> std::same_as<typename H::Elem>;
  { h.eta_r(r) } -> std::same_as<typename H::Elem>;
  { h.eta_l2(r) } -> std::same_as<typename H::Elem2>;  // eta_L(r) (x) 1
  { h.eta_r2(r) } -> std::same_as<typename H::Elem2>;  // 1 (x) eta_R(r)
  { h.eps(a) } -> std::same_as<typename H::Base>;
  { h.chi(a) } -> std::same_as<typename H::Elem>;
  { h.psi(a) } -> std::same_as<typename H::Elem2>;
  { h.eps_left(x) } -> std::same_as<typename H::Elem>;   // (eps (x) 1)
  { h.eps_right(x) } -> std::same_as<typename H::Elem>;  // (1 (x) eps)
  { h.psi_left(x) } -> std::same_as<typename H::Elem3>;  // (psi (x) 1)
  { h.psi_right(x) } -> std::same_as<typename H::Elem3>;  // (1 (x) psi)
  { h.mu_chi_left(x) } -> std::same_as<typename H::Elem>;   // mu (chi (x) 1)
  { h.mu_chi_right(x) } -> std::same_as<typename H::Elem>;  // mu (1 (x) chi)
  { h.equal(a, a) } -> std::same_as<bool>;
  { h.equal2(x, x) } -> std::same_as<bool>;
  { h.equal3(y, y) } -> std::same_as<bool>;
  { h.base_equal(r, r) } -> std::same_as<bool>;
  { h.describe(a) } -> std::same_as<std::string>;
  { h.name() } -> std::same_as<std::string>;
};

/// Checks counit, coassociativity, antipode, unit and multiplicativity axioms
/// on every sample and on products of consecutive samples.
template <HopfAlgebroidLike H>
HopfReport check_axioms(const H& h) {
  HopfReport rep;
  rep.instance = h.name();
  auto samples = h.samples();
  const std::size_t base = samples.size();
  for (std::size_t i = 0; i + 1 < base; ++i)
    samples.push_back({samples[i].first + "*" + samples[i + 1].first, h.mul(samples[i].second, samples[i + 1].second)});
  auto run = [&](const std::string& axiom, auto&& pred) {
    AxiomCheck c{axiom, true, ""};
    for (const auto& [name, a] : samples) {
      if (!pred(a)) {
        c.ok = false;
        c.witness = name;
        break;
      }
    }
    rep.checks.push_back(std::move(c));
  };
  run("(eps x 1) psi = id", [&](const auto& a) { return h.equal(h.eps_left(h.psi(a)), a); });
  run("(1 x eps) psi = id", [&](const auto& a) { return h.equal(h.eps_right(h.psi(a)), a); });
  run("(psi x 1) psi = (1 x psi) psi", [&](const auto& a) {
    auto p = h.psi(a);
    return h.equal3(h.psi_left(p), h.psi_right(p));
  });
  run("chi chi = id", [&](const auto& a) { return h.equal(h.chi(h.chi(a)), a); });
  run("mu (chi x 1) psi = eta_R eps", [&](const auto& a) { return h.equal(h.mu_chi_left(h.psi(a)), h.eta_r(h.eps(a))); });
  run("mu (1 x chi) psi = eta_L eps", [&](const auto& a) { return h.equal(h.mu_chi_right(h.psi(a)), h.eta_l(h.eps(a))); });
  {
    AxiomCheck units{"chi eta_L = eta_R, chi eta_R = eta_L, eps eta = id, psi eta_L = eta_L x 1, psi eta_R = 1 x eta_R",
                     true, ""};
    int k = 0;
    for (const auto& r : h.base_samples()) {
      bool ok = h.equal(h.chi(h.eta_l(r)), h.eta_r(r)) && h.equal(h.chi(h.eta_r(r)), h.eta_l(r)) &&
                h.base_equal(h.eps(h.eta_l(r)), r) && h.base_equal(h.eps(h.eta_r(r)), r) &&
                h.equal2(h.psi(h.eta_l(r)), h.eta_l2(r)) && h.equal2(h.psi(h.eta_r(r)), h.eta_r2(r));
      if (!ok) {
        units.ok = false;
        units.witness = "base sample " + std::to_string(k);
        break;
      }
      ++k;
    }
    rep.checks.push_back(std::move(units));
  }
  AxiomCheck mult{"psi, eps, chi multiplicative", true, ""};
  for (std::size_t i = 0; i < samples.size() && mult.ok; ++i) {
    for (std::size_t j = 0; j < base && mult.ok; ++j) {
      const auto& a = samples[i].second;
      const auto& b = samples[j].second;
      auto ab = h.mul(a, b);
      bool ok = h.equal2(h.psi(ab), h.mul2(h.psi(a), h.psi(b))) &&
                h.base_equal(h.eps(ab), h.base_mul(h.eps(a), h.eps(b))) && h.equal(h.chi(ab), h.mul(h.chi(a), h.chi(b)));
      if (!ok) {
        mult.ok = false;
        mult.witness = samples[i].first + " * " + samples[j].first;
      }
    }
  }
  rep.checks.push_back(std::move(mult));
  return rep;
}

// ------------------------------------------------------------ series-backed

/// Hopf algebra over F_q presented on generators of a graded-commutative
/// polynomial ring; left and right units coincide.
class SeriesHopf {
 public:
  using Elem = TSeries;
  using Elem2 = TSeries;
  using Elem3 = TSeries;
  using Base = TowerElem;

  SeriesHopf(std::string name, TowerPtr tower, VarTablePtr vars);

  std::string name() const { return name_; }
  const TowerPtr& tower() const { return T_; }
  const VarTablePtr& vars() const { return V_; }
  const VarTablePtr& vars2() const { return V2_; }
  const VarTablePtr& vars3() const { return V3_; }
  std::size_t num_gens() const { return V_->size(); }
  TSeries gen(std::size_t i) const { return TSeries::var(V_, T_, i); }
  TSeries gen(const std::string& name) const { return TSeries::var(V_, T_, name); }
  TSeries one() const { return TSeries::one(V_, T_); }
  /// a (x) 1 and 1 (x) a.
  TSeries left(const TSeries& a) const;
  TSeries right(const TSeries& a) const;
  /// Factor k (0, 1, 2) of the triple tensor power.
  TSeries factor3(const TSeries& a, int k) const;

  // Structure maps on generators; set by the factories.
  std::vector<TSeries> psi_gen;  // in vars2()
  std::vector<TSeries> chi_gen;  // in vars()
  std::vector<TowerElem> eps_gen;

  std::vector<std::pair<std::string, TSeries>> samples() const;
  std::vector<TowerElem> base_samples() const;
  TSeries mul(const TSeries& a, const TSeries& b) const { return a * b; }
  TSeries mul2(const TSeries& a, const TSeries& b) const { return a * b; }
  TowerElem base_mul(const TowerElem& a, const TowerElem& b) const { return a * b; }
  TSeries eta_l(const TowerElem& r) const { return TSeries::constant(V_, T_, r); }
  TSeries eta_r(const TowerElem& r) const { return eta_l(r); }
  TSeries eta_l2(const TowerElem& r) const { return TSeries::constant(V2_, T_, r); }
  TSeries eta_r2(const TowerElem& r) const { return eta_l2(r); }
  TowerElem eps(const TSeries& a) const;
  TSeries chi(const TSeries& a) const { return a.substitute(chi_gen); }
  TSeries psi(const TSeries& a) const { return a.substitute(psi_gen); }
  TSeries eps_left(const TSeries& x) const;
  TSeries eps_right(const TSeries& x) const;
  TSeries psi_left(const TSeries& x) const;
  TSeries psi_right(const TSeries& x) const;
  TSeries mu_chi_left(const TSeries& x) const;
  TSeries mu_chi_right(const TSeries& x) const;
  bool equal(const TSeries& a, const TSeries& b) const { return a == b; }
  bool equal2(const TSeries& a, const TSeries& b) const { return a == b; }
  bool equal3(const TSeries& a, const TSeries& b) const { return a == b; }
  bool base_equal(const TowerElem& a, const TowerElem& b) const { return a == b; }
  std::string describe(const TSeries& a) const { return a.to_string(); }

 private:
  std::string name_;
  TowerPtr T_;
  VarTablePtr V_, V2_, V3_;
};

/// Exterior Hopf algebra on primitive odd b0..b{n-1}.
SeriesHopf exterior_hopf(int p, int n, const TowerPtr& tower);
/// Polynomial Hopf algebra on t1..tk with psi(t_m) = sum t_i (x) t_(m-i)^(p^i)
/// (t_0 = 1) and the antipode solved recursively as explicit polynomials.
SeriesHopf c_hopf(int p, int k, const TowerPtr& tower);

/// C (x) Lambda with psi(b_i) = 1 (x) b_i + sum_j b_j (x) t_(i-j)^(p^j).
struct CompositeHopf {
  int p = 0;
  int n = 0;
  int tbound = 0;
  SeriesHopf full;
  SeriesHopf c_part;
  SeriesHopf lambda;

  std::size_t t_index(int i) const { return static_cast<std::size_t>(i - 1); }
  std::size_t b_index(int i) const { return static_cast<std::size_t>(tbound + i); }
  TSeries t(int i) const;  // t_0 = 1
  TSeries b(int i) const { return full.gen(b_index(i)); }
};

/// t-generators t_1..t_tbound (tbound = 0 selects n).
CompositeHopf composite_hopf(int p, int n, const TowerPtr& tower, int tbound = 0);

/// The comultiplication formula on b_i as an element of full.vars2().
TSeries composite_psi_b(const CompositeHopf& H, int i);

/// psi(b_i), i < n, read off from psi(b(X)) = 1 (x) b(X) + (b (x) 1)(t(X)) with
/// b(X) = sum b_i X^(p^i) and t(X) = sum^F t_i X^(p^i), expanded mod X^(p^n).
std::vector<TSeries> derive_psi_from_coaction(const CompositeHopf& H, const FGL& F);

/// Ring map between series Hopf algebras given on generators.
struct HopfMap {
  const SeriesHopf* src = nullptr;
  const SeriesHopf* dst = nullptr;
  std::vector<TSeries> images;  // in dst->vars()

  TSeries operator()(const TSeries& a) const { return a.substitute(images); }
  TSeries tensor2(const TSeries& x) const;
};

HopfMap pi_c(const CompositeHopf& H);       // b -> 0
HopfMap pi_lambda(const CompositeHopf& H);  // t -> 0
HopfMap i_c(const CompositeHopf& H);
HopfMap i_lambda(const CompositeHopf& H);   // algebra map only
/// psi, eps and chi compatibility on generators.
std::vector<AxiomCheck> check_hopf_map(const HopfMap& f);
/// pi_C i_C = id, pi_Lambda i_Lambda = id, pi_Lambda i_C = eta eps, and the
/// Hopf-map checks for pi_C, pi_Lambda, i_C.
std::vector<AxiomCheck> check_splitting(const CompositeHopf& H);

/// Right C-coaction on Lambda, b_i -> sum_j b_j (x) t_(i-j)^(p^j), in full.vars2().
std::vector<TSeries> lambda_c_coaction(const CompositeHopf& H);
/// The same coaction read off from b(t(X)) mod X^(p^n).
std::vector<TSeries> lambda_c_coaction_from_series(const CompositeHopf& H, const FGL& F);

/// Matrix M with b^g_i = sum_j M[i][j] b_j, from b(t(g)^-1(X)) mod X^(p^n).
/// t(g) must be invertible with only p-power terms below X^(p^n).
std::vector<std::vector<TowerElem>> lambda_action(int p, int n, const TSeries& tg);

// ------------------------------------------------------------ C(G, R)

struct FiniteGroup {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> table;  // table[a][b] = a*b
  int identity = 0;
  std::vector<int> inverse;
  std::vector<std::string> names;

  int mul(int a, int b) const { return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  static FiniteGroup cyclic(int m);
  static FiniteGroup symmetric3();
  /// Parity of a permutation in symmetric3(); 0 for cyclic groups.
  std::vector<int> sign;
};

/// F_q[s]/(s^k) with a right G-action: g acts by sigma^frob[g] on F_q and
/// sends s to s_image[g].
class ActedRing {
 public:
  using Elem = std::vector<FiniteField::Elem>;

  ActedRing(std::string name, FieldPtr field, int k, std::vector<int> frob, std::vector<Elem> s_image);

  const std::string& name() const { return name_; }
  const FiniteField& field() const { return *F_; }
  int k() const { return k_; }
  Elem zero() const { return Elem(static_cast<std::size_t>(k_), 0); }
  Elem one() const;
  Elem from_fq(FiniteField::Elem c) const;
  Elem s() const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem act(const Elem& a, int g) const;
  Elem random(std::mt19937_64& rng) const;
  std::string to_string(const Elem& a) const;
  /// Generators of R whose images determine the action.
  std::vector<Elem> generators() const;

 private:
  std::string name_;
  FieldPtr F_;
  int k_;
  std::vector<int> frob_;
  std::vector<Elem> s_image_;
};

/// Functions G -> R stored as value tables; Gamma (x)_R Gamma is identified
/// with C(G x G, R) by m(a (x) b)(g1, g2) = a(g1)^g2 b(g2), and the triple
/// tensor with C(G^3, R) likewise.
class FunctionHopf {
 public:
  using Base = ActedRing::Elem;
  using Elem = std::vector<Base>;
  using Elem2 = std::vector<Base>;
  using Elem3 = std::vector<Base>;

  FunctionHopf(FiniteGroup G, ActedRing R, std::uint64_t seed = 1);

  const FiniteGroup& group() const { return G_; }
  const ActedRing& ring() const { return R_; }
  std::string name() const { return "C(" + G_.name + ", " + R_.name() + ")"; }

  /// Right action law r^(g1 g2) = (r^g1)^g2 on generators of R.
  bool action_is_valid() const;

  Elem delta(int g, const Base& r) const;
  Elem random(std::mt19937_64& rng) const;
  Elem2 m(const Elem& a, const Elem& b) const;
  Base at2(const Elem2& x, int g1, int g2) const { return x[idx2(g1, g2)]; }

  std::vector<std::pair<std::string, Elem>> samples() const;
  std::vector<Base> base_samples() const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem2 mul2(const Elem2& a, const Elem2& b) const;
  Base base_mul(const Base& a, const Base& b) const { return R_.mul(a, b); }
  Elem eta_l(const Base& r) const;
  Elem eta_r(const Base& r) const;
  Elem2 eta_l2(const Base& r) const;
  Elem2 eta_r2(const Base& r) const;
  Base eps(const Elem& a) const { return a[static_cast<std::size_t>(G_.identity)]; }
  Elem chi(const Elem& a) const;
  Elem2 psi(const Elem& a) const;
  Elem eps_left(const Elem2& x) const;
  Elem eps_right(const Elem2& x) const;
  Elem3 psi_left(const Elem2& x) const;
  Elem3 psi_right(const Elem2& x) const;
  Elem mu_chi_left(const Elem2& x) const;
  Elem mu_chi_right(const Elem2& x) const;
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool equal2(const Elem2& a, const Elem2& b) const { return a == b; }
  bool equal3(const Elem3& a, const Elem3& b) const { return a == b; }
  bool base_equal(const Base& a, const Base& b) const { return a == b; }
  std::string describe(const Elem& a) const;

  /// m sends the basis delta_g1 (x) delta_g2 to distinct indicator functions of
  /// G x G and is multiplicative on samples.
  bool m_is_isomorphism() const;

  std::size_t idx2(int g1, int g2) const { return static_cast<std::size_t>(g1 * G_.order + g2); }
  std::size_t idx3(int g1, int g2, int g3) const {
    return static_cast<std::size_t>((g1 * G_.order + g2) * G_.order + g3);
  }

 private:
  FiniteGroup G_;
  ActedRing R_;
  std::uint64_t seed_;
};

/// The two sample actions for Z/2, Z/3 and S3.
std::vector<FunctionHopf> standard_function_hopfs(std::uint64_t seed = 1);

struct FunctionHopfValues {
  ActedRing::Elem m_value;    // m(a, b)(g1, g2)
  ActedRing::Elem chi_value;  // chi(a)(g1)
  ActedRing::Elem eps_value;  // a(e)
  ActedRing::Elem psi_value;  // psi(a)(g1, g2)
};
FunctionHopfValues function_hopf_maps(const FunctionHopf& C, const FunctionHopf::Elem& a, const FunctionHopf::Elem& b,
                                      int g1, int g2);

}  // namespace chromalg
