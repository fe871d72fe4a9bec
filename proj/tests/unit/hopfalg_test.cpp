#include <gtest/gtest.h>

#include "chromalg/error.hpp"
#include "chromalg/hopfalg.hpp"

namespace chromalg {
namespace {

std::string failures(const HopfReport& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.ok) s += c.axiom + " @ " + c.witness + "; ";
  return s;
}

TowerPtr finite(int p, int m) { return Tower::finite(FiniteField::make(p, m)); }

TEST(Hopfalg, ExteriorAxioms) {
  for (int p : {3, 5})
    for (int n = 1; n <= 3; ++n) {
      auto r = check_axioms(exterior_hopf(p, n, finite(p, n)));
      EXPECT_TRUE(r.ok()) << p << "," << n << ": " << failures(r);
    }
}

TEST(Hopfalg, FunctionHopfAxiomsForAllSampleActions) {
  auto hs = standard_function_hopfs(7);
  ASSERT_EQ(hs.size(), 6u);
  for (const auto& C : hs) {
    EXPECT_TRUE(C.action_is_valid()) << C.name();
    auto r = check_axioms(C);
    EXPECT_TRUE(r.ok()) << C.name() << ": " << failures(r);
    EXPECT_TRUE(C.m_is_isomorphism()) << C.name();
  }
}

TEST(Hopfalg, FunctionHopfFormulaValues) {
  const auto hs = standard_function_hopfs();
  const FunctionHopf& C = hs[0];  // Z/2 on F3[s]/(s^2), s -> -s
  const auto& R = C.ring();
  FunctionHopf::Elem alpha{R.one(), R.s()};
  auto v = function_hopf_maps(C, alpha, alpha, 1, 1);
  EXPECT_EQ(v.chi_value, R.neg(R.s()));
  EXPECT_EQ(v.eps_value, R.one());
  EXPECT_EQ(v.psi_value, alpha[0]);  // alpha(g^2) = alpha(e)
  // m(a, b)(g, g) = a(g)^g b(g) = (-s) s = 0
  EXPECT_EQ(v.m_value, R.zero());
  FunctionHopf::Elem constant = C.eta_r(R.s());
  EXPECT_EQ(C.chi(constant), C.eta_l(R.s()));
  EXPECT_EQ(C.eps(constant), R.s());
}

TEST(Hopfalg, BrokenActionIsDetected) {
  auto F3 = FiniteField::make(3, 1);
  using E = ActedRing::Elem;
  // s -> s + s^2 does not have order 2.
  FunctionHopf C(FiniteGroup::cyclic(2), ActedRing("bad", F3, 3, {0, 0}, {E{0, 1, 0}, E{0, 1, 1}}));
  EXPECT_FALSE(C.action_is_valid());
  EXPECT_FALSE(check_axioms(C).ok());
}

TEST(Hopfalg, CompositeAxiomsAndSplitting) {
  for (int p : {3, 5})
    for (int n = 1; n <= 3; ++n) {
      auto H = composite_hopf(p, n, finite(p, 1));
      auto r = check_axioms(H.full);
      EXPECT_TRUE(r.ok()) << p << "," << n << ": " << failures(r);
      for (const auto& c : check_splitting(H)) EXPECT_TRUE(c.ok) << c.axiom << " @ " << c.witness;
      EXPECT_TRUE(check_axioms(H.c_part).ok());
    }
}

TEST(Hopfalg, CompositePsiValues) {
  auto H = composite_hopf(3, 2, finite(3, 1));
  const auto& A = H.full;
  EXPECT_EQ(composite_psi_b(H, 0), A.right(H.b(0)) + A.left(H.b(0)));
  EXPECT_EQ(composite_psi_b(H, 1), A.right(H.b(1)) + A.left(H.b(0)) * A.right(H.t(1)) + A.left(H.b(1)));
  for (int i = 0; i < 2; ++i) {
    EXPECT_TRUE(A.eps(H.b(i)).is_zero());
    EXPECT_TRUE(A.eps(A.eps_left(composite_psi_b(H, i))).is_zero());
  }
  EXPECT_THROW(composite_psi_b(H, 2), Error);
}

TEST(Hopfalg, DroppedTermBreaksCoassociativityAtB1) {
  auto H = composite_hopf(3, 2, finite(3, 1));
  auto& A = H.full;
  A.psi_gen[H.b_index(1)] = A.psi_gen[H.b_index(1)] - A.right(H.b(1));
  auto r = check_axioms(A);
  const AxiomCheck* f = nullptr;
  for (const auto& c : r.checks)
    if (c.axiom.rfind("(psi x 1)", 0) == 0) f = &c;
  ASSERT_NE(f, nullptr);
  EXPECT_FALSE(f->ok);
  EXPECT_EQ(f->witness, "b1");
}

TEST(Hopfalg, TwoRoutesToPsiAgree) {
  for (int p : {3, 5})
    for (int n = 1; n <= 3; ++n) {
      auto T = Tower::laurent(FiniteField::make(p, n), 4);
      const int N = static_cast<int>(std::pow(p, n)) + 1;
      auto H = composite_hopf(p, n, T);
      for (const FGL& F : {honda_fgl(n, T, N), e_law(n, T, N), additive_fgl(T, N)}) {
        auto derived = derive_psi_from_coaction(H, F);
        for (int i = 0; i < n; ++i) EXPECT_EQ(derived[static_cast<std::size_t>(i)], composite_psi_b(H, i)) << p << "," << n << "," << i;
      }
      auto rho = lambda_c_coaction(H);
      auto rho2 = lambda_c_coaction_from_series(H, honda_fgl(n, T, N));
      for (int i = 0; i < n; ++i) EXPECT_EQ(rho[static_cast<std::size_t>(i)], rho2[static_cast<std::size_t>(i)]);
    }
}

TEST(Hopfalg, DeriveRejectsLowHeight) {
  auto T = Tower::finite(FiniteField::make(3, 1));
  auto H = composite_hopf(3, 2, T);
  EXPECT_THROW(derive_psi_from_coaction(H, multiplicative_fgl(T, 10)), Error);
}

TEST(Hopfalg, LambdaActionFromHondaAutomorphism) {
  auto F9 = FiniteField::make(3, 2);
  auto T = Tower::finite(F9);
  auto V = x_table(9);
  auto X = TSeries::var(V, T, 0);
  EXPECT_EQ(lambda_action(3, 2, X)[1][0], T->zero());
  const auto a0 = F9->gen(), a1 = F9->add(F9->gen(), 2);
  TSeries t = X.scale(T->from_fq(a0)) + X.pow(3).scale(T->from_fq(a1));
  auto M = lambda_action(3, 2, t);
  // t^-1 = a0^-1 X - a1 a0^-4 X^3 mod X^9.
  const auto ia0 = F9->inv(a0);
  EXPECT_EQ(M[0][0], T->from_fq(ia0));
  EXPECT_EQ(M[0][1], T->zero());
  EXPECT_EQ(M[1][1], T->from_fq(F9->pow(ia0, 3)));
  EXPECT_EQ(M[1][0], T->from_fq(F9->neg(F9->mul(a1, F9->pow(ia0, 4)))));
  EXPECT_THROW(lambda_action(3, 2, X + X.pow(2)), Error);
}

}  // namespace
}  // namespace chromalg
