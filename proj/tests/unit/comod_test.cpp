#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "chromalg/comod.hpp"
#include "chromalg/error.hpp"

namespace chromalg {
namespace {

bool all_ok(const std::vector<AxiomCheck>& cs, std::string* why = nullptr) {
  for (const auto& c : cs)
    if (!c.ok) {
      if (why) *why = c.axiom + " @ " + c.witness;
      return false;
    }
  return true;
}

#define EXPECT_ALL_OK(cs)             \
  do {                                \
    std::string why_;                 \
    EXPECT_TRUE(all_ok(cs, &why_)) << why_;  \
  } while (0)

TEST(Comod, TwistedAndComoduleAreEquivalent) {
  const auto hs = standard_function_hopfs(3);
  std::mt19937_64 rng(11);
  for (const auto& C : hs) {
    const int o = C.group().order;
    for (const auto& T : {trivial_twisted(C, 2), random_twisted(C, o + 1, rng), random_twisted(C, 2, rng)}) {
      EXPECT_ALL_OK(check_twisted(T));
      const GroupComodule M = twisted_to_comod(T);
      EXPECT_ALL_OK(check_comodule(M));
      EXPECT_EQ(comod_to_twisted(M).action, T.action) << C.name();
      EXPECT_EQ(twisted_to_comod(comod_to_twisted(M)).rho, M.rho);
    }
    const auto a = random_twisted(C, 2, rng), b = random_twisted(C, o, rng);
    const auto ab = tensor(a, b);
    EXPECT_ALL_OK(check_twisted(ab));
    EXPECT_EQ(twisted_to_comod(ab).rho, tensor(twisted_to_comod(a), twisted_to_comod(b)).rho) << C.name();
  }
}

TEST(Comod, RankOneSignCharacter) {
  const auto hs = standard_function_hopfs();
  const FunctionHopf& C = hs[0];
  const auto& R = C.ring();
  GroupComodule M{&C, {{FunctionHopf::Elem{R.one(), R.neg(R.one())}}}};
  EXPECT_ALL_OK(check_comodule(M));
  const auto T = comod_to_twisted(M);
  EXPECT_EQ(T.act({R.one()}, 1), std::vector<ActedRing::Elem>{R.neg(R.one())});
  EXPECT_EQ(T.act({R.one()}, 0), std::vector<ActedRing::Elem>{R.one()});
  EXPECT_EQ(comod_to_twisted(twisted_to_comod(trivial_twisted(C, 1))).action[1][0][0], R.one());
  // A non-cocycle breaks the action law.
  TwistedModule bad = trivial_twisted(C, 1);
  bad.action[1][0][0] = R.s();
  EXPECT_FALSE(all_ok(check_twisted(bad)));
  EXPECT_FALSE(all_ok(check_comodule(twisted_to_comod(bad))));
}

TEST(Comod, MilnorToyAndTrivial) {
  auto T = Tower::finite(FiniteField::make(3, 1));
  auto L = exterior_hopf(3, 1, T);
  auto triv = trivial_comodule(L, {"a", "b"}, {0, 1});
  for (const auto& Q : extract_milnor(triv, 1).Q)
    for (const auto& row : Q)
      for (const auto& x : row) EXPECT_TRUE(x.is_zero());
  for (int odd = 0; odd < 2; ++odd) {
    Comodule M = trivial_comodule(L, {"m0", "m1"}, {odd ? 0 : 1, odd});
    M.rho[1][0] = L.gen(0);
    EXPECT_ALL_OK(check_comodule(M));
    const auto Q = extract_milnor(M, 1);
    EXPECT_EQ(Q.Q[0][1][0], odd ? T->one() : -T->one());
    EXPECT_TRUE(Q.Q[0][0][0].is_zero());
  }
}

TEST(Comod, LensMilnorOperations) {
  for (int n = 1; n <= 3; ++n) {
    auto H = composite_hopf(3, n, Tower::finite(FiniteField::make(3, 1)));
    for (const Comodule& M : {lens_lambda_comodule(H), lens_comodule(H)}) {
      EXPECT_ALL_OK(check_comodule(M));
      const auto Q = extract_milnor(M, n);
      EXPECT_TRUE(Q.anticommutation().ok);
      const std::size_t y = lens_index(3, n, true, 0);
      for (int i = 0; i < n; ++i)
        for (std::size_t l = 0; l < M.rank(); ++l) {
          const int pi = static_cast<int>(std::pow(3, i));
          EXPECT_EQ(Q.Q[static_cast<std::size_t>(i)][y][l].is_one(), l == lens_index(3, n, false, pi));
        }
    }
  }
}

TEST(Comod, MilnorDerivationRule) {
  auto H = composite_hopf(3, 1, Tower::finite(FiniteField::make(3, 1)));
  const Comodule L = lens_lambda_comodule(H);
  EXPECT_ALL_OK(milnor_derivation_check(L, L, 1));
  const Comodule LL = tensor(L, L);
  const auto Q = extract_milnor(LL, 1);
  const std::size_t y = lens_index(3, 1, true, 0), x = lens_index(3, 1, false, 1), r = L.rank();
  const auto& row = Q.Q[0][y * r + y];
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (c == y * r + x) EXPECT_TRUE(row[c].is_one());
    else if (c == x * r + y) EXPECT_EQ(row[c], -H.full.tower()->one());
    else EXPECT_TRUE(row[c].is_zero()) << LL.names[c];
  }
  std::mt19937_64 rng(5);
  auto T9 = Tower::finite(FiniteField::make(3, 2));
  for (int n = 1; n <= 2; ++n) {
    auto Lam = exterior_hopf(3, n, T9);
    for (int it = 0; it < 4; ++it) {
      const auto a = random_lambda_comodule(Lam, 1 + it % 2, rng), b = random_lambda_comodule(Lam, 1, rng);
      EXPECT_ALL_OK(check_comodule(a));
      EXPECT_ALL_OK(milnor_derivation_check(a, b, n));
    }
  }
}

TEST(Comod, AnticommutationOnRandomComodules) {
  std::mt19937_64 rng(17);
  auto T = Tower::finite(FiniteField::make(5, 1));
  for (int it = 0; it < 100; ++it) {
    const int n = 1 + it % 3;
    auto Lam = exterior_hopf(5, n, T);
    const auto M = random_lambda_comodule(Lam, 1 + it % 2, rng);
    ASSERT_TRUE(extract_milnor(M, n).anticommutation().ok) << it;
  }
}

TEST(Comod, TwistedMilnorOperations) {
  auto F9 = FiniteField::make(3, 2);
  auto T = Tower::finite(F9);
  const auto a0 = T->from_fq(F9->gen()), a1 = T->from_fq(F9->add(F9->gen(), 1));
  {
    auto H = composite_hopf(3, 1, T);
    const Comodule L = lens_comodule(H);
    EXPECT_ALL_OK(milnor_twist_check(L, H, {T->one()}));
    EXPECT_ALL_OK(milnor_twist_check(L, H, {a0}));
    const auto Q = extract_milnor(L, 1);
    const TMatrix A = twist_action(L, H, {a0});
    // (Q_0)^g = a_0 Q_0
    const auto conj = matmul(matmul(invert(A), Q.Q[0]), A);
    for (std::size_t k = 0; k < L.rank(); ++k)
      for (std::size_t l = 0; l < L.rank(); ++l) EXPECT_EQ(conj[k][l], Q.Q[0][k][l] * a0);
  }
  auto H = composite_hopf(3, 2, T);
  const Comodule L = lens_comodule(H);
  EXPECT_ALL_OK(milnor_twist_check(L, H, {a0, a1}));
  const auto Q = extract_milnor(L, 2);
  const TMatrix A = twist_action(L, H, {a0, a1});
  const std::size_t y = lens_index(3, 2, true, 0), x = lens_index(3, 2, false, 1), x3 = lens_index(3, 2, false, 3);
  // x -> a0 x + a1 x^3 and y is fixed.
  EXPECT_EQ(A[x][x], a0);
  EXPECT_EQ(A[x][x3], a1);
  EXPECT_TRUE(A[y][y].is_one());
  const auto conj = matmul(matmul(invert(A), Q.Q[0]), A);
  for (std::size_t k = 0; k < L.rank(); ++k)
    for (std::size_t l = 0; l < L.rank(); ++l) EXPECT_EQ(conj[k][l], Q.Q[0][k][l] * a0 + Q.Q[1][k][l] * a1);
  try {
    milnor_twist_check(L, H, {T->zero(), a1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidWitness);
  }
}

TEST(Comod, RecognizesMilnorCombinations) {
  auto T = Tower::finite(FiniteField::make(3, 1));
  auto H = composite_hopf(3, 2, T);
  const Comodule L = lens_lambda_comodule(H);
  const auto Q = extract_milnor(L, 2);
  const std::size_t y = lens_index(3, 2, true, 0);
  const TowerElem two = T->from_int(2);
  TMatrix D = Q.Q[0];
  for (auto& row : D)
    for (auto& x : row) x *= two;
  for (std::size_t k = 0; k < D.size(); ++k)
    for (std::size_t l = 0; l < D.size(); ++l) D[k][l] += Q.Q[1][k][l];
  auto r = recognize_milnor(Q, D, y);
  ASSERT_TRUE(r.in_span) << r.witness;
  EXPECT_EQ(r.q[0], two);
  EXPECT_TRUE(r.q[1].is_one());
  D[lens_index(3, 2, true, 1)][lens_index(3, 2, false, 2)] += T->one();
  EXPECT_FALSE(recognize_milnor(Q, D, y).in_span);
}

TEST(Comod, AssemblyRoundTrips) {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 3; ++n) {
    auto H = composite_hopf(3, n, Tower::finite(FiniteField::make(3, 1)));
    const Comodule full = lens_comodule(H);
    CLambdaComodule parts{&H, lens_c_comodule(H), lens_lambda_comodule(H)};
    EXPECT_TRUE(compatibility_check(parts).ok);
    const Comodule built = assemble(parts);
    EXPECT_EQ(built.rho, full.rho) << n;
    EXPECT_ALL_OK(check_comodule(built));
    const auto back = split(built, H);
    EXPECT_EQ(back.c.rho, parts.c.rho);
    EXPECT_EQ(back.lambda.rho, parts.lambda.rho);

    if (n <= 2) {
      const Comodule M = random_composite_comodule(H, rng);
      EXPECT_ALL_OK(check_comodule(M));
      EXPECT_EQ(assemble(split(M, H)).rho, M.rho);
      const auto parts2 = split(M, H);
      EXPECT_ALL_OK(nine_diagram_check(parts2));
      const auto again = split(assemble(parts2), H);
      EXPECT_EQ(again.c.rho, parts2.c.rho);
      EXPECT_EQ(again.lambda.rho, parts2.lambda.rho);
      // The basis change is not the identity.
      EXPECT_NE(M.rho, tensor(full, trivial_comodule(H.full, {"e0", "e1"}, {0, 2})).rho);
    }

    auto triv = trivial_comodule(H.full, {"a", "b"}, {0, 1});
    EXPECT_EQ(assemble(split(triv, H)).rho, triv.rho);
  }
  auto H = composite_hopf(3, 1, Tower::finite(FiniteField::make(3, 1)));
  const Comodule LL = tensor(lens_comodule(H), lens_comodule(H));
  EXPECT_ALL_OK(check_comodule(LL));
  EXPECT_EQ(assemble(split(LL, H)).rho, LL.rho);
}

TEST(Comod, NonColinearPairIsRejected) {
  auto H = composite_hopf(3, 2, Tower::finite(FiniteField::make(3, 1)));
  const auto& Lam = H.lambda;
  auto ry = lens_basis_vector(Lam, 3, 2, "y", Lam.one());
  auto v0 = lens_basis_vector(Lam, 3, 2, "x", Lam.gen("b0"));
  auto v1 = lens_basis_vector(Lam, 3, 2, "x^2", Lam.gen("b1"));
  for (std::size_t k = 0; k < ry.size(); ++k) ry[k] += v0[k] + v1[k];
  const Comodule bent = multiplicative_lens(Lam, 3, 2, lens_basis_vector(Lam, 3, 2, "x", Lam.one()), ry);
  EXPECT_ALL_OK(check_comodule(bent));
  CLambdaComodule pair{&H, lens_c_comodule(H), bent};
  const auto c = compatibility_check(pair);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.witness, "y");
  try {
    assemble(pair);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CompatibilityFailure);
  }
  EXPECT_FALSE(all_ok(nine_diagram_check(pair)));
}

TEST(Comod, NineDiagramCommutes) {
  auto H1 = composite_hopf(3, 1, Tower::finite(FiniteField::make(3, 1)));
  EXPECT_ALL_OK(nine_diagram_check(split(trivial_comodule(H1.full, {"a"}, {0}), H1)));
  auto H = composite_hopf(3, 2, Tower::finite(FiniteField::make(3, 1)));
  EXPECT_ALL_OK(nine_diagram_check(split(lens_comodule(H), H)));
  for (int p : {3, 5}) {
    auto H3 = composite_hopf(p, 3, Tower::finite(FiniteField::make(p, 1)));
    EXPECT_ALL_OK(generator_identities(H3));
  }
}

}  // namespace
}  // namespace chromalg
