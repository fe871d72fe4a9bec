#include <gtest/gtest.h>

#include "chromalg/error.hpp"
#include "chromalg/isofind.hpp"

namespace chromalg {
namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

TowerPtr laurent_for(int p, int n, int uprec) { return Tower::laurent(FiniteField::make(p, n * (n + 1)), uprec); }

// Generator of the multiplicative group of F_{p^n} inside F_q.
FiniteField::Elem fpn_gen(const FiniteField& F, int n) {
  return F.pow(F.primitive(), (F.order() - 1) / (ipow(F.p(), n) - 1));
}

TSeries lift_series_for_test(const TSeries& s, const TowerPtr& T) {
  return s.map_coeffs<TowerElem>(T, [&](const TowerElem& c) { return T->lift(c); });
}

TEST(Isofind, LazardCMatchesRationalQuotient) {
  const int p = 3;
  auto T = Tower::finite(FiniteField::make(3, 1));
  for (int d : {3, 9, 27}) {
    auto VQ = total_degree_table({"X", "Y"}, d + 1);
    RationalRing Q;
    auto X = QSeries::var(VQ, Q, 0), Y = QSeries::var(VQ, Q, 1);
    QSeries c = ((X + Y).pow(d) - X.pow(d) - Y.pow(d)).scale(PLocalRational(1, p));
    auto VT = xy_table(d + 1);
    TSeries reduced = c.map_coeffs<TowerElem>(T, [&](const PLocalRational& a) { return T->from_int(a.reduce_mod_p(p)); }, VT);
    EXPECT_EQ(reduced, lazard_c(d, p, VT, T)) << d;
  }
}

TEST(Isofind, ELawAtHeightOneSolvesToDegreeTen) {
  auto T = laurent_for(3, 1, 6);
  const int N = 11;
  FGL F = e_law(1, T, N);
  FGL H = honda_fgl(1, T, N);
  FGLIso iso = solve_phi(F, H, 1, {N, 6});
  EXPECT_EQ(iso.tower->e(), 2);
  EXPECT_EQ(iso.tower->num_gens(), 1);
  IsoReport r = verify_iso(iso);
  EXPECT_TRUE(r.ok) << r.discrepancy;
  EXPECT_TRUE(r.inverse_ok);
  EXPECT_EQ(iso.c[0], iso.tower->t_pow(1));
}

TEST(Isofind, ELawAdditiveConstantIsExactAndWithinPoleBound) {
  auto T = laurent_for(3, 1, 6);
  FGLIso iso = solve_phi(e_law(1, T, 11), honda_fgl(1, T, 11), 1, {11, 6});
  TowerElem rule = iso.tower->rule_rhs(0);
  EXPECT_EQ(rule.precision(), LSeries::kExact);
  EXPECT_GE(rule.valuation(), -2 * (3 - 1) * iso.tower->e());
  EXPECT_EQ(iso.free_indices, std::vector<int>{2});
  // A tighter pole bound refuses the same extension.
  try {
    solve_phi(e_law(1, T, 11), honda_fgl(1, T, 11), 1, {11, 6, 3});
    FAIL() << "expected PrecisionExhausted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionExhausted);
  }
}

TEST(Isofind, HeightTwoUsesOneRamifiedFold) {
  auto T = laurent_for(3, 2, 4);
  const int N = 10;
  FGLIso iso = solve_phi(e_law(2, T, N), honda_fgl(2, T, N), 2, {N, 4});
  EXPECT_EQ(iso.tower->e(), 8);
  EXPECT_EQ(iso.tower->num_gens(), 0);
  EXPECT_TRUE(verify_iso(iso).ok);
}

TEST(Isofind, HondaOverLaurentGivesIdentity) {
  auto T = laurent_for(5, 1, 4);
  FGLIso iso = solve_phi(honda_fgl(1, T, 30), honda_fgl(1, Tower::finite(T->field()), 30), 1, {});
  EXPECT_EQ(iso.tower.get(), T.get());
  EXPECT_EQ(iso.phi, TSeries::var(x_table(30), T, 0));
}

// c(X) = X +_H gamma X^p conjugates H into a law with the same solver shape.
FGL conjugate(const FGL& H, const TSeries& c) {
  auto V2 = H.F.vars();
  const auto& T = H.tower();
  TSeries cX = c.substitute({TSeries::var(V2, T, 0)}), cY = c.substitute({TSeries::var(V2, T, 1)});
  return user_fgl(c.reverse().substitute({H.F.substitute({cX, cY})}), H.p);
}

TEST(Isofind, ConjugatedLawRoundTrip) {
  auto T = laurent_for(3, 1, 6);
  const int N = 11;
  FGL H = honda_fgl(1, T, N);
  auto V = x_table(N);
  TowerElem gamma = T->one() + T->u_pow(1);
  TSeries c = formal_sum(H, {TSeries::var(V, T, 0), TSeries::var(V, T, 0, 3).scale(gamma)});
  FGL F = conjugate(H, c);
  EXPECT_TRUE(check_fgl_axioms(F).empty());
  FGLIso iso = solve_phi(F, H, 1, {N, 6});
  EXPECT_TRUE(verify_iso(iso).ok);
  TSeries back = iso.phi.substitute({lift_series_for_test(c, iso.tower).reverse()});
  EXPECT_TRUE(is_honda_automorphism(H, 1, back)) << back.to_string();
  EXPECT_FALSE(is_honda_automorphism(H, 1, lift_series_for_test(c, iso.tower)));
}

TEST(Isofind, ComposingWithAutomorphismStaysIso) {
  auto T = laurent_for(3, 2, 4);
  const int N = 10;
  FGL H = honda_fgl(2, T, N);
  FGLIso iso = solve_phi(e_law(2, T, N), H, 2, {N, 4});
  const auto& Fq = *T->field();
  auto Hf = honda_fgl(2, iso.tower, N);
  auto t = HondaEndo::make(Hf, 2, {iso.tower->from_fq(fpn_gen(Fq, 2)), iso.tower->one()}, N);
  ASSERT_TRUE(t.is_endomorphism());
  FGLIso other = make_iso(iso.source, iso.target, 2, t.series.substitute({iso.phi}));
  EXPECT_TRUE(verify_iso(other).ok);
}

TEST(Isofind, EquivarianceUnderHondaAutomorphisms) {
  auto T = laurent_for(3, 2, 4);
  const int N = 10;
  FGLIso iso = solve_phi(e_law(2, T, N), honda_fgl(2, T, N), 2, {N, 4});
  const auto& Fq = *T->field();
  ASSERT_FALSE(Fq.in_subfield(fpn_gen(Fq, 2), 1));
  auto t = HondaEndo::make(iso.target, 2, {iso.tower->from_fq(fpn_gen(Fq, 2))}, N);
  EquivarianceReport r = check_equivariance(iso, {WitnessKind::Gn, t.series, 0});
  EXPECT_TRUE(r.ok) << r.detail;
  ASSERT_TRUE(r.action);
  EXPECT_EQ(r.action->alpha(), fpn_gen(Fq, 2));
  // Frobenius on coefficients with the identity series.
  EquivarianceReport g = check_equivariance(iso, {WitnessKind::Gn, TSeries::var(x_table(N), iso.tower, 0), 1});
  EXPECT_TRUE(g.ok) << g.detail;
}

TEST(Isofind, EquivarianceUnderCentralSourceAutomorphism) {
  auto T = laurent_for(3, 1, 6);
  const int N = 11;
  FGLIso iso = solve_phi(e_law(1, T, N), honda_fgl(1, T, N), 1, {N, 6});
  auto V = x_table(N);
  TSeries X = TSeries::var(V, iso.tower, 0);
  TSeries two = formal_sum(iso.source, {X, X});
  EquivarianceReport r = check_equivariance(iso, {WitnessKind::GnPlus1, two, 0});
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.compared_below, 9);
  TSeries bad = X + X.pow(2);
  try {
    check_equivariance(iso, {WitnessKind::GnPlus1, bad, 0});
    FAIL() << "expected InvalidWitness";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidWitness);
  }
}

TEST(Isofind, SerializedIsoReloadsOverItsBase) {
  for (int n : {1, 2}) {
    const int N = n == 1 ? 11 : 10, uprec = n == 1 ? 6 : 4;
    auto T = laurent_for(3, n, uprec);
    FGLIso iso = solve_phi(e_law(n, T, N), honda_fgl(n, T, N), n, {N, uprec});
    auto base = Tower::parse_descriptor(T->descriptor());
    auto L = Tower::replay_over(base, *Tower::parse_descriptor(iso.tower->descriptor()));
    ASSERT_EQ(L->descriptor(), iso.tower->descriptor());
    FGLIso back = make_iso(e_law(n, base, N), honda_fgl(n, base, N), n, TSeries::from_json(iso.phi.to_json(), L));
    EXPECT_EQ(back.c_gen, iso.c_gen) << "n=" << n;
    EXPECT_EQ(back.free_indices, iso.free_indices) << "n=" << n;
    EXPECT_TRUE(verify_iso(back).ok);
    TSeries X = TSeries::var(x_table(N), L, 0);
    EXPECT_TRUE(check_equivariance(back, {WitnessKind::GnPlus1, formal_sum(back.source, {X, X}), 0}).ok) << "n=" << n;
    EXPECT_TRUE(check_equivariance(back, {WitnessKind::Gn, X, 1}).ok) << "n=" << n;
  }
  auto other = Tower::laurent(FiniteField::make(5, 2), 6);
  auto T = laurent_for(3, 1, 6);
  FGLIso iso = solve_phi(e_law(1, T, 11), honda_fgl(1, T, 11), 1, {11, 6});
  EXPECT_THROW(Tower::replay_over(other, *iso.tower), Error);
}

TEST(Isofind, RejectsWrongHeight) {
  auto T = laurent_for(3, 1, 4);
  try {
    solve_phi(e_law(1, T, 11), honda_fgl(1, T, 11), 2, {11, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedExtension);
  }
}

}  // namespace
}  // namespace chromalg
