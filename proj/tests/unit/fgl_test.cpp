#include <gtest/gtest.h>

#include <random>

#include "chromalg/fgl.hpp"

namespace chromalg {
namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

TowerPtr laurent_for(int p, int n, int uprec = 4) { return Tower::laurent(FiniteField::make(p, n * (n + 1)), uprec); }

struct Case {
  int p, n;
};
const Case kCases[] = {{3, 1}, {3, 2}, {5, 1}};

TEST(Fgl, AxiomsForHondaAndELaw) {
  for (auto [p, n] : kCases) {
    auto T = laurent_for(p, n);
    int N = ipow(p, n + 1) + p;
    for (const FGL& F : {honda_fgl(n, T, N), e_law(n, T, N)}) {
      auto fails = check_fgl_axioms(F);
      EXPECT_TRUE(fails.empty()) << p << "," << n << ": " << (fails.empty() ? "" : fails[0].axiom + " " + fails[0].witness);
      EXPECT_TRUE(strict_height_at_least(F, n));
    }
  }
}

TEST(Fgl, AllVZeroIsAdditive) {
  auto T = laurent_for(3, 1);
  auto F = specialize_hazewinkel(3, {}, T, 12);
  EXPECT_EQ(F.F, additive_fgl(T, 12).F);
}

TEST(Fgl, VnOneMatchesHonda) {
  for (auto [p, n] : kCases) {
    auto T = laurent_for(p, n);
    int N = ipow(p, 2 * n) + 1;
    auto S = specialize_hazewinkel(p, {VAssignment::of_int(n, 1, -(ipow(p, n) - 1))}, T, N);
    EXPECT_EQ(S.F, honda_fgl(n, T, N).F) << p << "," << n;
  }
}

// [p](X) from exp(p log X) with v_1 symbolic, reduced mod p; independent of formal sums.
TSeries e_pseries_oracle(int p, const TowerPtr& T, int N) {
  auto V = VarTable::make({{"X", 0, Parity::Even, 0, 1}, {"v", 0, Parity::Even, 0, 0}}, N);
  RationalRing Q;
  auto X = QSeries::var(V, Q, 0), v = QSeries::var(V, Q, 1);
  auto logc = hazewinkel_log(p, 2);
  // m_1 = v1/p, m_2 = (v2 + v1^(p+1)/p)/p with v2 = 1.
  QSeries m1 = v.scale(PLocalRational(1, p));
  QSeries m2 = (QSeries::one(V, Q) + v.pow(p + 1).scale(PLocalRational(1, p))).scale(PLocalRational(1, p));
  EXPECT_EQ(logc[1].to_string(), "{1/" + std::to_string(p) + "}*v1");
  auto log = [&](const QSeries& s) { return s + s.pow(p) * m1 + s.pow(p * p) * m2; };
  QSeries g = X;
  for (int it = 0; it < N; ++it) g = X - g.pow(p) * m1 - g.pow(p * p) * m2;
  QSeries ps = g.substitute({log(X).scale(PLocalRational(p)), v});
  auto V1 = univariate("X", N);
  std::vector<TSeries::Term> terms;
  for (const auto& [m, c] : ps.terms()) {
    Monomial mm;
    mm.e[0] = m.e[0];
    terms.push_back({mm, T->from_int(c.reduce_mod_p(p)) * T->u_pow(m.e[1])});
  }
  return TSeries::from_terms(V1, T, std::move(terms));
}

TEST(Fgl, PSeries) {
  for (auto [p, n] : kCases) {
    auto T = laurent_for(p, n);
    int N = ipow(p, n + 1) + p;
    auto H = honda_fgl(n, T, N);
    auto X = TSeries::var(x_table(N), T, 0);
    EXPECT_EQ(p_series(H), X.pow(ipow(p, n)));
    auto E = e_law(n, T, N);
    auto ps = p_series(E);
    ASSERT_FALSE(ps.is_zero());
    const auto& [m, c] = ps.terms().front();
    EXPECT_EQ(m.e[0], ipow(p, n));
    EXPECT_EQ(c, T->u_pow(1));
  }
  auto T = laurent_for(3, 1, 6);
  EXPECT_EQ(p_series(e_law(1, T, 12)), e_pseries_oracle(3, T, 12));
  auto T9 = Tower::finite(FiniteField::make(3, 2));
  EXPECT_EQ(p_series(multiplicative_fgl(T9, 10)).to_string(), "{1}*X^3");
  EXPECT_TRUE(p_series(additive_fgl(T9, 10)).is_zero());
  auto T6 = Tower::finite(FiniteField::make(3, 6));
  EXPECT_EQ(p_series(honda_fgl(2, T6, 27)).to_string(), "{1}*X^9");
  EXPECT_EQ(height(honda_fgl(2, T6, 27)), 2);
}

TEST(Fgl, HondaIsAdditiveBelowPn) {
  auto T6 = Tower::finite(FiniteField::make(3, 6));
  auto H = honda_fgl(2, T6, 28);
  auto d = H.F - TSeries::var(H.F.vars(), T6, 0) - TSeries::var(H.F.vars(), T6, 1);
  EXPECT_TRUE(d.truncate_total(9).is_zero());
  EXPECT_FALSE(d.is_zero());
}

TEST(Fgl, GradingMismatch) {
  auto T = laurent_for(3, 1);
  try {
    specialize_hazewinkel(3, {VAssignment::of_elem(1, T->u_pow(1), -1)}, T, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GradingMismatch);
  }
}

TEST(Fgl, FormalSumBracketingAndLinearization) {
  auto T = Tower::finite(FiniteField::make(3, 6));
  const int n = 2, N = 28;
  auto H = honda_fgl(n, T, N);
  auto V = x_table(N);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::uint32_t> c(0, T->field()->order() - 1);
  for (int it = 0; it < 20; ++it) {
    std::vector<TSeries> s;
    for (int i = 0; i < 3; ++i) s.push_back(TSeries::var(V, T, 0, ipow(3, i)).scale(T->from_fq(c(rng))));
    auto left = formal_sum(H, s);
    auto right = formal_sum(H, {s[0], formal_sum(H, {s[1], s[2]})});
    EXPECT_EQ(left, right);
    EXPECT_EQ(left.truncate_total(9), (s[0] + s[1]).truncate_total(9));
  }
  EXPECT_EQ(formal_sum(H, {TSeries::var(V, T, 0)}), TSeries::var(V, T, 0));
}

TEST(Fgl, HondaEndomorphisms) {
  auto T = Tower::finite(FiniteField::make(3, 2));
  auto H1 = honda_fgl(1, T, 28);
  auto id = HondaEndo::make(H1, 1, {T->one()}, 28);
  EXPECT_EQ(id.series, TSeries::var(x_table(28), T, 0));
  auto fr = HondaEndo::make(H1, 1, {T->zero(), T->one()}, 28);
  EXPECT_EQ(fr.series.to_string(), "{1}*X^3");
  EXPECT_EQ(fr.series, p_series(H1));
  EXPECT_TRUE(fr.is_endomorphism());
  EXPECT_FALSE(fr.is_automorphism());

  auto T6 = Tower::finite(FiniteField::make(3, 6));
  auto H2 = honda_fgl(2, T6, 28);
  auto fr2 = HondaEndo::make(H2, 2, {T6->zero(), T6->one()}, 28);
  EXPECT_EQ(fr2.compose(fr2), p_series(H2));
  FiniteField::Elem in_f9 = 0;
  for (FiniteField::Elem a = 2; a < T6->field()->order(); ++a)
    if (T6->field()->in_subfield(a, 2) && !T6->field()->in_subfield(a, 1)) {
      in_f9 = a;
      break;
    }
  auto h = HondaEndo::make(H2, 2, {T6->from_fq(in_f9), T6->from_fq(in_f9)}, 28);
  EXPECT_TRUE(h.is_automorphism());
  EXPECT_TRUE(h.is_endomorphism());
  auto k = HondaEndo::make(H2, 2, {T6->one(), T6->from_fq(in_f9)}, 28);
  auto comp = HondaEndo{H2, 2, {}, h.compose(k)};
  EXPECT_TRUE(comp.is_endomorphism());
  auto sum = HondaEndo{H2, 2, {}, h.add(k)};
  EXPECT_TRUE(sum.is_endomorphism());
  FiniteField::Elem in_f27 = 0;
  for (FiniteField::Elem a = 2; a < T6->field()->order(); ++a)
    if (T6->field()->in_subfield(a, 3) && !T6->field()->in_subfield(a, 1)) {
      in_f27 = a;
      break;
    }
  try {
    HondaEndo::make(H2, 2, {T6->from_fq(in_f27)}, 28);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoefficientNotInFpn);
  }
}

TEST(Fgl, BaseExtensionCommutes) {
  auto small = FiniteField::make(3, 2), big = FiniteField::make(3, 6);
  FieldEmbedding emb(small, big);
  auto Ts = Tower::laurent(small, 4), Tb = Tower::laurent(big, 4);
  for (const auto& [Fs, Fb] : {std::pair{e_law(1, Ts, 12), e_law(1, Tb, 12)}, {honda_fgl(2, Ts, 12), honda_fgl(2, Tb, 12)}}) {
    auto mapped = Fs.F.map_coeffs<TowerElem>(Tb, [&](const TowerElem& c) { return base_change(c, *Tb, emb); });
    EXPECT_EQ(mapped, Fb.F);
  }
}

}  // namespace
}  // namespace chromalg
