#include <gtest/gtest.h>

#include <random>

#include "chromalg/gseries.hpp"

namespace chromalg {
namespace {

TowerPtr f3() { static TowerPtr t = Tower::finite(FiniteField::make(3, 1)); return t; }

// Dense polynomial arithmetic over Q used as an independent oracle.
using Dense = std::vector<BigRational>;
Dense dense_mul(const Dense& a, const Dense& b, std::size_t n) {
  Dense r(n, 0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

TEST(GSeries, TruncatedProduct) {
  auto V = univariate("X", 3);
  auto T = f3();
  auto one = TSeries::one(V, T), X = TSeries::var(V, T, "X");
  auto p = (one + X) * (one - X);
  EXPECT_EQ(p.to_string(), "{1} + {2}*X^2");
}

TEST(GSeries, ExteriorSigns) {
  auto V = VarTable::make({{"a0", -1, Parity::Odd}, {"a1", -1, Parity::Odd}, {"y", 1, Parity::Odd}});
  auto T = f3();
  auto a0 = TSeries::var(V, T, "a0"), a1 = TSeries::var(V, T, "a1"), y = TSeries::var(V, T, "y");
  EXPECT_TRUE((y * y).is_zero());
  EXPECT_TRUE(((a0 * a1) * a0).is_zero());
  EXPECT_EQ(a0 * a1, -(a1 * a0));
  EXPECT_FALSE((a0 * a1).is_zero());
}

TEST(GSeries, ComposeAgainstHandExpansion) {
  auto V = univariate("X", 4);
  auto T = f3();
  auto X = TSeries::var(V, T, "X");
  auto f = X * X, g = X + X * X;
  // (X + X^2)^2 = X^2 + 2X^3 + X^4, truncated.
  EXPECT_EQ(f.compose(g).to_string(), "{1}*X^2 + {2}*X^3");
  EXPECT_EQ(X.compose(g), g);
  try {
    f.compose(g + TSeries::one(V, T));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonzeroConstantTerm);
  }
}

TEST(GSeries, ReverseMatchesLagrangeInversion) {
  const std::size_t N = 8;
  auto V = univariate("X", static_cast<int>(N));
  RationalRing Q;
  auto X = QSeries::var(V, Q, "X");
  auto f = X + X * X;
  auto g = f.reverse();
  // [X^k] g = (1/k) [X^(k-1)] (X/f)^k with X/f = 1/(1+X).
  Dense h(N, 0);
  for (std::size_t i = 0; i < N; ++i) h[i] = (i % 2) ? -1 : 1;
  Dense hk{1};
  for (std::size_t k = 1; k < N; ++k) {
    hk = dense_mul(hk, h, N);
    BigRational expect = hk[k - 1] / BigRational(static_cast<long long>(k));
    EXPECT_EQ(g.coeff({static_cast<int>(k)}).value(), expect) << k;
  }
  EXPECT_EQ(f.compose(g), X);
  EXPECT_EQ(g.compose(f), X);

  auto V4 = univariate("X", 4);
  auto T = f3();
  auto X4 = TSeries::var(V4, T, "X");
  EXPECT_EQ((X4 + X4 * X4).reverse().to_string(), "{1}*X + {2}*X^2 + {2}*X^3");
  EXPECT_EQ(X4.reverse(), X4);
  EXPECT_EQ(X4.scale(T->from_int(2)).reverse(), X4.scale(T->from_int(2)));
  try {
    (X4 * X4).reverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonUnitLeadingCoefficient);
  }
}

TEST(GSeries, TensorKoszul) {
  auto T = f3();
  auto A = VarTable::make({{"b0", -1, Parity::Odd}, {"x", 2, Parity::Even, 3}});
  auto B = VarTable::make({{"y", 1, Parity::Odd}, {"x", 2, Parity::Even, 3}});
  auto b0 = TSeries::var(A, T, "b0"), y = TSeries::var(B, T, "y");
  auto oneA = TSeries::one(A, T), oneB = TSeries::one(B, T);
  auto s = tensor(oneA, y) + tensor(b0, oneB);
  EXPECT_TRUE((s * s).is_zero());
  auto xa = TSeries::var(A, T, "x"), xb = TSeries::var(B, T, "x");
  auto lhs = tensor(xa, oneB) * tensor(oneA, xb);
  EXPECT_EQ(lhs, tensor(xa, xb));
  // b0 (x) y versus the swapped order picks up a sign.
  EXPECT_EQ(tensor(oneA, y) * tensor(b0, oneB), -tensor(b0, y));
}

TSeries random_series(const VarTablePtr& V, const TowerPtr& T, std::mt19937_64& rng, int nterms) {
  std::uniform_int_distribution<int> c(0, T->field()->order() - 1);
  std::vector<TSeries::Term> terms;
  for (int k = 0; k < nterms; ++k) {
    Monomial m;
    for (std::size_t i = 0; i < V->size(); ++i) {
      int tr = (*V)[i].trunc ? (*V)[i].trunc : 4;
      m.e[i] = static_cast<std::uint8_t>(rng() % static_cast<unsigned>(tr));
    }
    terms.push_back({m, T->from_fq(static_cast<FiniteField::Elem>(c(rng)))});
  }
  return TSeries::from_terms(V, T, std::move(terms));
}

TEST(GSeries, SwapIsInvolution) {
  auto T = Tower::finite(FiniteField::make(3, 2));
  auto A = VarTable::make({{"b", -1, Parity::Odd}, {"c", -1, Parity::Odd}, {"x", 2, Parity::Even, 4}});
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    auto f = random_series(A, T, rng, 6), g = random_series(A, T, rng, 6);
    VarTablePtr V;
    auto [fe, ge] = tensor_embed(f, g, &V);
    auto fg = fe * ge;
    const std::size_t n = A->size();
    std::vector<TSeries> swap;
    for (std::size_t i = 0; i < 2 * n; ++i) swap.push_back(TSeries::var(V, T, i < n ? i + n : i - n));
    EXPECT_EQ(fg.substitute(swap).substitute(swap), fg);
  }
}

TEST(GSeries, RingAxiomsAndGradedCommutativity) {
  auto T = Tower::finite(FiniteField::make(3, 2));
  auto V = VarTable::make({{"b", -1, Parity::Odd}, {"c", -1, Parity::Odd}, {"x", 2, Parity::Even, 5},
                           {"t", 4, Parity::Even, 3}});
  std::mt19937_64 rng(9);
  for (int it = 0; it < 200; ++it) {
    auto f = random_series(V, T, rng, 5), g = random_series(V, T, rng, 5), h = random_series(V, T, rng, 5);
    ASSERT_EQ((f * g) * h, f * (g * h));
    ASSERT_EQ(f * (g + h), f * g + f * h);
    // Single terms are homogeneous.
    if (f.size() && g.size()) {
      auto a = TSeries::from_terms(V, T, {f.terms()[0]}), b = TSeries::from_terms(V, T, {g.terms()[0]});
      int sign = (a.degree() * b.degree()) % 2 ? -1 : 1;
      ASSERT_EQ(a * b, sign < 0 ? -(b * a) : b * a);
      if (!(a * b).is_zero()) ASSERT_EQ((a * b).degree(), a.degree() + b.degree());
    }
  }
}

TEST(GSeries, ReverseTwoSidedOnRandomSeries) {
  auto T = Tower::finite(FiniteField::make(5, 1));
  auto V = univariate("X", 9);
  std::mt19937_64 rng(17);
  auto X = TSeries::var(V, T, "X");
  for (int it = 0; it < 50; ++it) {
    auto f = X.scale(T->from_int(1 + static_cast<long long>(rng() % 4)));
    for (int k = 2; k < 9; ++k) f = f + TSeries::var(V, T, "X", k).scale(T->from_int(static_cast<long long>(rng() % 5)));
    auto g = f.reverse();
    ASSERT_EQ(f.compose(g), X);
    ASSERT_EQ(g.compose(f), X);
  }
}

TEST(GSeries, TextAndJsonRoundTrip) {
  auto F9 = FiniteField::make(3, 2);
  auto L = Tower::laurent(F9, 3);
  auto R = L->adjoin_additive(3, L->u_pow(-1));
  auto V = VarTable::make({{"b", -1, Parity::Odd}, {"c", -1, Parity::Odd}, {"x", 2, Parity::Even, 4}});
  auto T = R.tower;
  auto f = (TSeries::var(V, T, "c") * TSeries::var(V, T, "b")).scale(R.root + T->t_pow(-1, F9->gen())) +
           TSeries::var(V, T, "x", 3).scale(T->from_int(2));
  auto text = f.to_string();
  EXPECT_EQ(TSeries::parse(V, T, text), f);
  EXPECT_EQ(TSeries::parse(V, T, text).to_string(), text);
  auto j = f.to_json();
  auto T2 = Tower::parse_descriptor(j["ring"].get<std::string>());
  auto g = TSeries::from_json(j, T2);
  EXPECT_EQ(g.to_json().dump(), j.dump());
  // Written in non-canonical order the odd product flips sign.
  EXPECT_EQ(TSeries::parse(V, T, "{1}*c*b"), -TSeries::parse(V, T, "{1}*b*c"));
}

}  // namespace
}  // namespace chromalg
