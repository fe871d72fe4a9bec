#include <gtest/gtest.h>

#include <random>

#include "chromalg/coeffring.hpp"
#include "test_util.hpp"

namespace chromalg {
namespace {

using testing::random_elem;

// Schoolbook multiplication in F_p[x]/(f), independent of the log tables.
std::vector<int> naive_mulmod(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& f, int p) {
  std::vector<int> r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  const std::size_t m = f.size() - 1;
  for (std::size_t k = r.size(); k-- > m;) {
    int c = r[k];
    if (!c) continue;
    for (std::size_t i = 0; i <= m; ++i) r[k - m + i] = ((r[k - m + i] - c * f[i]) % p + p) % p;
  }
  r.resize(m);
  return r;
}

TEST(FiniteField, PrimeFieldBasics) {
  auto F = FiniteField::make(3, 1);
  EXPECT_EQ(F->inv(2), 2u);
  EXPECT_EQ(F->pow(2, 2), 1u);
  EXPECT_THROW(F->inv(0), Error);
  try {
    F->inv(0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(FiniteField, F9FrobeniusOfI) {
  auto F = FiniteField::make(3, 2);
  ASSERT_EQ(F->modulus(), (std::vector<int>{1, 0, 1}));
  const auto i = F->gen();
  // i^3 by repeated squaring with schoolbook arithmetic.
  std::vector<int> x{0, 1}, sq = naive_mulmod(x, x, F->modulus(), 3), cube = naive_mulmod(sq, x, F->modulus(), 3);
  EXPECT_EQ(F->frobenius(i), F->from_digits(cube));
  EXPECT_EQ(F->frobenius(i), F->neg(i));
}

TEST(FiniteField, TablesAgreeWithSchoolbook) {
  for (auto [p, m] : {std::pair{3, 2}, {3, 3}, {5, 2}, {7, 2}, {3, 6}}) {
    auto F = FiniteField::make(p, m);
    std::mt19937_64 rng(p * 100 + m);
    std::uniform_int_distribution<std::uint32_t> d(0, F->order() - 1);
    for (int k = 0; k < 500; ++k) {
      auto a = d(rng), b = d(rng);
      EXPECT_EQ(F->mul(a, b), F->from_digits(naive_mulmod(F->digits(a), F->digits(b), F->modulus(), p)));
    }
  }
}

TEST(FiniteField, IrreducibilityAgainstRootSearch) {
  // Degree <= 3: irreducible iff no roots.
  const int p = 5;
  for (int c0 = 0; c0 < p; ++c0)
    for (int c1 = 0; c1 < p; ++c1)
      for (int c2 = 0; c2 < p; ++c2) {
        std::vector<int> f{c0, c1, c2, 1};
        bool root = false;
        for (int x = 0; x < p; ++x) root |= (c0 + c1 * x + c2 * x * x + x * x * x) % p == 0;
        EXPECT_EQ(FiniteField::is_irreducible(p, f), !root);
      }
}

TEST(FiniteField, SubfieldMembership) {
  auto F = FiniteField::make(3, 6);
  int in2 = 0, in3 = 0;
  for (std::uint32_t a = 0; a < F->order(); ++a) {
    in2 += F->in_subfield(a, 2);
    in3 += F->in_subfield(a, 3);
  }
  EXPECT_EQ(in2, 9);
  EXPECT_EQ(in3, 27);
}

TEST(FiniteField, TextRoundTrip) {
  auto F = FiniteField::make(5, 3);
  for (std::uint32_t a = 0; a < F->order(); a += 7) EXPECT_EQ(F->parse(F->to_string(a)), a);
}

TEST(FiniteField, OversizedFieldRejected) {
  try {
    FiniteField::make(3, 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedField);
  }
  EXPECT_THROW(FiniteField::make(4, 1), Error);
}

TEST(PLocal, ReduceModP) {
  // 4/5 at 3: brute-force the x with 5x = 4 mod 3.
  int expect = -1;
  for (int x = 0; x < 3; ++x)
    if ((5 * x) % 3 == 4 % 3) expect = x;
  EXPECT_EQ(PLocalRational(4, 5).reduce_mod_p(3), expect);
  EXPECT_EQ(PLocalRational(6).reduce_mod_p(3), 0);
  try {
    PLocalRational(1, 3).reduce_mod_p(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPIntegral);
  }
}

std::vector<TowerPtr> sample_towers() {
  auto F9 = FiniteField::make(3, 2);
  std::vector<TowerPtr> out;
  out.push_back(Tower::finite(F9));
  auto L = Tower::laurent(F9, 4);
  out.push_back(L);
  auto ram = L->adjoin_kummer(2, L->u_pow(1));
  out.push_back(ram.tower);
  auto as = L->adjoin_additive(3, L->u_pow(1));
  out.push_back(as.tower);
  auto both = ram.tower->adjoin_additive(3, ram.tower->t_pow(-1));
  out.push_back(both.tower);
  auto fin = Tower::finite(F9);
  auto kum = fin->adjoin_kummer(2, fin->from_fq(F9->primitive()));
  out.push_back(kum.tower);
  return out;
}

TEST(Tower, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (const auto& T : sample_towers()) {
    const int iters = T->dim() > 1 ? 1500 : 4000;
    for (int it = 0; it < iters; ++it) {
      auto a = random_elem(*T, rng), b = random_elem(*T, rng), c = random_elem(*T, rng);
      ASSERT_EQ((a * b) * c, a * (b * c)) << T->descriptor();
      ASSERT_EQ(a * (b + c), a * b + a * c) << T->descriptor();
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ(a + (b - a), b);
      if (!a.is_zero() && (a.coords()[0].empty() || a.coords()[0].val == 0) && it % 4 == 0) {
        try {
          ASSERT_EQ(a * a.inv(), T->one()) << T->format(a);
        } catch (const Error& e) {
          // Non-units exist in the reducible algebra of an additive extension.
          ASSERT_TRUE(T->dim() > 1) << e.what();
        }
      }
    }
  }
}

TEST(Tower, FrobeniusIsRingEndomorphism) {
  std::mt19937_64 rng(11);
  for (const auto& T : sample_towers()) {
    for (int it = 0; it < 300; ++it) {
      auto a = random_elem(*T, rng), b = random_elem(*T, rng);
      ASSERT_EQ((a + b).pow(3), a.pow(3) + b.pow(3));
    }
  }
}

TEST(Tower, NormalizeIsIdempotent) {
  std::mt19937_64 rng(13);
  for (const auto& T : sample_towers()) {
    for (int it = 0; it < 200; ++it) {
      auto a = random_elem(*T, rng);
      auto n1 = T->normalize(a);
      auto n2 = T->normalize(n1);
      ASSERT_EQ(n1.coords(), n2.coords());
    }
  }
}

TEST(Tower, KummerFoldDoublesRamification) {
  auto F9 = FiniteField::make(3, 2);
  auto L = Tower::laurent(F9, 4);
  auto r = L->adjoin_kummer(2, L->u_pow(1));
  EXPECT_EQ(r.tower->e(), 2);
  EXPECT_EQ(r.tower->num_gens(), 0);
  EXPECT_EQ(r.root, r.tower->t_pow(1));
  EXPECT_EQ(r.root.pow(2), r.tower->lift(L->u_pow(1)));
}

TEST(Tower, AdditiveRootSatisfiesRule) {
  auto F9 = FiniteField::make(3, 2);
  auto L = Tower::laurent(F9, 4);
  auto r = L->adjoin_additive(3, L->u_pow(1));
  EXPECT_EQ(r.tower->dim(), 3);
  auto z = r.root;
  EXPECT_TRUE((z.pow(3) - z - r.tower->lift(L->u_pow(1))).is_zero());
}

TEST(Tower, InseparableKummerRejected) {
  auto F9 = FiniteField::make(3, 2);
  auto L = Tower::laurent(F9, 4);
  try {
    L->adjoin_kummer(3, L->u_pow(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedExtension);
  }
}

TEST(Tower, EmbeddingIsInjectiveRingMap) {
  auto F9 = FiniteField::make(3, 2);
  auto L = Tower::laurent(F9, 4);
  auto r = L->adjoin_kummer(2, L->u_pow(1));
  auto s = r.tower->adjoin_additive(3, r.tower->t_pow(-1));
  const Tower& top = *s.tower;
  std::vector<TowerElem> span;
  for (int k = -2; k < 3; ++k)
    for (auto c : {1u, F9->gen(), 2u}) span.push_back(L->t_pow(k, c));
  for (const auto& a : span) {
    EXPECT_FALSE(top.lift(a).is_zero());
    for (const auto& b : span) {
      EXPECT_EQ(top.lift(a * b), top.lift(a) * top.lift(b));
      EXPECT_EQ(top.lift(a + b), top.lift(a) + top.lift(b));
    }
  }
}

TEST(Tower, DescriptorRoundTrip) {
  for (const auto& T : sample_towers()) {
    auto d = T->descriptor();
    auto U = Tower::parse_descriptor(d);
    EXPECT_EQ(U->descriptor(), d);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
      auto a = random_elem(*T, rng);
      auto text = T->format(a);
      EXPECT_EQ(U->format(U->parse(text)), text);
    }
  }
  auto T = Tower::parse_descriptor("Fq(3,2,[1,0,1])[t;2;6;eps=2][z1:A(3;2*t^-2)]");
  EXPECT_EQ(T->descriptor(), "Fq(3,2,[1,0,1])[t;2;6;eps=2][z1:A(3;2*t^-2)]");
  EXPECT_THROW(Tower::parse_descriptor("Fq(3,2,[1,0,1])[z1:Q(3;1)]"), Error);
}

TEST(Tower, AutomorphismChecksRules) {
  auto F9 = FiniteField::make(3, 2);
  auto L = Tower::laurent(F9, 4);
  auto r = L->adjoin_additive(3, L->u_pow(-1));
  const auto& T = r.tower;
  // z -> z + 1 is a symmetry of z^3 = z + c when c is fixed.
  TowerAutomorphism shift(T, 0, 1, {T->add(r.root, T->one())});
  EXPECT_TRUE(shift.preserves_rules());
  EXPECT_TRUE(shift.fixes_u());
  TowerAutomorphism bad(T, 0, 1, {T->add(r.root, T->from_fq(F9->gen()))});
  EXPECT_FALSE(bad.preserves_rules());
  auto a = T->add(r.root, T->t_pow(1));
  EXPECT_EQ(shift.apply(a * a), shift.apply(a) * shift.apply(a));
}

}  // namespace
}  // namespace chromalg
