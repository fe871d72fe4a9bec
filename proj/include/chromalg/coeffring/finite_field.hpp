#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chromalg {

bool is_prime(std::uint64_t n);

/// Reduces an integer into [0, p).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p);

/// The field F_{p^m} = F_p[a]/(modulus(a)).
///
/// Elements are encoded as base-p integers whose digits are the coefficients
/// of 1, a, a^2, ... . Multiplication goes through discrete-log tables, so the
/// field order is capped at kMaxOrder.
class FiniteField {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kMaxOrder = 1u << 22;

  /// `modulus` lists coefficients low to high and must be monic of degree m.
  /// An empty modulus selects the default for (p, m).
  static std::shared_ptr<const FiniteField> make(int p, int m, std::vector<int> modulus = {});

  /// Lexicographically first monic irreducible polynomial of degree m over F_p.
  static std::vector<int> default_modulus(int p, int m);

  static bool is_irreducible(int p, std::span<const int> monic_modulus);

  int p() const noexcept { return p_; }
  int m() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return q_; }
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem from_int(std::int64_t k) const noexcept { return static_cast<Elem>(mod_floor(k, p_)); }
  /// The class of the polynomial variable a.
  Elem gen() const noexcept { return m_ == 1 ? 0 : p_; }
  /// A fixed generator of the multiplicative group.
  Elem primitive() const noexcept { return exp_[1]; }

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const;
  /// a^(p^k); k may be negative (inverse Frobenius).
  Elem frobenius(Elem a, int k = 1) const;
  /// True when a lies in the subfield F_{p^d}.
  bool in_subfield(Elem a, int d) const;
  std::uint32_t discrete_log(Elem a) const;

  std::vector<int> digits(Elem a) const;
  Elem from_digits(std::span<const int> d) const;

  /// Polynomial in `a`, e.g. "1+2*a^2"; "0" for zero.
  std::string to_string(Elem a) const;
  Elem parse(std::string_view text) const;

  bool operator==(const FiniteField& o) const noexcept { return p_ == o.p_ && modulus_ == o.modulus_; }

 private:
  FiniteField(int p, int m, std::vector<int> modulus);

  int p_;
  int m_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i, i < m
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Embedding F_{p^a} -> F_{p^b} for a | b, sending a to the least root of its
/// modulus in the larger field.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr small, FieldPtr big);
  FiniteField::Elem operator()(FiniteField::Elem x) const;
  const FieldPtr& source() const noexcept { return small_; }
  const FieldPtr& target() const noexcept { return big_; }

 private:
  FieldPtr small_, big_;
  std::vector<FiniteField::Elem> gen_pows_;  // image of a^i
};

}  // namespace chromalg
