#pragma once

#include <climits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "chromalg/coeffring/finite_field.hpp"

namespace chromalg {

/// Truncated Laurent series sum coef[i] t^(val+i) + O(t^prec).
///
/// prec == kExact marks a finite sum known exactly. Normal form has no leading
/// or trailing zero coefficients; a zero series has val == prec.
struct LSeries {
  static constexpr int kExact = INT_MAX / 4;

  int val = 0;
  int prec = 0;
  std::vector<FiniteField::Elem> coef;

  bool empty() const noexcept { return coef.empty(); }
  FiniteField::Elem at(int k) const noexcept {
    return (k < val || k >= prec) ? 0 : coef[static_cast<std::size_t>(k - val)];
  }
  bool operator==(const LSeries&) const = default;
};

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

/// Element of a Tower: one Laurent series per z-monomial of the basis.
class TowerElem {
 public:
  TowerElem() = default;
  TowerElem(const Tower* tower, std::vector<LSeries> coords) : tower_(tower), c_(std::move(coords)) {}

  const Tower* tower() const noexcept { return tower_; }
  const std::vector<LSeries>& coords() const noexcept { return c_; }
  std::vector<LSeries>& coords() noexcept { return c_; }

  bool is_zero() const noexcept;
  bool is_one() const;
  /// Minimum t-valuation over basis coordinates; `precision()` when zero.
  int valuation() const noexcept;
  /// Minimum absolute t-precision over coordinates; LSeries::kExact if exact.
  int precision() const noexcept;

  TowerElem operator+(const TowerElem& o) const;
  TowerElem operator-(const TowerElem& o) const;
  TowerElem operator-() const;
  TowerElem operator*(const TowerElem& o) const;
  TowerElem& operator+=(const TowerElem& o) { return *this = *this + o; }
  TowerElem& operator-=(const TowerElem& o) { return *this = *this - o; }
  TowerElem& operator*=(const TowerElem& o) { return *this = *this * o; }
  TowerElem inv() const;
  TowerElem pow(long long e) const;
  /// Equality up to the common known precision.
  bool operator==(const TowerElem& o) const;

  std::string to_string() const;

 private:
  const Tower* tower_ = nullptr;
  std::vector<LSeries> c_;
};

/// Coefficient field built on F_q: optionally truncated Laurent series in a
/// uniformizer t with u = eps * t^e, then a chain of symbolic roots z1, z2, ...
/// each reduced by z^k = c (Kummer, p not dividing k) or z^d = z + c (additive,
/// d a power of p).
class Tower : public std::enable_shared_from_this<Tower> {
 public:
  using Elem = FiniteField::Elem;
  static constexpr int kDefaultUPrec = 8;

  enum class RuleKind { Kummer, Additive };
  struct Rule {
    RuleKind kind;
    int degree;
    std::vector<LSeries> rhs;  // coordinates over the basis of the prefix tower
  };

  struct Adjoined {
    TowerPtr tower;
    TowerElem root;
  };

  /// F_q itself.
  static TowerPtr finite(FieldPtr field);
  /// F_q((u)) truncated at u^uprec.
  static TowerPtr laurent(FieldPtr field, int uprec = kDefaultUPrec);
  /// Direct construction; rules are taken as given.
  static TowerPtr make(FieldPtr field, bool laurent, int e, int uprec, Elem eps, std::vector<Rule> rules);

  /// z^k = c. When the tower is bare F_q((u)) and c = gamma*u, the root becomes
  /// the new uniformizer and e is multiplied by k.
  Adjoined adjoin_kummer(int k, const TowerElem& c) const;
  /// z^degree = z + c.
  Adjoined adjoin_additive(int degree, const TowerElem& c) const;

  /// Maps an element of any ancestor tower into this one.
  TowerElem lift(const TowerElem& x) const;
  bool descends_from(const Tower* other) const noexcept;
  const Tower* parent() const noexcept { return parent_.get(); }

  const FieldPtr& field() const noexcept { return field_; }
  int p() const noexcept { return field_->p(); }
  bool is_laurent() const noexcept { return laurent_; }
  int e() const noexcept { return e_; }
  int uprec() const noexcept { return uprec_; }
  Elem eps() const noexcept { return eps_; }
  /// Absolute t-precision of every element.
  int cap() const noexcept { return cap_; }
  int dim() const noexcept { return dim_; }
  int num_gens() const noexcept { return static_cast<int>(rules_.size()); }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  int stride(int j) const noexcept { return strides_[static_cast<std::size_t>(j)]; }
  std::vector<int> exponents(int index) const;

  TowerElem zero() const;
  TowerElem one() const;
  TowerElem from_int(long long k) const;
  TowerElem from_fq(Elem c) const;
  /// c * t^k.
  TowerElem t_pow(int k, Elem c = 1) const;
  /// u^k, exact when k is a multiple of nothing special; u = eps*t^e.
  TowerElem u_pow(int k) const;
  /// The j-th adjoined root (0-based).
  TowerElem gen(int j) const;
  TowerElem from_coords(std::vector<LSeries> coords) const;
  /// Element of the prefix tower on the first j generators, embedded here.
  TowerElem rule_rhs(int j) const;

  TowerElem add(const TowerElem& a, const TowerElem& b) const;
  TowerElem sub(const TowerElem& a, const TowerElem& b) const;
  TowerElem neg(const TowerElem& a) const;
  TowerElem mul(const TowerElem& a, const TowerElem& b) const;
  TowerElem inv(const TowerElem& a) const;
  TowerElem scale(const TowerElem& a, Elem c) const;
  /// Applies sigma^k to every F_q coefficient.
  TowerElem frobenius_coeffs(const TowerElem& a, int k) const;
  /// Re-reduces raw coordinates; normal forms are fixed points.
  TowerElem normalize(const TowerElem& a) const;

  /// Canonical descriptor, e.g. Fq(3,2,[1,0,1])[t;2;6;eps=2][z1:A(3;t^-2)].
  std::string descriptor() const;
  static TowerPtr parse_descriptor(std::string_view text);
  /// Rebuilds `shape` by adjoining its roots one at a time over `base`, so that
  /// elements of `base` lift into the result. Throws if `shape` is not of that form.
  static TowerPtr replay_over(const TowerPtr& base, const Tower& shape);
  std::string format(const TowerElem& a) const;
  TowerElem parse(std::string_view text) const;

  // Laurent-series kernel, truncated at cap().
  LSeries ls_zero() const { return LSeries{LSeries::kExact, LSeries::kExact, {}}; }
  LSeries ls_const(Elem c) const;
  LSeries ls_add(const LSeries& a, const LSeries& b) const;
  LSeries ls_neg(const LSeries& a) const;
  LSeries ls_mul(const LSeries& a, const LSeries& b) const;
  LSeries ls_scale(const LSeries& a, Elem c) const;
  LSeries ls_inv(const LSeries& a) const;
  LSeries ls_normalize(LSeries a) const;

  Tower(FieldPtr field, bool laurent, int e, int uprec, Elem eps, std::vector<Rule> rules);

 private:
  enum class EmbedKind { None, Pad, Fold };
  void reduce_into(std::vector<LSeries>& out, std::vector<int>& exps, const LSeries& s) const;
  int index_of(const std::vector<int>& exps) const;
  std::string format_with(const TowerElem& a, int ngens) const;
  TowerElem embed_from_parent(const TowerElem& x) const;

  FieldPtr field_;
  bool laurent_;
  int e_;
  int uprec_;
  Elem eps_;
  int cap_;
  std::vector<Rule> rules_;
  std::vector<int> strides_;  // strides_[j] = product of degrees below j; size num_gens+1
  int dim_;

  TowerPtr parent_;
  EmbedKind embed_ = EmbedKind::None;
  int fold_k_ = 1;
  Elem fold_gamma_inv_ = 1;

  friend class TowerAutomorphism;
};

/// Pushes x along a base-field embedding into a tower of the same shape.
TowerElem base_change(const TowerElem& x, const Tower& target, const FieldEmbedding& emb);

/// sigma^frob on F_q, t -> alpha*t, z_j -> images[j].
class TowerAutomorphism {
 public:
  TowerAutomorphism(TowerPtr tower, int frob, FiniteField::Elem alpha, std::vector<TowerElem> images);
  static TowerAutomorphism identity(TowerPtr tower);

  TowerElem apply(const TowerElem& x) const;
  /// True when every reduction rule maps to a valid relation.
  bool preserves_rules() const;
  bool fixes_u() const;
  int frob() const noexcept { return frob_; }
  FiniteField::Elem alpha() const noexcept { return alpha_; }
  const std::vector<TowerElem>& images() const noexcept { return images_; }
  const TowerPtr& tower() const noexcept { return tower_; }

 private:
  TowerPtr tower_;
  int frob_;
  FiniteField::Elem alpha_;
  std::vector<TowerElem> images_;
};

}  // namespace chromalg
