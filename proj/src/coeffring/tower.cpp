#include "chromalg/coeffring/tower.hpp"

#include <algorithm>
#include <numeric>

#include "chromalg/error.hpp"

namespace chromalg {

namespace {

bool is_power_of(long long n, long long p) {
  if (n < p) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

constexpr int kExact = LSeries::kExact;

int sat_add(int a, int b) { return (a >= kExact || b >= kExact) ? kExact : a + b; }

bool exact_zero(const LSeries& s) { return s.empty() && s.prec >= kExact; }

const Tower* common_tower(const TowerElem& a, const TowerElem& b) {
  const Tower* ta = a.tower();
  const Tower* tb = b.tower();
  if (!ta || !tb) throw Error(ErrorCode::BaseMismatch, "element without a coefficient tower");
  if (ta == tb) return ta;
  if (ta->descends_from(tb)) return ta;
  if (tb->descends_from(ta)) return tb;
  throw Error(ErrorCode::BaseMismatch, "elements live in unrelated towers");
}

}  // namespace

// ---------------------------------------------------------------- TowerElem

bool TowerElem::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](const LSeries& s) { return s.empty(); });
}

bool TowerElem::is_one() const { return tower_ && *this == tower_->one(); }

int TowerElem::valuation() const noexcept {
  int v = INT_MAX;
  for (const auto& s : c_)
    if (!s.empty()) v = std::min(v, s.val);
  return v == INT_MAX ? precision() : v;
}

int TowerElem::precision() const noexcept {
  int v = INT_MAX;
  for (const auto& s : c_) v = std::min(v, s.prec);
  return v;
}

TowerElem TowerElem::operator+(const TowerElem& o) const {
  const Tower* t = common_tower(*this, o);
  return t->add(t->lift(*this), t->lift(o));
}

TowerElem TowerElem::operator-(const TowerElem& o) const {
  const Tower* t = common_tower(*this, o);
  return t->sub(t->lift(*this), t->lift(o));
}

TowerElem TowerElem::operator-() const {
  if (!tower_) throw Error(ErrorCode::BaseMismatch, "element without a coefficient tower");
  return tower_->neg(*this);
}

TowerElem TowerElem::operator*(const TowerElem& o) const {
  const Tower* t = common_tower(*this, o);
  return t->mul(t->lift(*this), t->lift(o));
}

TowerElem TowerElem::inv() const {
  if (!tower_) throw Error(ErrorCode::BaseMismatch, "element without a coefficient tower");
  return tower_->inv(*this);
}

TowerElem TowerElem::pow(long long e) const {
  if (!tower_) throw Error(ErrorCode::BaseMismatch, "element without a coefficient tower");
  if (e < 0) return inv().pow(-e);
  TowerElem r = tower_->one(), b = *this;
  while (e) {
    if (e & 1) r = tower_->mul(r, b);
    e >>= 1;
    if (e) b = tower_->mul(b, b);
  }
  return r;
}

bool TowerElem::operator==(const TowerElem& o) const { return (*this - o).is_zero(); }

std::string TowerElem::to_string() const {
  if (!tower_) return "<null>";
  return tower_->format(*this);
}

// ---------------------------------------------------------------- Tower

Tower::Tower(FieldPtr field, bool laurent, int e, int uprec, Elem eps, std::vector<Rule> rules)
    : field_(std::move(field)), laurent_(laurent), e_(e), uprec_(uprec), eps_(eps), rules_(std::move(rules)) {
  if (!field_) throw Error(ErrorCode::UnsupportedField, "missing base field");
  const int p = field_->p();
  if (laurent_) {
    if (e_ < 1 || std::gcd(e_, p) != 1) throw Error(ErrorCode::UnsupportedExtension, "ramification must be prime to p");
    if (uprec_ < 1) throw Error(ErrorCode::ConfigError, "u-precision must be positive");
    if (eps_ == 0 || eps_ >= field_->order()) throw Error(ErrorCode::UnsupportedExtension, "bad uniformizer scale");
    cap_ = uprec_ * e_;
  } else {
    e_ = 1;
    uprec_ = 1;
    eps_ = 1;
    cap_ = 1;
  }
  strides_.push_back(1);
  for (const auto& r : rules_) {
    if (r.kind == RuleKind::Kummer) {
      if (r.degree < 2 || r.degree % p == 0)
        throw Error(ErrorCode::UnsupportedExtension, "Kummer degree must be at least 2 and prime to p");
    } else if (!is_power_of(r.degree, p)) {
      throw Error(ErrorCode::UnsupportedExtension, "additive degree must be a power of p");
    }
    if (static_cast<int>(r.rhs.size()) != strides_.back())
      throw Error(ErrorCode::UnsupportedExtension, "rule constant outside the prefix tower");
    strides_.push_back(strides_.back() * r.degree);
  }
  dim_ = strides_.back();
}

TowerPtr Tower::finite(FieldPtr field) { return std::make_shared<Tower>(std::move(field), false, 1, 1, 1, std::vector<Rule>{}); }

TowerPtr Tower::laurent(FieldPtr field, int uprec) {
  return std::make_shared<Tower>(std::move(field), true, 1, uprec, 1, std::vector<Rule>{});
}

TowerPtr Tower::make(FieldPtr field, bool laurent, int e, int uprec, Elem eps, std::vector<Rule> rules) {
  return std::make_shared<Tower>(std::move(field), laurent, e, uprec, eps, std::move(rules));
}

bool Tower::descends_from(const Tower* other) const noexcept {
  for (const Tower* t = this; t; t = t->parent_.get())
    if (t == other) return true;
  return false;
}

std::vector<int> Tower::exponents(int index) const {
  std::vector<int> ex(rules_.size());
  for (std::size_t j = 0; j < rules_.size(); ++j) {
    ex[j] = index % rules_[j].degree;
    index /= rules_[j].degree;
  }
  return ex;
}

int Tower::index_of(const std::vector<int>& exps) const {
  int idx = 0;
  for (std::size_t j = 0; j < exps.size(); ++j) idx += exps[j] * strides_[j];
  return idx;
}

// ---- Laurent kernel

LSeries Tower::ls_normalize(LSeries a) const {
  // Terms at or beyond the cap are dropped; dropping a nonzero term makes the value inexact.
  const int limit = std::min(a.prec, cap_);
  if (a.val >= limit) {
    bool dropped = false;
    for (auto c : a.coef) dropped = dropped || c != 0;
    int prec = (a.prec >= kExact && !dropped) ? kExact : limit;
    return LSeries{prec, prec, {}};
  }
  if (static_cast<long long>(a.coef.size()) > static_cast<long long>(limit) - a.val) {
    std::size_t keep = static_cast<std::size_t>(limit - a.val);
    bool dropped = false;
    for (std::size_t k = keep; k < a.coef.size(); ++k) dropped = dropped || a.coef[k] != 0;
    a.coef.resize(keep);
    if (dropped) a.prec = std::min(a.prec, cap_);
  }
  if (a.prec < kExact) a.prec = std::min(a.prec, cap_);
  while (!a.coef.empty() && a.coef.back() == 0) a.coef.pop_back();
  std::size_t lead = 0;
  while (lead < a.coef.size() && a.coef[lead] == 0) ++lead;
  if (lead == a.coef.size()) return LSeries{a.prec, a.prec, {}};
  if (lead) {
    a.coef.erase(a.coef.begin(), a.coef.begin() + static_cast<std::ptrdiff_t>(lead));
    a.val += static_cast<int>(lead);
  }
  return a;
}

LSeries Tower::ls_const(Elem c) const {
  if (c == 0) return ls_zero();
  return LSeries{0, kExact, {c}};
}

LSeries Tower::ls_add(const LSeries& a, const LSeries& b) const {
  int prec = std::min(a.prec, b.prec);
  if (a.empty() && b.empty()) return LSeries{prec, prec, {}};
  int lo = INT_MAX, hi = INT_MIN;
  for (const LSeries* s : {&a, &b}) {
    if (s->empty()) continue;
    lo = std::min(lo, s->val);
    hi = std::max(hi, s->val + static_cast<int>(s->coef.size()));
  }
  hi = std::min(hi, prec);
  if (lo >= hi) return LSeries{prec, prec, {}};
  LSeries r{lo, prec, std::vector<Elem>(static_cast<std::size_t>(hi - lo), 0)};
  const FiniteField& F = *field_;
  for (const LSeries* s : {&a, &b}) {
    for (std::size_t i = 0; i < s->coef.size(); ++i) {
      int k = s->val + static_cast<int>(i);
      if (k >= hi) break;
      auto& slot = r.coef[static_cast<std::size_t>(k - lo)];
      slot = F.add(slot, s->coef[i]);
    }
  }
  return ls_normalize(std::move(r));
}

LSeries Tower::ls_neg(const LSeries& a) const {
  LSeries r = a;
  for (auto& c : r.coef) c = field_->neg(c);
  return r;
}

LSeries Tower::ls_scale(const LSeries& a, Elem c) const {
  if (c == 0) return LSeries{a.prec, a.prec, {}};
  LSeries r = a;
  for (auto& x : r.coef) x = field_->mul(x, c);
  return r;
}

LSeries Tower::ls_mul(const LSeries& a, const LSeries& b) const {
  int prec = std::min(sat_add(a.val, b.prec), sat_add(b.val, a.prec));
  if (a.empty() || b.empty()) {
    if (prec < kExact) prec = std::min(prec, cap_);
    return LSeries{prec, prec, {}};
  }
  int val = a.val + b.val;
  const int limit = std::min(prec, cap_);
  if (val >= limit) return ls_normalize(LSeries{val, prec, {1}});
  std::size_t full = a.coef.size() + b.coef.size() - 1;
  std::size_t len = std::min<std::size_t>(full, static_cast<std::size_t>(limit - val));
  if (len < full) prec = std::min(prec, cap_);
  LSeries r{val, prec, std::vector<Elem>(len, 0)};
  const FiniteField& F = *field_;
  for (std::size_t i = 0; i < a.coef.size() && i < len; ++i) {
    if (a.coef[i] == 0) continue;
    for (std::size_t j = 0; j < b.coef.size() && i + j < len; ++j)
      r.coef[i + j] = F.add(r.coef[i + j], F.mul(a.coef[i], b.coef[j]));
  }
  return ls_normalize(std::move(r));
}

LSeries Tower::ls_inv(const LSeries& a) const {
  if (a.empty()) {
    if (a.prec >= kExact) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    throw Error(ErrorCode::PrecisionExhausted, "inverse of an element known only as O(t^" + std::to_string(a.prec) + ")");
  }
  const int v = a.val;
  if (a.prec >= kExact && a.coef.size() == 1) return ls_normalize(LSeries{-v, kExact, {field_->inv(a.coef[0])}});
  const int prec = a.prec >= kExact ? cap_ : std::min(cap_, a.prec - 2 * v);
  if (-v >= prec) return LSeries{prec, prec, {}};
  const std::size_t len = static_cast<std::size_t>(prec + v);
  const FiniteField& F = *field_;
  std::vector<Elem> b(len, 0);
  const Elem b0 = F.inv(a.coef[0]);
  b[0] = b0;
  for (std::size_t k = 1; k < len; ++k) {
    Elem s = 0;
    for (std::size_t i = 1; i <= k && i < a.coef.size(); ++i) s = F.add(s, F.mul(a.coef[i], b[k - i]));
    b[k] = F.neg(F.mul(b0, s));
  }
  return ls_normalize(LSeries{-v, prec, std::move(b)});
}

// ---- element constructors

TowerElem Tower::zero() const { return TowerElem(this, std::vector<LSeries>(static_cast<std::size_t>(dim_), ls_zero())); }

TowerElem Tower::one() const { return from_fq(1); }

TowerElem Tower::from_int(long long k) const { return from_fq(field_->from_int(k)); }

TowerElem Tower::from_fq(Elem c) const {
  TowerElem r = zero();
  r.coords()[0] = ls_const(c);
  return r;
}

TowerElem Tower::t_pow(int k, Elem c) const {
  if (!laurent_ && k != 0) throw Error(ErrorCode::BaseMismatch, "tower has no uniformizer");
  TowerElem r = zero();
  if (c != 0) r.coords()[0] = ls_normalize(LSeries{k, kExact, {c}});
  return r;
}

TowerElem Tower::u_pow(int k) const { return t_pow(k * e_, field_->pow(eps_, k)); }

TowerElem Tower::gen(int j) const {
  if (j < 0 || j >= num_gens()) throw Error(ErrorCode::IndexOutOfRange, "no generator z" + std::to_string(j + 1));
  TowerElem r = zero();
  if (rules_[static_cast<std::size_t>(j)].degree == 1) return r;
  r.coords()[static_cast<std::size_t>(strides_[static_cast<std::size_t>(j)])] = ls_const(1);
  return r;
}

TowerElem Tower::from_coords(std::vector<LSeries> coords) const {
  if (static_cast<int>(coords.size()) > dim_) throw Error(ErrorCode::BaseMismatch, "too many coordinates");
  coords.resize(static_cast<std::size_t>(dim_), ls_zero());
  for (auto& c : coords) c = ls_normalize(std::move(c));
  return TowerElem(this, std::move(coords));
}

TowerElem Tower::rule_rhs(int j) const { return from_coords(rules_.at(static_cast<std::size_t>(j)).rhs); }

// ---- arithmetic

TowerElem Tower::add(const TowerElem& a, const TowerElem& b) const {
  std::vector<LSeries> r(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) r[i] = ls_add(a.coords()[i], b.coords()[i]);
  return TowerElem(this, std::move(r));
}

TowerElem Tower::neg(const TowerElem& a) const {
  std::vector<LSeries> r(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) r[i] = ls_neg(a.coords()[i]);
  return TowerElem(this, std::move(r));
}

TowerElem Tower::sub(const TowerElem& a, const TowerElem& b) const { return add(a, neg(b)); }

TowerElem Tower::scale(const TowerElem& a, Elem c) const {
  std::vector<LSeries> r(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) r[i] = ls_scale(a.coords()[i], c);
  return TowerElem(this, std::move(r));
}

void Tower::reduce_into(std::vector<LSeries>& out, std::vector<int>& exps, const LSeries& s) const {
  for (int j = num_gens() - 1; j >= 0; --j) {
    const Rule& rule = rules_[static_cast<std::size_t>(j)];
    if (exps[j] < rule.degree) continue;
    exps[j] -= rule.degree;
    if (rule.kind == RuleKind::Additive) {
      std::vector<int> e2 = exps;
      e2[j] += 1;
      reduce_into(out, e2, s);
    }
    for (int m = 0; m < strides_[j]; ++m) {
      const LSeries& c = rule.rhs[static_cast<std::size_t>(m)];
      if (exact_zero(c)) continue;
      std::vector<int> e3 = exps;
      auto dm = exponents(m);
      for (int i = 0; i < j; ++i) e3[i] += dm[i];
      reduce_into(out, e3, ls_mul(s, c));
    }
    return;
  }
  auto& slot = out[static_cast<std::size_t>(index_of(exps))];
  slot = ls_add(slot, s);
}

TowerElem Tower::mul(const TowerElem& a, const TowerElem& b) const {
  if (dim_ == 1) return TowerElem(this, {ls_mul(a.coords()[0], b.coords()[0])});
  std::vector<LSeries> out(static_cast<std::size_t>(dim_), ls_zero());
  auto skip = [](const LSeries& s) { return exact_zero(s); };
  for (int i = 0; i < dim_; ++i) {
    const LSeries& ai = a.coords()[i];
    if (skip(ai)) continue;
    auto ei = exponents(i);
    for (int j = 0; j < dim_; ++j) {
      const LSeries& bj = b.coords()[j];
      if (skip(bj)) continue;
      auto ex = exponents(j);
      for (std::size_t k = 0; k < ex.size(); ++k) ex[k] += ei[k];
      reduce_into(out, ex, ls_mul(ai, bj));
    }
  }
  return TowerElem(this, std::move(out));
}

TowerElem Tower::inv(const TowerElem& a) const {
  if (dim_ == 1) return TowerElem(this, {ls_inv(a.coords()[0])});
  // Solve a*y = 1 by elimination on the matrix of multiplication by a.
  const std::size_t d = static_cast<std::size_t>(dim_);
  std::vector<std::vector<LSeries>> A(d, std::vector<LSeries>(d + 1));
  for (std::size_t k = 0; k < d; ++k) {
    TowerElem basis = zero();
    basis.coords()[k] = ls_const(1);
    TowerElem col = mul(a, basis);
    for (std::size_t r = 0; r < d; ++r) A[r][k] = col.coords()[r];
  }
  for (std::size_t r = 0; r < d; ++r) A[r][d] = r == 0 ? ls_const(1) : ls_zero();
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = d;
    for (std::size_t r = k; r < d; ++r) {
      if (A[r][k].empty()) continue;
      if (piv == d || A[r][k].val < A[piv][k].val) piv = r;
    }
    if (piv == d) {
      bool exact = true;
      for (std::size_t r = k; r < d; ++r) exact = exact && A[r][k].prec >= kExact;
      if (exact) throw Error(ErrorCode::DivisionByZero, "element is not invertible");
      throw Error(ErrorCode::PrecisionExhausted, "precision lost while inverting");
    }
    std::swap(A[k], A[piv]);
    LSeries pinv = ls_inv(A[k][k]);
    for (std::size_t c = k; c <= d; ++c) A[k][c] = ls_mul(A[k][c], pinv);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == k || A[r][k].empty()) continue;
      LSeries f = A[r][k];
      for (std::size_t c = k; c <= d; ++c) A[r][c] = ls_add(A[r][c], ls_neg(ls_mul(f, A[k][c])));
    }
  }
  std::vector<LSeries> y(d);
  for (std::size_t r = 0; r < d; ++r) y[r] = A[r][d];
  return TowerElem(this, std::move(y));
}

TowerElem Tower::frobenius_coeffs(const TowerElem& a, int k) const {
  TowerElem r = a;
  for (auto& s : r.coords())
    for (auto& c : s.coef) c = field_->frobenius(c, k);
  return r;
}

TowerElem Tower::normalize(const TowerElem& a) const {
  std::vector<LSeries> out(static_cast<std::size_t>(dim_), ls_zero());
  for (std::size_t i = 0; i < a.coords().size(); ++i) {
    auto ex = exponents(static_cast<int>(i % static_cast<std::size_t>(dim_)));
    reduce_into(out, ex, ls_normalize(a.coords()[i]));
  }
  return TowerElem(this, std::move(out));
}

// ---- adjunction and embeddings

Tower::Adjoined Tower::adjoin_kummer(int k, const TowerElem& c_in) const {
  const int p = field_->p();
  if (k < 2 || k % p == 0)
    throw Error(ErrorCode::UnsupportedExtension,
                "Kummer root of degree " + std::to_string(k) + " is not tame for p = " + std::to_string(p));
  TowerElem c = lift(c_in);
  if (c.is_zero()) throw Error(ErrorCode::UnsupportedExtension, "Kummer constant must be a unit");
  const LSeries& c0 = c.coords()[0];
  bool foldable = laurent_ && e_ == 1 && eps_ == 1 && rules_.empty() && c0.val == 1 && c0.coef.size() == 1 &&
                  c0.prec >= kExact;
  if (foldable) {
    const Elem gamma = c0.coef[0];
    auto t = std::make_shared<Tower>(field_, true, k, uprec_, field_->inv(gamma), std::vector<Rule>{});
    t->parent_ = shared_from_this();
    t->embed_ = EmbedKind::Fold;
    t->fold_k_ = k;
    t->fold_gamma_inv_ = t->eps_;
    TowerElem root = t->t_pow(1);
    return {t, root};
  }
  auto rules = rules_;
  rules.push_back(Rule{RuleKind::Kummer, k, c.coords()});
  auto t = std::make_shared<Tower>(field_, laurent_, e_, uprec_, eps_, std::move(rules));
  t->parent_ = shared_from_this();
  t->embed_ = EmbedKind::Pad;
  TowerElem root = t->gen(t->num_gens() - 1);
  return {t, root};
}

Tower::Adjoined Tower::adjoin_additive(int degree, const TowerElem& c_in) const {
  if (!is_power_of(degree, field_->p()))
    throw Error(ErrorCode::UnsupportedExtension, "additive degree " + std::to_string(degree) + " is not a power of p");
  TowerElem c = lift(c_in);
  auto rules = rules_;
  rules.push_back(Rule{RuleKind::Additive, degree, c.coords()});
  auto t = std::make_shared<Tower>(field_, laurent_, e_, uprec_, eps_, std::move(rules));
  t->parent_ = shared_from_this();
  t->embed_ = EmbedKind::Pad;
  TowerElem root = t->gen(t->num_gens() - 1);
  return {t, root};
}

TowerPtr Tower::replay_over(const TowerPtr& base, const Tower& shape) {
  TowerPtr cur = base;
  if (shape.e() != base->e()) {
    if (shape.e() % base->e() != 0)
      throw Error(ErrorCode::BaseMismatch, shape.descriptor() + " does not sit over " + base->descriptor());
    cur = base->adjoin_kummer(shape.e() / base->e(), base->t_pow(1, base->field()->inv(shape.eps()))).tower;
  }
  for (const Rule& r : shape.rules()) {
    TowerElem c = cur->from_coords(r.rhs);
    cur = (r.kind == RuleKind::Kummer ? cur->adjoin_kummer(r.degree, c) : cur->adjoin_additive(r.degree, c)).tower;
  }
  if (cur->descriptor() != shape.descriptor())
    throw Error(ErrorCode::BaseMismatch, shape.descriptor() + " does not sit over " + base->descriptor());
  return cur;
}

TowerElem Tower::embed_from_parent(const TowerElem& x) const {
  if (embed_ == EmbedKind::Pad) return from_coords(x.coords());
  // Fold: old t equals u = eps * t'^k.
  const LSeries& s = x.coords()[0];
  LSeries r{s.val * fold_k_, s.prec >= kExact ? kExact : s.prec * fold_k_, {}};
  if (!s.empty()) {
    r.coef.assign((s.coef.size() - 1) * static_cast<std::size_t>(fold_k_) + 1, 0);
    for (std::size_t i = 0; i < s.coef.size(); ++i) {
      int k = s.val + static_cast<int>(i);
      r.coef[i * static_cast<std::size_t>(fold_k_)] = field_->mul(s.coef[i], field_->pow(fold_gamma_inv_, k));
    }
  }
  return from_coords({ls_normalize(std::move(r))});
}

TowerElem Tower::lift(const TowerElem& x) const {
  if (x.tower() == this) return x;
  // Constants of a bare F_q tower embed everywhere over the same field.
  if (x.tower() && !x.tower()->is_laurent() && x.tower()->num_gens() == 0 && *x.tower()->field() == *field_) {
    std::vector<LSeries> c(static_cast<std::size_t>(dim_), ls_zero());
    c[0] = x.coords()[0];
    return TowerElem(this, std::move(c));
  }
  if (!x.tower() || !parent_ || !descends_from(x.tower()))
    throw Error(ErrorCode::BaseMismatch, "element does not belong to this tower or its ancestors");
  return embed_from_parent(parent_->lift(x));
}

TowerElem base_change(const TowerElem& x, const Tower& target, const FieldEmbedding& emb) {
  const Tower* src = x.tower();
  if (!src || src->dim() != target.dim() || src->e() != target.e() || src->is_laurent() != target.is_laurent() ||
      src->num_gens() != 0 || target.num_gens() != 0 || emb(src->eps()) != target.eps())
    throw Error(ErrorCode::UnsupportedExtension, "base change is only defined between towers of the same shape");
  std::vector<LSeries> c = x.coords();
  for (auto& s : c)
    for (auto& a : s.coef) a = emb(a);
  return target.from_coords(std::move(c));
}

// ---------------------------------------------------------------- automorphisms

TowerAutomorphism::TowerAutomorphism(TowerPtr tower, int frob, FiniteField::Elem alpha, std::vector<TowerElem> images)
    : tower_(std::move(tower)), frob_(frob), alpha_(alpha), images_(std::move(images)) {
  if (!tower_) throw Error(ErrorCode::InvalidWitness, "automorphism without tower");
  if (alpha_ == 0) throw Error(ErrorCode::InvalidWitness, "uniformizer must map to a unit multiple");
  if (static_cast<int>(images_.size()) != tower_->num_gens())
    throw Error(ErrorCode::InvalidWitness, "one image per adjoined root is required");
  for (auto& im : images_) im = tower_->lift(im);
}

TowerAutomorphism TowerAutomorphism::identity(TowerPtr tower) {
  std::vector<TowerElem> ims;
  for (int j = 0; j < tower->num_gens(); ++j) ims.push_back(tower->gen(j));
  return TowerAutomorphism(std::move(tower), 0, 1, std::move(ims));
}

TowerElem TowerAutomorphism::apply(const TowerElem& x_in) const {
  const Tower& T = *tower_;
  TowerElem x = T.lift(x_in);
  const FiniteField& F = *T.field();
  std::vector<std::vector<TowerElem>> powers(images_.size());
  for (std::size_t j = 0; j < images_.size(); ++j) {
    powers[j].push_back(T.one());
    for (int a = 1; a < T.rules()[j].degree; ++a) powers[j].push_back(T.mul(powers[j].back(), images_[j]));
  }
  TowerElem acc = T.zero();
  for (int i = 0; i < T.dim(); ++i) {
    const LSeries& s = x.coords()[static_cast<std::size_t>(i)];
    if (exact_zero(s)) continue;
    LSeries m = s;
    for (std::size_t k = 0; k < m.coef.size(); ++k) {
      int deg = m.val + static_cast<int>(k);
      m.coef[k] = F.mul(F.frobenius(m.coef[k], frob_), F.pow(alpha_, deg));
    }
    TowerElem term = T.from_coords({m});
    auto ex = T.exponents(i);
    for (std::size_t j = 0; j < ex.size(); ++j)
      if (ex[j]) term = T.mul(term, powers[j][static_cast<std::size_t>(ex[j])]);
    acc = T.add(acc, term);
  }
  return acc;
}

bool TowerAutomorphism::preserves_rules() const {
  const Tower& T = *tower_;
  for (int j = 0; j < T.num_gens(); ++j) {
    const auto& rule = T.rules()[static_cast<std::size_t>(j)];
    TowerElem lhs = images_[static_cast<std::size_t>(j)].pow(rule.degree);
    TowerElem rhs = apply(T.rule_rhs(j));
    if (rule.kind == Tower::RuleKind::Additive) rhs = T.add(rhs, images_[static_cast<std::size_t>(j)]);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

bool TowerAutomorphism::fixes_u() const {
  if (!tower_->is_laurent()) return true;
  TowerElem u = tower_->u_pow(1);
  return apply(u) == u;
}

}  // namespace chromalg
