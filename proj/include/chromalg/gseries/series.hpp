#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chromalg/error.hpp"
#include "chromalg/gseries/scalar.hpp"
#include "chromalg/gseries/vartable.hpp"
#include "json.hpp"

namespace chromalg {

/// Truncated graded-commutative series: a sparse sum of coefficient*monomial
/// over a VarTable. Odd variables square to zero and anticommute.
template <class S>
class Series {
 public:
  using Traits = ScalarTraits<S>;
  using Ctx = typename Traits::Ctx;
  using Term = std::pair<Monomial, S>;

  Series() = default;
  Series(VarTablePtr vars, Ctx ctx) : vars_(std::move(vars)), ctx_(std::move(ctx)) {}

  static Series constant(VarTablePtr vars, Ctx ctx, const S& c) {
    Series r(std::move(vars), std::move(ctx));
    if (!Traits::is_zero(c)) r.terms_.push_back({Monomial{}, c});
    return r;
  }
  static Series one(VarTablePtr vars, Ctx ctx) {
    S c = Traits::one(ctx);
    return constant(std::move(vars), std::move(ctx), c);
  }
  static Series monomial(VarTablePtr vars, Ctx ctx, const Monomial& m, const S& c) {
    Series r(std::move(vars), std::move(ctx));
    if (!Traits::is_zero(c) && r.vars_->admissible(m)) r.terms_.push_back({m, c});
    return r;
  }
  static Series var(VarTablePtr vars, Ctx ctx, std::size_t i, int power = 1) {
    Monomial m;
    if (i >= vars->size()) throw Error(ErrorCode::VarMismatch, "variable index out of range");
    m.e[i] = static_cast<std::uint8_t>(power);
    S c = Traits::one(ctx);
    return monomial(std::move(vars), std::move(ctx), m, c);
  }
  static Series var(VarTablePtr vars, Ctx ctx, const std::string& name, int power = 1) {
    std::size_t i = vars->index(name);
    return var(std::move(vars), std::move(ctx), i, power);
  }
  /// Combines duplicates, drops zero and inadmissible terms, sorts.
  static Series from_terms(VarTablePtr vars, Ctx ctx, std::vector<Term> terms) {
    Series r(std::move(vars), std::move(ctx));
    std::unordered_map<Monomial, std::size_t, MonomialHash> slot;
    for (auto& [m, c] : terms) {
      if (!r.vars_->admissible(m)) continue;
      auto [it, fresh] = slot.try_emplace(m, r.terms_.size());
      if (fresh)
        r.terms_.push_back({m, std::move(c)});
      else
        r.terms_[it->second].second = r.terms_[it->second].second + c;
    }
    r.finish();
    return r;
  }

  const VarTablePtr& vars() const noexcept { return vars_; }
  const Ctx& ctx() const noexcept { return ctx_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  S coeff(const Monomial& m) const {
    for (const auto& [mm, c] : terms_)
      if (mm == m) return c;
    return Traits::zero(ctx_);
  }
  S coeff(std::initializer_list<int> exps) const { return coeff(make_mono(exps)); }
  S constant_term() const { return coeff(Monomial{}); }

  static Monomial make_mono(std::initializer_list<int> exps) {
    Monomial m;
    std::size_t i = 0;
    for (int e : exps) m.e[i++] = static_cast<std::uint8_t>(e);
    return m;
  }

  Series operator+(const Series& o) const {
    check_same(o);
    std::vector<Term> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(vars_, ctx_, std::move(t));
  }
  Series operator-() const {
    Series r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  Series operator-(const Series& o) const { return *this + (-o); }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series operator*(const Series& o) const {
    check_same(o);
    const VarTable& V = *vars_;
    const std::size_t nv = V.size();
    std::vector<std::uint32_t> oa(terms_.size()), ob(o.terms_.size());
    std::vector<int> wa(terms_.size()), wb(o.terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      oa[i] = V.odd_bits(terms_[i].first);
      wa[i] = V.weighted_degree(terms_[i].first);
    }
    for (std::size_t j = 0; j < o.terms_.size(); ++j) {
      ob[j] = V.odd_bits(o.terms_[j].first);
      wb[j] = V.weighted_degree(o.terms_[j].first);
    }
    const int cap = V.total_cap();
    std::unordered_map<Monomial, S, MonomialHash> acc;
    acc.reserve(terms_.size() * 2 + o.terms_.size() * 2);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      for (std::size_t j = 0; j < o.terms_.size(); ++j) {
        if (cap && wa[i] + wb[j] >= cap) continue;
        int sign = koszul_sign(oa[i], ob[j]);
        if (sign == 0) continue;
        Monomial m;
        bool ok = true;
        for (std::size_t k = 0; k < nv; ++k) {
          int e = terms_[i].first.e[k] + o.terms_[j].first.e[k];
          if (V[k].trunc && e >= V[k].trunc) {
            ok = false;
            break;
          }
          if (e > 255) throw Error(ErrorCode::PrecisionExhausted, "exponent of " + V[k].name + " exceeds 255");
          m.e[k] = static_cast<std::uint8_t>(e);
        }
        if (!ok) continue;
        S prod = terms_[i].second * o.terms_[j].second;
        if (sign < 0) prod = -prod;
        auto it = acc.find(m);
        if (it == acc.end())
          acc.emplace(m, std::move(prod));
        else
          it->second = it->second + prod;
      }
    }
    Series r(vars_, ctx_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) r.terms_.push_back({m, std::move(c)});
    r.finish();
    return r;
  }

  Series scale(const S& c) const {
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& [m, x] : terms_) t.push_back({m, c * x});
    return from_terms(vars_, ctx_, std::move(t));
  }

  Series pow(int k) const {
    if (k < 0) throw Error(ErrorCode::VarMismatch, "negative power of a series");
    Series r = one(vars_, ctx_), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }

  bool operator==(const Series& o) const { return (*this - o).is_zero(); }

  /// Coefficient-wise map into another ring over the same variables.
  template <class T, class F>
  Series<T> map_coeffs(typename ScalarTraits<T>::Ctx ctx, F&& f, VarTablePtr vars = nullptr) const {
    std::vector<typename Series<T>::Term> t;
    t.reserve(terms_.size());
    for (const auto& [m, c] : terms_) t.push_back({m, f(c)});
    return Series<T>::from_terms(vars ? vars : vars_, std::move(ctx), std::move(t));
  }

  /// Same exponents read in another VarTable with the same number of variables.
  Series with_vars(VarTablePtr vars) const {
    if (vars->size() != vars_->size()) throw Error(ErrorCode::VarMismatch, "variable count differs");
    return from_terms(std::move(vars), ctx_, terms_);
  }

  /// Ring map sending variable i to images[i]; all images share a target ring.
  Series substitute(const std::vector<Series>& images) const {
    if (images.size() != vars_->size()) throw Error(ErrorCode::VarMismatch, "one image per variable is required");
    if (images.empty()) throw Error(ErrorCode::VarMismatch, "substitution into a ring without variables");
    for (const auto& g : images) images.front().check_same(g);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (!vars_->operator[](i).trunc && !vars_->total_cap() && !images[i].constant_term_is_zero())
        throw Error(ErrorCode::NonzeroConstantTerm, "image of " + (*vars_)[i].name + " has a constant term");
    std::vector<std::vector<Series>> powers(images.size());
    std::vector<Term> sorted = terms_;
    std::vector<std::size_t> idx(sorted.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return subst_rec(sorted, idx, 0, images, powers);
  }

  /// f(g) for univariate f.
  Series compose(const Series& g) const {
    if (vars_->size() != 1) throw Error(ErrorCode::VarMismatch, "compose expects a univariate outer series");
    if (!g.constant_term_is_zero()) throw Error(ErrorCode::NonzeroConstantTerm, "inner series has a constant term");
    return substitute({g});
  }

  /// Replaces variable i by g and keeps the other variables.
  Series substitute_var(std::size_t i, const Series& g) const {
    check_same(g);
    if (!g.constant_term_is_zero()) throw Error(ErrorCode::NonzeroConstantTerm, "substituted series has a constant term");
    std::vector<Series> ims;
    for (std::size_t k = 0; k < vars_->size(); ++k) ims.push_back(k == i ? g : var(vars_, ctx_, k));
    return substitute(ims);
  }

  /// Compositional inverse of a univariate series with invertible linear term.
  Series reverse() const {
    if (vars_->size() != 1) throw Error(ErrorCode::VarMismatch, "reverse expects a univariate series");
    if (!constant_term_is_zero()) throw Error(ErrorCode::NonzeroConstantTerm, "series has a constant term");
    const int n = (*vars_)[0].trunc ? (*vars_)[0].trunc : vars_->total_cap();
    if (n <= 0) throw Error(ErrorCode::ConfigError, "reverse needs a truncated variable");
    S a1 = coeff(make_mono({1}));
    S a1inv;
    try {
      if (Traits::is_zero(a1)) throw Error(ErrorCode::DivisionByZero, "zero");
      a1inv = Traits::inv(a1);
    } catch (const Error&) {
      throw Error(ErrorCode::NonUnitLeadingCoefficient, "linear coefficient is not a unit");
    }
    Series X = var(vars_, ctx_, 0);
    Series g = X.scale(a1inv);
    for (int it = 1; it < n; ++it) {
      Series err = compose(g) - X;
      if (err.is_zero()) break;
      g = g - err.scale(a1inv);
    }
    return g;
  }

  bool constant_term_is_zero() const { return terms_.empty() || !(terms_.front().first == Monomial{}); }

  bool is_homogeneous() const {
    for (const auto& [m, c] : terms_)
      if (vars_->degree(m) != vars_->degree(terms_.front().first)) return false;
    return true;
  }
  int degree() const { return terms_.empty() ? 0 : vars_->degree(terms_.front().first); }
  bool is_odd() const { return !terms_.empty() && std::popcount(vars_->odd_bits(terms_.front().first)) % 2 == 1; }

  /// Terms of exactly this weighted degree.
  Series homogeneous_part(int w) const {
    Series r(vars_, ctx_);
    for (const auto& t : terms_)
      if (vars_->weighted_degree(t.first) == w) r.terms_.push_back(t);
    return r;
  }

  /// Drops monomials with weighted degree >= w.
  Series truncate_total(int w) const {
    Series r(vars_, ctx_);
    for (const auto& t : terms_)
      if (vars_->weighted_degree(t.first) < w) r.terms_.push_back(t);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "{" + Traits::to_string(c) + "}";
      for (std::size_t k = 0; k < vars_->size(); ++k) {
        if (!m.e[k]) continue;
        out += "*" + (*vars_)[k].name;
        if (m.e[k] > 1) out += "^" + std::to_string(m.e[k]);
      }
    }
    return out;
  }

  static Series parse(VarTablePtr vars, Ctx ctx, std::string_view text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    Series r(vars, ctx);
    if (s == "0") return r;
    std::vector<Term> terms;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(i) + " in series text");
    };
    while (i < s.size()) {
      if (!terms.empty()) {
        if (s[i] != '+') fail("expected '+'");
        ++i;
      }
      if (i >= s.size() || s[i] != '{') fail("expected '{'");
      int depth = 0;
      std::size_t start = i + 1;
      for (; i < s.size(); ++i) {
        if (s[i] == '{') ++depth;
        if (s[i] == '}' && --depth == 0) break;
      }
      if (i >= s.size()) fail("unterminated coefficient");
      S c = Traits::parse(ctx, s.substr(start, i - start));
      ++i;
      Monomial m;
      int sign = 1;
      std::uint32_t seen = 0;
      while (i < s.size() && s[i] == '*') {
        ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != '*' && s[j] != '^' && s[j] != '+') ++j;
        std::size_t k = vars->index(s.substr(i, j - i));
        i = j;
        int e = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          std::size_t j2 = i;
          while (j2 < s.size() && std::isdigit(static_cast<unsigned char>(s[j2]))) ++j2;
          if (j2 == i) fail("expected exponent");
          e = std::stoi(s.substr(i, j2 - i));
          i = j2;
        }
        if ((*vars)[k].parity == Parity::Odd && e) {
          // Written order may differ from canonical order.
          std::uint32_t bit = 1u << k;
          sign *= koszul_sign(seen, bit);
          seen |= bit;
        }
        m.e[k] = static_cast<std::uint8_t>(m.e[k] + e);
      }
      if (sign == 0) continue;
      terms.push_back({m, sign < 0 ? -c : c});
    }
    return from_terms(std::move(vars), std::move(ctx), std::move(terms));
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["ring"] = Traits::describe(ctx_);
    j["vars"] = nlohmann::json::array();
    for (const auto& v : vars_->vars())
      j["vars"].push_back({{"name", v.name},
                           {"degree", v.degree},
                           {"parity", v.parity == Parity::Odd ? "odd" : "even"},
                           {"trunc", v.trunc},
                           {"weight", v.weight}});
    j["total_cap"] = vars_->total_cap();
    j["terms"] = nlohmann::json::array();
    for (const auto& [m, c] : terms_) {
      std::vector<int> e(m.e.begin(), m.e.begin() + static_cast<std::ptrdiff_t>(vars_->size()));
      j["terms"].push_back({{"exp", e}, {"coeff", Traits::to_string(c)}});
    }
    return j;
  }

  static VarTablePtr vars_from_json(const nlohmann::json& j) {
    std::vector<VarSpec> vs;
    for (const auto& v : j.at("vars"))
      vs.push_back(VarSpec{v.at("name").get<std::string>(), v.at("degree").get<int>(),
                           v.at("parity").get<std::string>() == "odd" ? Parity::Odd : Parity::Even,
                           v.at("trunc").get<int>(), v.value("weight", 1)});
    return VarTable::make(std::move(vs), j.value("total_cap", 0));
  }

  static Series from_json(const nlohmann::json& j, Ctx ctx, VarTablePtr vars = nullptr) {
    try {
      if (!vars) vars = vars_from_json(j);
      std::vector<Term> terms;
      for (const auto& t : j.at("terms")) {
        Monomial m;
        auto e = t.at("exp").get<std::vector<int>>();
        if (e.size() != vars->size()) throw Error(ErrorCode::VarMismatch, "exponent vector length");
        for (std::size_t k = 0; k < e.size(); ++k) m.e[k] = static_cast<std::uint8_t>(e[k]);
        terms.push_back({m, Traits::parse(ctx, t.at("coeff").get<std::string>())});
      }
      return from_terms(std::move(vars), std::move(ctx), std::move(terms));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("series JSON: ") + e.what());
    }
  }

  void check_same(const Series& o) const {
    if (!vars_ || !o.vars_) throw Error(ErrorCode::VarMismatch, "uninitialised series");
    if (vars_ != o.vars_ && !(*vars_ == *o.vars_)) throw Error(ErrorCode::VarMismatch, "series live in different rings");
    if (!Traits::same_ring(ctx_, o.ctx_)) throw Error(ErrorCode::BaseMismatch, "coefficient rings differ");
  }

 private:
  void finish() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return Traits::is_zero(t.second); }),
                 terms_.end());
    const VarTable& V = *vars_;
    std::sort(terms_.begin(), terms_.end(), [&V](const Term& a, const Term& b) { return V.less(a.first, b.first); });
  }

  Series subst_rec(const std::vector<Term>& terms, std::vector<std::size_t> idx, std::size_t var,
                   const std::vector<Series>& images, std::vector<std::vector<Series>>& powers) const {
    const Series& proto = images.front();
    Series zero(proto.vars_, proto.ctx_);
    if (idx.empty()) return zero;
    if (var == images.size()) {
      S c = Traits::zero(ctx_);
      for (auto i : idx) c = c + terms[i].second;
      return constant(proto.vars_, proto.ctx_, c);
    }
    std::map<int, std::vector<std::size_t>> groups;
    for (auto i : idx) groups[terms[i].first.e[var]].push_back(i);
    Series acc = zero;
    for (auto& [e, sub] : groups) {
      Series rest = subst_rec(terms, std::move(sub), var + 1, images, powers);
      if (rest.is_zero()) continue;
      auto& pw = powers[var];
      if (pw.empty()) pw.push_back(one(proto.vars_, proto.ctx_));
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[var]);
      acc = acc + (e ? pw[static_cast<std::size_t>(e)] * rest : rest);
    }
    return acc;
  }

  VarTablePtr vars_;
  Ctx ctx_{};
  std::vector<Term> terms_;
};

/// Embeds f and g into the tensor ring on the concatenated variables.
template <class S>
std::pair<Series<S>, Series<S>> tensor_embed(const Series<S>& f, const Series<S>& g, VarTablePtr* out_vars = nullptr) {
  if (!ScalarTraits<S>::same_ring(f.ctx(), g.ctx())) throw Error(ErrorCode::BaseMismatch, "tensor over different bases");
  auto V = VarTable::tensor(*f.vars(), *g.vars());
  const std::size_t na = f.vars()->size();
  std::vector<typename Series<S>::Term> tf, tg;
  for (const auto& [m, c] : f.terms()) tf.push_back({m, c});
  for (const auto& [m, c] : g.terms()) {
    Monomial mm;
    for (std::size_t k = 0; k < g.vars()->size(); ++k) mm.e[na + k] = m.e[k];
    tg.push_back({mm, c});
  }
  if (out_vars) *out_vars = V;
  return {Series<S>::from_terms(V, f.ctx(), std::move(tf)), Series<S>::from_terms(V, f.ctx(), std::move(tg))};
}

/// f (x) g as an element of the tensor ring.
template <class S>
Series<S> tensor(const Series<S>& f, const Series<S>& g) {
  auto [a, b] = tensor_embed(f, g);
  return a * b;
}

}  // namespace chromalg
