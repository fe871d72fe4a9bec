#include "chromalg/coeffring/finite_field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "chromalg/error.hpp"

namespace chromalg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t r0 = p, r1 = mod_floor(a, p), s0 = 0, s1 = 1;
  if (r1 == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 mod " + std::to_string(p));
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) throw Error(ErrorCode::DivisionByZero, "not invertible mod " + std::to_string(p));
  return mod_floor(s0, p);
}

namespace {

using Poly = std::vector<std::int64_t>;  // low to high over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, int p) {
  trim(a);
  std::int64_t lead_inv = mod_inverse(f.back(), p);
  while (a.size() >= f.size()) {
    std::int64_t c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - f.size();
    for (std::size_t i = 0; i < f.size(); ++i) a[shift + i] = mod_floor(a[shift + i] - c * f[i], p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, int p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool FiniteField::is_irreducible(int p, std::span<const int> monic_modulus) {
  Poly f(monic_modulus.begin(), monic_modulus.end());
  for (auto& c : f) c = mod_floor(c, p);
  trim(f);
  if (f.size() < 2) return false;
  const int m = static_cast<int>(f.size()) - 1;
  auto x_pow_pk = [&](int k) {
    Poly x{0, 1};
    for (int i = 0; i < k; ++i) x = poly_powmod(x, p, f, p);
    return x;
  };
  auto minus_x = [&](Poly a) {
    a.resize(std::max<std::size_t>(a.size(), 2), 0);
    a[1] = mod_floor(a[1] - 1, p);
    trim(a);
    return a;
  };
  if (!minus_x(x_pow_pk(m)).empty()) return false;
  for (auto r : prime_factors(m)) {
    Poly g = poly_gcd(f, minus_x(x_pow_pk(m / static_cast<int>(r))), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<int> FiniteField::default_modulus(int p, int m) {
  if (m == 1) return {0, 1};
  std::vector<int> f(m + 1, 0);
  f[m] = 1;
  // Enumerate lower coefficients in lexicographic order, constant term nonzero.
  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= p;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = m - 1; i >= 0; --i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    if (f[0] == 0) continue;
    if (is_irreducible(p, f)) return f;
  }
  throw Error(ErrorCode::UnsupportedField, "no irreducible polynomial found");
}

std::shared_ptr<const FiniteField> FiniteField::make(int p, int m, std::vector<int> modulus) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(ErrorCode::UnsupportedField, "p = " + std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorCode::UnsupportedField, "degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxOrder)
      throw Error(ErrorCode::UnsupportedField,
                  "field of order " + std::to_string(p) + "^" + std::to_string(m) + " exceeds table limit");
  }
  if (modulus.empty()) {
    modulus = default_modulus(p, m);
  } else {
    for (auto& c : modulus) c = static_cast<int>(mod_floor(c, p));
    if (static_cast<int>(modulus.size()) != m + 1 || modulus.back() != 1)
      throw Error(ErrorCode::UnsupportedField, "modulus must be monic of degree m");
    if (!is_irreducible(p, modulus)) throw Error(ErrorCode::UnsupportedField, "modulus is reducible");
  }
  return std::shared_ptr<const FiniteField>(new FiniteField(p, m, std::move(modulus)));
}

FiniteField::FiniteField(int p, int m, std::vector<int> modulus)
    : p_(p), m_(m), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < m; ++i) {
    pow_p_.push_back(q_);
    q_ *= static_cast<std::uint32_t>(p);
  }
  Poly f(modulus_.begin(), modulus_.end());
  auto encode = [&](const Poly& a) {
    Elem e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e += static_cast<Elem>(a[i]) * pow_p_[i];
    return e;
  };
  auto decode = [&](Elem e) {
    Poly a(m_, 0);
    for (int i = 0; i < m_; ++i) {
      a[i] = e % p_;
      e /= p_;
    }
    trim(a);
    return a;
  };
  exp_.assign(q_ - 1 == 0 ? 1 : q_ - 1, 1);
  log_.assign(q_, 0);
  if (q_ == 2) {
    exp_ = {1};
    return;
  }
  auto factors = prime_factors(q_ - 1);
  Elem g = 0;
  for (Elem cand = 2; cand < q_; ++cand) {
    Poly c = decode(cand);
    bool ok = true;
    for (auto r : factors) {
      if (poly_powmod(c, (q_ - 1) / r, f, p_) == Poly{1}) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = cand;
      break;
    }
  }
  Poly gp = decode(g), cur{1};
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    Elem e = encode(cur);
    exp_[i] = e;
    log_[e] = i;
    cur = poly_mulmod(cur, gp, f, p_);
  }
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const noexcept {
  if (m_ == 1) return (a + b) % p_;
  Elem r = 0;
  for (int i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const noexcept {
  if (m_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0;
  for (int i = 0; i < m_; ++i) {
    Elem d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    a /= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in F_" + std::to_string(q_));
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

FiniteField::Elem FiniteField::pow(Elem a, std::int64_t e) const {
  if (e == 0) return 1;
  if (a == 0) {
    if (e < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return 0;
  }
  std::int64_t n = q_ - 1;
  std::int64_t l = static_cast<std::int64_t>(log_[a]) * (mod_floor(e, n)) % n;
  return exp_[static_cast<std::size_t>(l)];
}

FiniteField::Elem FiniteField::frobenius(Elem a, int k) const {
  if (a == 0 || m_ == 1) return a;
  std::int64_t n = q_ - 1;
  int kk = static_cast<int>(mod_floor(k, m_));
  std::int64_t l = log_[a];
  for (int i = 0; i < kk; ++i) l = l * p_ % n;
  return exp_[static_cast<std::size_t>(l)];
}

bool FiniteField::in_subfield(Elem a, int d) const {
  if (d <= 0) return false;
  return frobenius(a, d) == a;
}

std::uint32_t FiniteField::discrete_log(Elem a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "log of zero");
  return log_[a];
}

std::vector<int> FiniteField::digits(Elem a) const {
  std::vector<int> d(m_);
  for (int i = 0; i < m_; ++i) {
    d[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return d;
}

FiniteField::Elem FiniteField::from_digits(std::span<const int> d) const {
  // Digits beyond m are reduced using the modulus.
  Poly a(d.begin(), d.end());
  for (auto& c : a) c = mod_floor(c, p_);
  Poly f(modulus_.begin(), modulus_.end());
  a = poly_mod(std::move(a), f, p_);
  Elem e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e += static_cast<Elem>(a[i]) * pow_p_[i];
  return e;
}

std::string FiniteField::to_string(Elem a) const {
  auto d = digits(a);
  std::string out;
  for (int i = 0; i < m_; ++i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]) + "*";
      out += "a";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

FiniteField::Elem FiniteField::parse(std::string_view text) const {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty field element");
  std::vector<int> acc;
  std::size_t i = 0;
  auto read_int = [&](std::int64_t& v) {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return false;
    std::from_chars(s.data() + i, s.data() + j, v);
    i = j;
    return true;
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::int64_t coef = 1, deg = 0;
    bool have_coef = read_int(coef);
    if (i < s.size() && (s[i] == '*' || s[i] == 'a')) {
      if (s[i] == '*') {
        if (!have_coef) throw Error(ErrorCode::ParseError, "bad field element: " + s);
        ++i;
      }
      if (i >= s.size() || s[i] != 'a') throw Error(ErrorCode::ParseError, "bad field element: " + s);
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (!read_int(deg)) throw Error(ErrorCode::ParseError, "bad exponent: " + s);
      }
    } else if (!have_coef) {
      throw Error(ErrorCode::ParseError, "bad field element: " + s);
    }
    if (static_cast<std::size_t>(deg) >= acc.size()) acc.resize(deg + 1, 0);
    acc[deg] = static_cast<int>(mod_floor(acc[deg] + sign * mod_floor(coef, p_), p_));
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw Error(ErrorCode::ParseError, "bad field element: " + s);
  }
  if (m_ == 1 && acc.size() > 1) {
    for (std::size_t k = 1; k < acc.size(); ++k)
      if (acc[k] != 0) throw Error(ErrorCode::ParseError, "prime field has no generator a: " + s);
    acc.resize(1);
  }
  return from_digits(acc);
}

FieldEmbedding::FieldEmbedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
  if (small_->p() != big_->p() || big_->m() % small_->m() != 0)
    throw Error(ErrorCode::BaseMismatch, "no embedding between these fields");
  const auto& f = small_->modulus();
  FiniteField::Elem root = 0;
  bool found = false;
  for (FiniteField::Elem x = 0; x < big_->order() && !found; ++x) {
    FiniteField::Elem acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = big_->add(big_->mul(acc, x), big_->from_int(f[i]));
    if (acc == 0) {
      root = x;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::BaseMismatch, "modulus has no root in the larger field");
  FiniteField::Elem pw = 1;
  for (int i = 0; i < small_->m(); ++i) {
    gen_pows_.push_back(pw);
    pw = big_->mul(pw, root);
  }
}

FiniteField::Elem FieldEmbedding::operator()(FiniteField::Elem x) const {
  auto d = small_->digits(x);
  FiniteField::Elem r = 0;
  for (std::size_t i = 0; i < d.size(); ++i) r = big_->add(r, big_->mul(big_->from_int(d[i]), gen_pows_[i]));
  return r;
}

}  // namespace chromalg
