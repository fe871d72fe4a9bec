#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "chromalg/coeffring/finite_field.hpp"

namespace chromalg {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact rational used while logarithms are still in characteristic zero.
class PLocalRational {
 public:
  PLocalRational() = default;
  PLocalRational(long long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  PLocalRational(const BigInt& num, const BigInt& den);
  explicit PLocalRational(BigRational q) : q_(std::move(q)) {}

  const BigRational& value() const noexcept { return q_; }
  BigInt numerator() const { return boost::multiprecision::numerator(q_); }
  BigInt denominator() const { return boost::multiprecision::denominator(q_); }
  bool is_zero() const { return q_ == 0; }

  PLocalRational operator+(const PLocalRational& o) const { return PLocalRational(BigRational(q_ + o.q_)); }
  PLocalRational operator-(const PLocalRational& o) const { return PLocalRational(BigRational(q_ - o.q_)); }
  PLocalRational operator-() const { return PLocalRational(BigRational(-q_)); }
  PLocalRational operator*(const PLocalRational& o) const { return PLocalRational(BigRational(q_ * o.q_)); }
  PLocalRational operator/(const PLocalRational& o) const;
  PLocalRational& operator+=(const PLocalRational& o) { q_ += o.q_; return *this; }
  PLocalRational& operator-=(const PLocalRational& o) { q_ -= o.q_; return *this; }
  PLocalRational& operator*=(const PLocalRational& o) { q_ *= o.q_; return *this; }
  bool operator==(const PLocalRational& o) const { return q_ == o.q_; }

  PLocalRational inv() const;
  PLocalRational pow(long long e) const;
  bool is_p_integral(int p) const;
  /// Image in F_p; throws NotPIntegral when p divides the denominator.
  long long reduce_mod_p(int p) const;

  std::string to_string() const;
  static PLocalRational parse(const std::string& text);

 private:
  BigRational q_;
};

}  // namespace chromalg
