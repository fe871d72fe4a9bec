#include "chromalg/coeffring/plocal.hpp"

#include "chromalg/error.hpp"

namespace chromalg {

PLocalRational::PLocalRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  q_ = BigRational(num, den);
}

PLocalRational PLocalRational::operator/(const PLocalRational& o) const {
  if (o.q_ == 0) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
  return PLocalRational(BigRational(q_ / o.q_));
}

PLocalRational PLocalRational::inv() const { return PLocalRational(1) / *this; }

PLocalRational PLocalRational::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  BigRational r = 1, b = q_;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return PLocalRational(std::move(r));
}

bool PLocalRational::is_p_integral(int p) const { return denominator() % p != 0; }

long long PLocalRational::reduce_mod_p(int p) const {
  BigInt den = denominator();
  if (den % p == 0) throw Error(ErrorCode::NotPIntegral, to_string() + " is not " + std::to_string(p) + "-integral");
  BigInt num = numerator() % p;
  long long n = num.convert_to<long long>();
  long long d = BigInt(den % p).convert_to<long long>();
  return mod_floor(mod_floor(n, p) * mod_inverse(d, p), p);
}

std::string PLocalRational::to_string() const {
  if (denominator() == 1) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

PLocalRational PLocalRational::parse(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return PLocalRational(BigInt(text), BigInt(1));
    return PLocalRational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad rational \"" + text + "\"");
  }
}

}  // namespace chromalg
