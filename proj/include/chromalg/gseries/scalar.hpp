#pragma once

#include <string>

#include "chromalg/coeffring.hpp"

namespace chromalg {

template <class S>
struct ScalarTraits;

struct RationalRing {
  bool operator==(const RationalRing&) const = default;
};

template <>
struct ScalarTraits<PLocalRational> {
  using Ctx = RationalRing;
  static PLocalRational zero(const Ctx&) { return PLocalRational(0); }
  static PLocalRational one(const Ctx&) { return PLocalRational(1); }
  static PLocalRational from_int(const Ctx&, long long k) { return PLocalRational(k); }
  static bool is_zero(const PLocalRational& a) { return a.is_zero(); }
  static PLocalRational inv(const PLocalRational& a) { return a.inv(); }
  static bool same_ring(const Ctx&, const Ctx&) { return true; }
  static std::string to_string(const PLocalRational& a) { return a.to_string(); }
  static PLocalRational parse(const Ctx&, const std::string& s) { return PLocalRational::parse(s); }
  static std::string describe(const Ctx&) { return "Q"; }
};

template <>
struct ScalarTraits<TowerElem> {
  using Ctx = TowerPtr;
  static TowerElem zero(const Ctx& t) { return t->zero(); }
  static TowerElem one(const Ctx& t) { return t->one(); }
  static TowerElem from_int(const Ctx& t, long long k) { return t->from_int(k); }
  static bool is_zero(const TowerElem& a) { return a.is_zero(); }
  static TowerElem inv(const TowerElem& a) { return a.inv(); }
  static bool same_ring(const Ctx& a, const Ctx& b) { return a.get() == b.get(); }
  static std::string to_string(const TowerElem& a) { return a.to_string(); }
  static TowerElem parse(const Ctx& t, const std::string& s) { return t->parse(s); }
  static std::string describe(const Ctx& t) { return t->descriptor(); }
};

}  // namespace chromalg
