#include "chromalg/gseries/vartable.hpp"

#include <bit>
#include <cstring>
#include <set>

#include "chromalg/error.hpp"

namespace chromalg {

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t w[kMaxVars / 8];
  std::memcpy(w, m.e.data(), sizeof(w));
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (auto x : w) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

VarTable::VarTable(std::vector<VarSpec> vars, int total_cap) : vars_(std::move(vars)), total_cap_(total_cap) {
  if (vars_.size() > kMaxVars)
    throw Error(ErrorCode::VarMismatch, "at most " + std::to_string(kMaxVars) + " variables are supported");
  std::set<std::string> names;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto& v = vars_[i];
    if (v.name.empty() || !names.insert(v.name).second)
      throw Error(ErrorCode::VarMismatch, "variable names must be unique and nonempty: '" + v.name + "'");
    if (v.parity == Parity::Odd) {
      v.trunc = 2;
      odd_mask_ |= 1u << i;
    }
    if (v.trunc < 0 || v.trunc > 255) throw Error(ErrorCode::VarMismatch, "bad truncation for " + v.name);
    if (v.weight < 0) throw Error(ErrorCode::VarMismatch, "negative weight for " + v.name);
  }
}

VarTablePtr VarTable::make(std::vector<VarSpec> vars, int total_cap) {
  return VarTablePtr(new VarTable(std::move(vars), total_cap));
}

VarTablePtr VarTable::tensor(const VarTable& a, const VarTable& b, const std::string& sa, const std::string& sb) {
  std::vector<VarSpec> vs;
  for (auto v : a.vars_) {
    v.name += sa;
    vs.push_back(v);
  }
  for (auto v : b.vars_) {
    v.name += sb;
    vs.push_back(v);
  }
  int cap = 0;
  if (a.total_cap_ && b.total_cap_) cap = std::max(a.total_cap_, b.total_cap_);
  return make(std::move(vs), cap);
}

std::size_t VarTable::index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  throw Error(ErrorCode::VarMismatch, "unknown variable '" + name + "'");
}

bool VarTable::has(const std::string& name) const {
  for (const auto& v : vars_)
    if (v.name == name) return true;
  return false;
}

bool VarTable::admissible(const Monomial& m) const noexcept {
  int w = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].trunc && m.e[i] >= vars_[i].trunc) return false;
    w += m.e[i] * vars_[i].weight;
  }
  return total_cap_ == 0 || w < total_cap_;
}

int VarTable::weighted_degree(const Monomial& m) const noexcept {
  int w = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) w += m.e[i] * vars_[i].weight;
  return w;
}

int VarTable::degree(const Monomial& m) const noexcept {
  int d = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) d += m.e[i] * vars_[i].degree;
  return d;
}

std::uint32_t VarTable::odd_bits(const Monomial& m) const noexcept {
  std::uint32_t b = 0;
  for (std::uint32_t mask = odd_mask_; mask; mask &= mask - 1) {
    int i = std::countr_zero(mask);
    if (m.e[static_cast<std::size_t>(i)]) b |= 1u << i;
  }
  return b;
}

bool VarTable::less(const Monomial& a, const Monomial& b) const noexcept {
  int wa = weighted_degree(a), wb = weighted_degree(b);
  if (wa != wb) return wa < wb;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

bool VarTable::operator==(const VarTable& o) const {
  if (total_cap_ != o.total_cap_ || vars_.size() != o.vars_.size()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto &x = vars_[i], &y = o.vars_[i];
    if (x.name != y.name || x.degree != y.degree || x.parity != y.parity || x.trunc != y.trunc || x.weight != y.weight)
      return false;
  }
  return true;
}

int koszul_sign(std::uint32_t odd1, std::uint32_t odd2) noexcept {
  if (odd1 & odd2) return 0;
  int swaps = 0;
  for (std::uint32_t m = odd2; m; m &= m - 1) {
    int j = std::countr_zero(m);
    swaps += std::popcount(static_cast<std::uint64_t>(odd1) >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

}  // namespace chromalg
