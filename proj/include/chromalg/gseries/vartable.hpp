#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace chromalg {

enum class Parity { Even, Odd };

struct VarSpec {
  std::string name;
  int degree = 0;
  Parity parity = Parity::Even;
  int trunc = 0;   // powers >= trunc vanish; 0 means no per-variable bound
  int weight = 1;  // contribution to the total weighted degree
};

inline constexpr std::size_t kMaxVars = 32;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  bool operator==(const Monomial&) const = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

class VarTable;
using VarTablePtr = std::shared_ptr<const VarTable>;

/// Ordered variables of a graded series ring plus an optional cap on the total
/// weighted degree (monomials with weighted degree >= total_cap vanish).
class VarTable {
 public:
  static VarTablePtr make(std::vector<VarSpec> vars, int total_cap = 0);
  /// Concatenation used for tensor products; names get the given suffixes.
  static VarTablePtr tensor(const VarTable& a, const VarTable& b, const std::string& sa = "_1",
                            const std::string& sb = "_2");

  std::size_t size() const noexcept { return vars_.size(); }
  const VarSpec& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<VarSpec>& vars() const noexcept { return vars_; }
  int total_cap() const noexcept { return total_cap_; }
  std::uint32_t odd_mask() const noexcept { return odd_mask_; }
  /// Index of a variable; throws VarMismatch when absent.
  std::size_t index(const std::string& name) const;
  bool has(const std::string& name) const;

  bool admissible(const Monomial& m) const noexcept;
  int weighted_degree(const Monomial& m) const noexcept;
  int degree(const Monomial& m) const noexcept;
  std::uint32_t odd_bits(const Monomial& m) const noexcept;
  /// Graded order: weighted degree first, then earlier variables first.
  bool less(const Monomial& a, const Monomial& b) const noexcept;

  bool operator==(const VarTable& o) const;

 private:
  VarTable(std::vector<VarSpec> vars, int total_cap);
  std::vector<VarSpec> vars_;
  int total_cap_;
  std::uint32_t odd_mask_ = 0;
};

/// Sign of m1*m2 relative to the sorted product; 0 if an odd variable repeats.
int koszul_sign(std::uint32_t odd1, std::uint32_t odd2) noexcept;

}  // namespace chromalg
