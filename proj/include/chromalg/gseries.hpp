#pragma once

#include "chromalg/gseries/scalar.hpp"
#include "chromalg/gseries/series.hpp"
#include "chromalg/gseries/vartable.hpp"

namespace chromalg {

using QSeries = Series<PLocalRational>;
using TSeries = Series<TowerElem>;

/// Univariate table {name} truncated at x^n.
inline VarTablePtr univariate(const std::string& name, int n, int degree = 0) {
  return VarTable::make({VarSpec{name, degree, Parity::Even, n, 1}});
}

/// Even variables truncated by total degree < n.
inline VarTablePtr total_degree_table(const std::vector<std::string>& names, int n) {
  std::vector<VarSpec> vs;
  for (const auto& s : names) vs.push_back(VarSpec{s, 0, Parity::Even, 0, 1});
  return VarTable::make(std::move(vs), n);
}

}  // namespace chromalg
