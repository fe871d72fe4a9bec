#pragma once

#include <random>

#include "chromalg/coeffring.hpp"

namespace chromalg::testing {

inline TowerElem random_elem(const Tower& T, std::mt19937_64& rng, int min_val = 0) {
  std::uniform_int_distribution<std::uint32_t> coef(0, T.field()->order() - 1);
  std::vector<LSeries> coords;
  for (int i = 0; i < T.dim(); ++i) {
    LSeries s{min_val, T.is_laurent() ? T.cap() : LSeries::kExact, {}};
    int len = T.is_laurent() ? T.cap() - min_val : 1;
    for (int k = 0; k < len; ++k) s.coef.push_back(coef(rng));
    coords.push_back(s);
  }
  return T.from_coords(std::move(coords));
}

}  // namespace chromalg::testing
