#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chromalg/gseries.hpp"

namespace chromalg {

/// v_index -> value * u^u_power; the value is an integer or a tower element.
struct VAssignment {
  int index = 0;
  std::optional<long long> integer;
  std::optional<TowerElem> value;
  int u_power = 0;

  static VAssignment of_int(int i, long long k, int u_power) { return {i, k, std::nullopt, u_power}; }
  static VAssignment of_elem(int i, TowerElem v, int u_power) { return {i, std::nullopt, std::move(v), u_power}; }
};

enum class Provenance { HazewinkelSpecialized, Honda, User };

/// Formal group law in X, Y truncated at total degree N over a tower.
struct FGL {
  TSeries F;
  int p = 0;
  int N = 0;
  Provenance provenance = Provenance::User;
  std::string detail;

  const TowerPtr& tower() const { return F.ctx(); }
  /// Same law with coefficients pushed into an extension tower.
  FGL lift_to(const TowerPtr& ext) const;
};

/// Variables X, Y with total degree < N.
VarTablePtr xy_table(int N);
/// Variable X truncated at X^N.
VarTablePtr x_table(int N);

/// Hazewinkel logarithm coefficients m_k (coefficient of X^(p^k)) as
/// polynomials in v_1..v_depth.
std::vector<QSeries> hazewinkel_log(int p, int depth);

FGL honda_fgl(int n, const TowerPtr& tower, int N);
FGL specialize_hazewinkel(int p, const std::vector<VAssignment>& assignments, const TowerPtr& tower, int N);
FGL additive_fgl(const TowerPtr& tower, int N);
FGL multiplicative_fgl(const TowerPtr& tower, int N);
FGL user_fgl(TSeries F, int p);

/// The E-theory law at height n+1 read mod I_n: v_n -> u, v_{n+1} -> 1.
FGL e_law(int n, const TowerPtr& laurent_tower, int N);

/// Left fold of F over the summands, in the summands' ring.
TSeries formal_sum(const FGL& F, const std::vector<TSeries>& summands);
TSeries p_series(const FGL& F);
/// h with [p](X) = (unit) X^(p^h) + ...; nullopt when [p] vanishes.
std::optional<int> height(const FGL& F);

struct AxiomFailure {
  std::string axiom;
  std::string witness;
};
/// Unit, commutativity and associativity mod total degree N.
std::vector<AxiomFailure> check_fgl_axioms(const FGL& F);
/// F == X + Y mod (X,Y)^(p^n).
bool strict_height_at_least(const FGL& F, int n);

/// t(X) = sum^H a_i X^(p^i) with a_i in F_{p^n}.
struct HondaEndo {
  FGL H;
  int n = 0;
  std::vector<TowerElem> coeffs;
  TSeries series;

  static HondaEndo make(const FGL& H, int n, std::vector<TowerElem> coeffs, int N);
  bool is_automorphism() const { return !coeffs.empty() && !coeffs[0].is_zero(); }
  /// t(H(X,Y)) == H(t(X), t(Y)) mod truncation.
  bool is_endomorphism() const;
  TSeries compose(const HondaEndo& o) const { return series.compose(o.series); }
  TSeries add(const HondaEndo& o) const;
};

}  // namespace chromalg
