#pragma once

#include <string>
#include <vector>

#include "chromalg/comod.hpp"
#include "chromalg/isofind.hpp"

namespace chromalg {

enum class Flavor { E, K };

/// A[[x]] mod x^N with x in degree 2, over the coefficient tower of `law`.
struct ProjModel {
  Flavor flavor = Flavor::E;
  int p = 0;
  int n = 0;
  int N = 0;
  FGL law;
};

/// N = 0 selects p^(n+1).
ProjModel proj_model(Flavor flavor, const FGL& law, int n, int N = 0);

/// Lambda(y) (x) A[x]/(x^(p^n)), basis x^a then y x^a.
struct LensModel {
  Flavor flavor = Flavor::E;
  int p = 0;
  int n = 0;

  std::size_t rank() const;
  std::vector<std::string> names() const;
};

/// rho(x) = sum^F t_i x^(p^i) mod x^N, written in the basis x^a.
CoactionVec coaction_x(const ProjModel& M, const CompositeHopf& H);
CoactionVec coaction_x(const LensModel& M, const CompositeHopf& H);
/// rho(y) = 1 (x) y + b(x).
CoactionVec coaction_y(const LensModel& M, const CompositeHopf& H);

/// Multiplicative extension of coaction_x to the basis x^a.
Comodule proj_comodule(const ProjModel& M, const CompositeHopf& H);
/// The comodule axioms on the quotient by x^(p^n), and agreement of the
/// coaction with the one computed at truncation N - 1.
std::vector<AxiomCheck> proj_checks(const ProjModel& M, const CompositeHopf& H);

struct ChernData {
  FGLIso iso;
  int p = 0;
  int n = 0;
  TowerElem phi0;        // leading coefficient of Phi
  TSeries theta_x;       // Phi^-1 mod X^(p^n): the image of x_E in the K-side lens model
  TMatrix bhat;          // bhat[j][i]: coefficient of b^E_j in bhat_i
  TMatrix bhat_w;        // the same in the basis phi0^(-p^j) b^E_j coming from w = phi0^-1 u
};

/// Verifies the isomorphism and derives Phi0, Phi^-1 and the bhat matrix.
/// Throws PrecisionExhausted when Phi^-1 is not known below X^(p^n).
ChernData chern_data(const FGLIso& iso);

/// Matrix of bhat(X) = sum_j b_j psi(X)^(p^j) mod X^(p^n) for an additive
/// series psi; entry [j][i] is the coefficient of b_j in bhat_i.
TMatrix bhat_matrix(int p, int n, const TSeries& psi);
TMatrix bhat_basis(const ChernData& data);

/// L-linear map of lens models: m[k][l] is the coefficient of target basis
/// element l in the image of source basis element k.
struct LensMap {
  int p = 0;
  int n = 0;
  TMatrix m;
};

/// The ring map with x -> x_image and y -> y. Throws RelationNotPreserved
/// when x_image^(p^n) is nonzero in the target.
LensMap lens_ring_map(int p, int n, const TSeries& x_image);
/// x_E -> Phi^-1(x_K), y_E -> y_K.
LensMap chern_theta(const ChernData& data);
/// Product in the lens model on coordinate vectors.
std::vector<TowerElem> lens_mul(int p, int n, const std::vector<TowerElem>& a, const std::vector<TowerElem>& b);
/// Unit, y^2 = 0, x^(p^n) = 0 and f(ab) = f(a) f(b) on all basis pairs.
std::vector<AxiomCheck> check_ring_map(const LensMap& f);

/// b^E_j -> sum_i C[j][i] b^K_i with C the inverse transpose of bhat, i.e.
/// bhat_i -> b^K_i.
HopfMap bhat_iso(const TMatrix& bhat, const SeriesHopf& lambda);

/// Pushes the E-side Lambda-coaction through f, rewrites it in the bhat basis
/// and renames bhat_i -> b^K_i; compares with the K-side coaction of f(m) on
/// every basis element, then compares the Milnor values on y.
std::vector<AxiomCheck> q_transport_check(const LensMap& f, const TMatrix& bhat, const CompositeHopf& H);

/// GnPlus1 witnesses: bhat^g = bhat. Gn witnesses: bhat^h = bhat o t_K(h)^-1.
/// Both mod X^(p^n); throws InvalidWitness for a witness the isomorphism
/// does not support.
std::vector<AxiomCheck> bhat_invariance_check(const ChernData& data, const std::vector<ActionWitness>& witnesses);

}  // namespace chromalg
