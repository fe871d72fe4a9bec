#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chromalg/fgl.hpp"

namespace chromalg {

struct SolveOptions {
  int N = 0;           // Phi is computed mod X^N, homomorphy mod total degree N
  int uprec = 0;       // 0 keeps the source tower's u-precision
  int pole_bound = -1;  // in powers of u; -1 selects 2(p^n - 1)
};

/// Isomorphism Phi: source -> target with Phi = sum^target c_j X^(p^j).
struct FGLIso {
  FGL source;
  FGL target;
  int n = 0;
  int N = 0;
  TowerPtr tower;
  TSeries phi;
  TSeries inverse;
  std::vector<TowerElem> c;
  std::vector<int> c_gen;  // tower generator z with c_j = c_0^(p^j) * z, or -1
  std::vector<int> free_indices;  // c_j left at 0 because truncation does not see them
  std::vector<std::string> steps;
};

FGLIso solve_phi(const FGL& F, const FGL& H, int n, SolveOptions opts);
/// Wraps user data; the tower is taken from phi.
FGLIso make_iso(const FGL& F, const FGL& H, int n, TSeries phi);

struct IsoReport {
  bool ok = false;
  bool inverse_ok = false;
  int degree = -1;          // lowest total degree with a discrepancy
  std::string discrepancy;  // lowest discrepant term of Phi(F) - H(Phi, Phi)
};
IsoReport verify_iso(const FGLIso& iso);

/// ((X+Y)^d - X^d - Y^d)/p reduced mod p, in the ring of `vars`.
TSeries lazard_c(int d, int p, const VarTablePtr& vars, const TowerPtr& tower);
/// Series i(X) with F(X, i(X)) = 0.
TSeries formal_negation(const FGL& F, const VarTablePtr& vars);
/// Coefficients c_j with s = sum^H c_j X^(p^j); throws UnsupportedExtension
/// when s is not of that form.
std::vector<TowerElem> ptypical_coeffs(const FGL& H, const TSeries& s);

/// Recognizes s as an automorphism of the height-n Honda law: it must be an
/// endomorphism with p-typical coefficients a satisfying a^(p^n) = a and an
/// invertible leading coefficient. Coefficients a_j with p^(n+j) >= N are not
/// constrained by the truncated law and are not checked.
bool is_honda_automorphism(const FGL& H, int n, const TSeries& s);

enum class WitnessKind { GnPlus1, Gn };

/// For GnPlus1: series = t_E(g), an isomorphism F -> F^g. For Gn: series =
/// t_K(h), an automorphism of H. frob is the power of Frobenius on F_q; u is
/// fixed by the action.
struct ActionWitness {
  WitnessKind kind = WitnessKind::Gn;
  TSeries series;
  int frob = 0;
};

struct EquivarianceReport {
  bool ok = false;
  std::string detail;
  int compared_below = 0;  // Phi^g and its prediction agree mod X^compared_below
  std::optional<TowerAutomorphism> action;
};

/// Derives the automorphism g of the tower from the witness and checks
/// Phi^g o t_E(g) = Phi (GnPlus1) or t_K(h) o Phi = Phi^h (Gn).
EquivarianceReport check_equivariance(const FGLIso& iso, const ActionWitness& w);

/// Applies a tower automorphism to every coefficient.
TSeries apply_to_coeffs(const TowerAutomorphism& g, const TSeries& s);

}  // namespace chromalg
