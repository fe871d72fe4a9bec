#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chromalg/hopfalg.hpp"

namespace chromalg {

// ------------------------------------------------------------ finite groups

using RMatrix = std::vector<std::vector<ActedRing::Elem>>;

/// Right action of a finite group on a free R-module, semilinear over the
/// action on R: (m_k)g = sum_l action[g][k][l] m_l and (am)g = a^g (m)g.
struct TwistedModule {
  const FunctionHopf* C = nullptr;
  std::vector<RMatrix> action;

  std::size_t rank() const { return action.empty() ? 0 : action[0].size(); }
  std::vector<ActedRing::Elem> act(const std::vector<ActedRing::Elem>& m, int g) const;
};

/// Left C(G,R)-comodule: rho(m_k) = sum_l rho[k][l] (x) m_l.
struct GroupComodule {
  const FunctionHopf* C = nullptr;
  std::vector<std::vector<FunctionHopf::Elem>> rho;

  std::size_t rank() const { return rho.size(); }
};

std::vector<AxiomCheck> check_twisted(const TwistedModule& M, std::uint64_t seed = 1);
std::vector<AxiomCheck> check_comodule(const GroupComodule& M);

TwistedModule comod_to_twisted(const GroupComodule& M);
GroupComodule twisted_to_comod(const TwistedModule& M);
TwistedModule tensor(const TwistedModule& a, const TwistedModule& b);
GroupComodule tensor(const GroupComodule& a, const GroupComodule& b);

TwistedModule trivial_twisted(const FunctionHopf& C, int rank);
/// P^g Pi_g P^-1 with Pi the regular representation (when rank >= |G|) padded
/// by trivial summands and P a random invertible matrix over R.
TwistedModule random_twisted(const FunctionHopf& C, int rank, std::mt19937_64& rng);

ActedRing::Elem ring_inverse(const ActedRing& R, const ActedRing::Elem& a);
RMatrix invert(const ActedRing& R, const RMatrix& m);

// ------------------------------------------------------------ series Hopf algebras

using TMatrix = std::vector<std::vector<TowerElem>>;
/// An element of Gamma (x) M written in the basis of M.
using CoactionVec = std::vector<TSeries>;

/// Finite-rank free comodule over a SeriesHopf with a homogeneous basis.
/// `weight` is the exponent by which a Teichmuller scalar a_0 acts on a basis
/// element; only the group-twist check reads it.
struct Comodule {
  const SeriesHopf* hopf = nullptr;
  std::vector<std::string> names;
  std::vector<int> degree;
  std::vector<int> weight;
  std::vector<CoactionVec> rho;

  std::size_t rank() const { return names.size(); }
  bool odd(std::size_t k) const { return (degree[k] % 2 + 2) % 2 == 1; }
};

/// Negates the odd part of s when `odd` holds; the sign for moving s past an
/// element of that parity.
TSeries koszul_twist(const TSeries& s, bool odd);

std::vector<AxiomCheck> check_comodule(const Comodule& M);
Comodule trivial_comodule(const SeriesHopf& H, std::vector<std::string> names, std::vector<int> degree);
Comodule tensor(const Comodule& a, const Comodule& b);
Comodule pushforward(const Comodule& M, const HopfMap& f);
/// New basis m'_k = sum_a P[k][a] m_a.
Comodule change_basis(const Comodule& M, const TMatrix& P);
/// Lambda (x) V with V spanned by vectors of the given degrees.
Comodule cofree_comodule(const SeriesHopf& lambda, const std::vector<int>& v_degrees);
/// Cofree comodule in a random degree-preserving basis.
Comodule random_lambda_comodule(const SeriesHopf& lambda, int v_rank, std::mt19937_64& rng);

TMatrix identity_matrix(const TowerPtr& T, std::size_t n);
TMatrix matmul(const TMatrix& a, const TMatrix& b);
TMatrix invert(const TMatrix& m);

/// Lambda(y) (x) A[x]/(x^(p^n)) with basis x^a, y x^a. The coaction is the
/// multiplicative extension of the given rho(x) and rho(y).
Comodule multiplicative_lens(const SeriesHopf& H, int p, int n, const CoactionVec& rho_x, const CoactionVec& rho_y);
CoactionVec lens_basis_vector(const SeriesHopf& H, int p, int n, const std::string& name, const TSeries& coeff);
std::size_t lens_index(int p, int n, bool with_y, int a);
/// rho(x) = t(x) mod x^(p^n), rho(y) = 1 (x) y + b(x).
Comodule lens_comodule(const CompositeHopf& H);
Comodule lens_c_comodule(const CompositeHopf& H);
Comodule lens_lambda_comodule(const CompositeHopf& H);

// ------------------------------------------------------------ Milnor operations

/// (m_k)Q_i = sum_l Q[i][k][l] m_l.
struct MilnorAction {
  int n = 0;
  std::vector<TMatrix> Q;
  /// Q_i Q_j + Q_j Q_i = 0 for all i, j; empty witness when it holds.
  AxiomCheck anticommutation() const;
};

/// Q_i from the coefficient of b_i in the coaction with
/// (x)Q_i = (-1)^(|x|+1) x_i. Works over Lambda or the composite.
MilnorAction extract_milnor(const Comodule& M, int n);
std::vector<AxiomCheck> milnor_derivation_check(const Comodule& M, const Comodule& N, int n);

/// Group element acting through t(g) = sum a_j X^(p^j): b -> 0,
/// t_j -> a_j a_0^(-p^j), then basis vectors scale by a_0^weight.
TMatrix twist_action(const Comodule& M, const CompositeHopf& H, const std::vector<TowerElem>& a);
/// (Q_i)^g = g^-1 Q_i g against sum_{j>=i} a_{j-i}^(p^i) Q_j, and
/// ((x)Q_i)g = ((x)g)(Q_i)^g on the basis.
std::vector<AxiomCheck> milnor_twist_check(const Comodule& M, const CompositeHopf& H, const std::vector<TowerElem>& a);

struct MilnorCoordinates {
  bool in_span = false;
  std::vector<TowerElem> q;
  std::string witness;
};
/// Solves D = sum q_i Q_i from the row of basis element y, then checks D on
/// every basis element.
MilnorCoordinates recognize_milnor(const MilnorAction& Q, const TMatrix& D, std::size_t y);

// ------------------------------------------------------------ C-Lambda assembly

struct CLambdaComodule {
  const CompositeHopf* H = nullptr;
  Comodule c;       // over H->c_part
  Comodule lambda;  // over H->lambda, same basis
};

/// b_i -> sum_j chi(t_(i-j))^(p^j) b_j inside the composite: the left
/// C-coaction on Lambda followed by multiplication C (x) Lambda -> A.
TSeries rho_c_lambda(const CompositeHopf& H, const TSeries& a);
/// rho_(C, Lambda (x) M) o rho_Lambda = (1 (x) rho_Lambda) o rho_C on the basis.
AxiomCheck compatibility_check(const CLambdaComodule& M);
/// rho_M = rho_(C, Lambda (x) M) o rho_(Lambda, M); throws CompatibilityFailure.
Comodule assemble(const CLambdaComodule& M);
CLambdaComodule split(const Comodule& M, const CompositeHopf& H);
/// lens (x) span(e0, e1) with |e0| = 0, |e1| = 2 and trivial coaction on e,
/// in a random degree-preserving basis (a product of unipotent triangular
/// matrices within each degree).
Comodule random_composite_comodule(const CompositeHopf& H, std::mt19937_64& rng);
/// The four squares of the nine-term diagram on basis elements, followed by
/// the generator identities (1 (x) rho_(C,Lambda)) psi_Lambda =
/// rho_(Lambda, C (x) Lambda) rho_(C,Lambda) and
/// (rho_(C, Lambda (x) C) (x) 1) rho_(Lambda, C (x) Lambda) = psi.
std::vector<AxiomCheck> nine_diagram_check(const CLambdaComodule& M);
std::vector<AxiomCheck> generator_identities(const CompositeHopf& H);

}  // namespace chromalg
