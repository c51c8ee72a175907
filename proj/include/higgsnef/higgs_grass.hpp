#pragma once

// The scheme of rank-one Higgs quotients HG_1 inside P(E) for nilpotent chains
// of line bundles: local equations, cokernel/torsion bookkeeping, the
// recursive component decomposition HG_1(E) = HG_1(E/E_m) u P(Q/T(Q)), the
// Chow class of its horizontal part, and restricted lambda/theta values.
//
// "Chain shape" means line atoms, at most one arrow into and one arrow out of
// each atom.  Every declared arrow is taken to be generically an isomorphism
// onto its image, so coker(phi (x) 1) is the sum of the sources modulo torsion.

#include <optional>
#include <string>
#include <vector>

#include "higgsnef/chow.hpp"
#include "higgsnef/model.hpp"
#include "higgsnef/stability.hpp"

namespace higgsnef {

/// Support of a symbolic Higgs matrix: entry (row, col) = phi_{row,col}
/// nonzero, i.e. phi maps basis vector e_col into e_row.  Indices are 1-based.
struct HiggsEntry {
  std::size_t row = 0;
  std::size_t col = 0;

  auto operator<=>(const HiggsEntry&) const = default;
};

struct QuadricTerm {
  int sign = 1;
  std::size_t phi_row = 0;
  std::size_t phi_col = 0;
  std::size_t e_gamma = 0;  // the e_gamma factor
  std::size_t e_other = 0;  // e_alpha or e_beta
};

struct LocalEquation {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  std::vector<QuadricTerm> terms;  // empty when identically zero

  /// "eq(1,2): -phi_{2}{1}*e_2*e_2 = 0".
  std::string str() const;
};

/// For each 1 <= alpha < beta <= r the quadric
///   sum_gamma e_gamma (phi_{gamma beta} e_alpha - phi_{gamma alpha} e_beta),
/// with terms whose phi entry is outside the support pruned.  Terms are
/// ordered by (gamma, alpha-side before beta-side).  Throws Error when the
/// support is not nilpotent.
std::vector<LocalEquation> local_equations(std::size_t r,
                                           const std::vector<HiggsEntry>& support);

/// Support of the Higgs matrix of a line-atom bundle (arrow i -> j gives
/// entry (j+1, i+1)).
std::vector<HiggsEntry> higgs_support(const SplitHiggsBundle& spec);

struct QProfile {
  AtomSet source_atoms;
  /// deg T(Q) = sum over arrows i -> j of d_j - d_i + 2g - 2.
  long torsion_degree = 0;
  /// rk phi(E) = number of arrows.
  long r_phi = 0;
  /// deg of (phi (x) 1)(E (x) K^-1) inside E = sum over arrows of d_i - (2g-2).
  long deg_phi = 0;
};

/// Throws Error("class formulas require chain shape") for branching arrows or
/// non-line atoms, and Error for infeasible arrows (negative torsion).
QProfile cokernel_profile(const SplitHiggsBundle& spec);

struct Component {
  enum class Kind { quotient_PQ, barE_pushforward };
  Kind kind = Kind::quotient_PQ;
  long depth = 0;
  ChowClass cycle_class{ChowAmbient{}};
  /// Pairing with lambda when the component is a curve.
  std::optional<Rational> restricted_lambda;
  bool isomorphic_to_base = false;
  /// For barE_pushforward: the components of HG_1(E/E_m), pushed into P(E).
  std::vector<Component> parts;

  std::string kind_name() const;
};

/// Atoms of the last step E_m of the nilpotent grading (atoms at maximal
/// distance from a source).
AtomSet last_graded_piece(const SplitHiggsBundle& spec);

/// The Higgs bundle E/E_m with the induced field.
SplitHiggsBundle quotient_by_last_piece(const SplitHiggsBundle& spec);

/// Top-level components of the horizontal part of HG_1(E): P(Q/T(Q)) and the
/// pushforward of HG_1(E/E_m); a single P(E) when phi = 0.  Embedded
/// components carry no class and are not listed.
std::vector<Component> hg1_components(const SplitHiggsBundle& spec);

/// Evaluates
///   xi^{r(phi)} - [deg phi(E) + r(phi)(2-2g) + deg T(Q)] xi^{r(phi)-1} F
///     + j_*[HG_1(E/E_m)]
/// with deg phi(E) the degree of the image inside E (x) K, and checks it
/// against the sum of hg1_components; throws InternalError on mismatch.
ChowClass hg1_total_class(const SplitHiggsBundle& spec);

/// Same formula without the cross-check.
ChowClass hg1_total_class_formula(const SplitHiggsBundle& spec);

/// theta_s on the section of Grass_s given by the quotient E -> E/E_S:
/// deg(E/E_S) - (s/r) deg(E).  Throws Error if S is not arrow-closed.
Rational theta_restriction(const SplitHiggsBundle& spec, const AtomSet& kernel);

/// Restricted values for a rank-3 chain L1 -> L2 -> L3.
struct ChainReport {
  SplitHiggsBundle bundle;
  long ineq_kernel_l3 = 0;      // a1 + a2 - 2 a3
  long ineq_kernel_l23 = 0;     // 2 a1 - a2 - a3
  Rational lambda_bar_e;       // lambda on the pushforward of HG_1(E/L3)
  Rational lambda_q;           // lambda on P(Q/T(Q))
  Rational theta_2;            // theta_2 on the section for E -> L1+L2
  Verdict higgs;
};

/// Throws Error unless the input is a rank-3 chain 0 -> 1 -> 2 of lines.
/// Cross-checks the inequality values against the Higgs verdict margins and
/// the Chow pairings against the closed-form expressions in the degrees.
ChainReport rank3_chain_report(const SplitHiggsBundle& spec);

/// rank3_chain_report of the genus-2 example, with every value compared to
/// (2, -2, 4/3, 2/3, -2/3, unstable at L3); throws InternalError otherwise.
ChainReport counterexample_demo();

}  // namespace higgsnef
