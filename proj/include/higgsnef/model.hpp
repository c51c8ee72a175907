#pragma once

// Data model for split Higgs bundles on a smooth projective curve.
//
// A bundle is a direct sum of "atoms" (line bundles, or formal stable pieces
// of higher rank) and the Higgs field is recorded only by which atom maps
// into which (arrows).  Nothing but ranks and degrees is carried: no points,
// no sections, no moduli.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "higgsnef/rational.hpp"

namespace higgsnef {

struct CurveSpec {
  long genus = 0;

  /// Degree of the canonical bundle, 2g - 2.
  long canonical_degree() const { return 2 * genus - 2; }

  bool operator==(const CurveSpec&) const = default;
};

struct Atom {
  std::string label;
  long rank = 1;
  long degree = 0;
  bool assumed_stable = true;

  Rational slope() const { return ratio(degree, rank); }
  bool is_line() const { return rank == 1; }

  bool operator==(const Atom&) const = default;
};

/// phi maps atom `from` into atom `to` tensored with the canonical bundle.
struct Arrow {
  std::size_t from = 0;
  std::size_t to = 0;

  auto operator<=>(const Arrow&) const = default;
};

/// Sorted, duplicate-free list of atom indices.
using AtomSet = std::vector<std::size_t>;

class SplitHiggsBundle {
 public:
  SplitHiggsBundle() = default;

  /// Arrows are sorted and deduplicated; rank-1 atoms are flagged stable.
  /// No validation happens here, see validate().
  SplitHiggsBundle(CurveSpec curve, std::vector<Atom> atoms,
                   std::vector<Arrow> arrows);

  const CurveSpec& curve() const { return curve_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Atom& atom(std::size_t i) const { return atoms_.at(i); }
  std::size_t size() const { return atoms_.size(); }

  long rank() const;
  long degree() const;
  long rank_of(std::span<const std::size_t> subset) const;
  long degree_of(std::span<const std::size_t> subset) const;

  bool all_line_atoms() const;
  bool has_higgs_field() const { return !arrows_.empty(); }

  std::optional<std::size_t> find_label(const std::string& label) const;

  /// Labels of a subset joined by '+', e.g. "L2+L3".
  std::string describe(std::span<const std::size_t> subset) const;

  bool operator==(const SplitHiggsBundle&) const = default;

 private:
  CurveSpec curve_;
  std::vector<Atom> atoms_;
  std::vector<Arrow> arrows_;
};

struct Violation {
  enum class Kind {
    no_atoms,
    negative_genus,
    nonpositive_rank,
    bad_arrow_index,
    self_loop,
    cycle,
    infeasible_arrow,
  };
  Kind kind;
  std::string message;

  bool operator==(const Violation&) const = default;
};

std::string to_string(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const SplitHiggsBundle& spec);

/// Throws Error listing every violation when the spec is not valid.
void require_valid(const SplitHiggsBundle& spec);

/// Slope of the sub-sum over `subset`, or of the whole bundle.
Rational slope(const SplitHiggsBundle& spec,
               std::optional<std::span<const std::size_t>> subset = std::nullopt);

/// Lambda^s of a bundle of line atoms: one atom per s-subset, arrows dropped.
/// Atoms are listed in lexicographic order of the subsets.
SplitHiggsBundle exterior_power(const SplitHiggsBundle& spec, long s);

/// Pullback along an etale cover of degree n: degrees scale by n and the
/// genus becomes n(g-1)+1.  Genus 0 admits only n = 1.
SplitHiggsBundle pullback_etale(const SplitHiggsBundle& spec, long n);

/// The genus-2 rank-3 nilpotent chain L1 -> L2 -> L3 with degrees 3, 1, 3
/// (L1 = O(K+x), L2 = O(x), L3 = O(3x), K = x+y).
SplitHiggsBundle genus2_counterexample();

}  // namespace higgsnef
