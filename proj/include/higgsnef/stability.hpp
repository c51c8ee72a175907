#pragma once

// Slope semistability of split (Higgs) bundles, nefness of divisor classes on
// P(E), and the explicit witnesses that go with an unstable bundle.
//
// Only coordinate subobjects (sums of atoms) are examined.  For ordinary
// split bundles of stable atoms this is exact; for Higgs bundles it checks
// the phi-invariant coordinate subsheaves, which is what every verdict says
// in its qualifiers.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "higgsnef/chow.hpp"
#include "higgsnef/model.hpp"

namespace higgsnef {

struct SubsetCheck {
  AtomSet subset;
  Rational slope;
  Rational bundle_slope;
  /// slope - bundle_slope; positive means destabilizing.
  Rational margin;
};

struct Verdict {
  bool semistable = true;
  std::vector<SubsetCheck> certificate;
  /// Maximal margin; ties go to the smaller subset, then lexicographic.
  std::optional<AtomSet> destabilizer;
  std::vector<std::string> qualifiers;

  const SubsetCheck* destabilizer_check() const;
};

/// Nonempty proper subsets closed under arrows (every arrow leaving the set
/// lands in it), ordered by size then lexicographically.
std::vector<AtomSet> closed_subsets(const SplitHiggsBundle& spec);

/// True when every arrow out of `subset` lands back in it.
bool is_closed(const SplitHiggsBundle& spec, const AtomSet& subset);

Verdict higgs_semistability(const SplitHiggsBundle& spec);

/// Ignores the Higgs field and checks every nonempty proper subset.
Verdict ordinary_semistability(const SplitHiggsBundle& spec);

struct SlopeExtremes {
  Rational mu_max;
  Rational mu_min;
  std::size_t max_atom = 0;
  std::size_t min_atom = 0;
};

/// Extremal atom slopes; the first atom attaining each is recorded.
SlopeExtremes mu_extremes(const SplitHiggsBundle& spec);

struct NefWitness {
  enum class Kind { fibre_line, section };
  Kind kind = Kind::section;
  /// Quotient atom whose section (or extremal curve, for rank > 1) is used.
  std::optional<std::size_t> quotient_atom;
  Rational pairing;
  std::string description;
};

struct NefVerdict {
  bool nef = true;
  DivisorClass divisor;
  std::optional<NefWitness> witness;
};

/// a xi + b F is nef on P(E) iff a >= 0 and a mu_min + b >= 0.
NefVerdict nef_check(const DivisorClass& d, const SplitHiggsBundle& spec);

/// (lambda restricted to P(E/E_S))^s = s (mu(E/E_S) - mu(E)), evaluated in the
/// Chow ring of P(E/E_S).  Throws Error if S is not arrow-closed.
Rational lambda_quotient_pairing(const SplitHiggsBundle& spec,
                                 const AtomSet& kernel);

struct EffectiveWitness {
  Rational alpha;
  long multiple = 1;
  /// multiple * (lambda + (mu(E) - alpha) F), in lambda/F coordinates...
  Rational lambda_coeff;
  Rational fibre_coeff;
  /// ...and in xi/F coordinates.
  DivisorClass divisor;
  std::size_t destabilizing_atom = 0;
  std::size_t test_curve_atom = 0;
  /// Pairing with the section of the minimal quotient; always negative.
  Rational pairing;
  std::string effectivity;
};

/// An effective but non-nef divisor class for an unstable bundle, or nothing
/// when the bundle is semistable.
std::optional<EffectiveWitness> effective_non_nef_witness(
    const SplitHiggsBundle& spec);

struct PairingRecord {
  std::string name;
  Rational value;
};

struct ConeReport {
  bool semistable = true;
  bool degenerate = false;  // rank one: P(E) is the curve itself
  std::optional<std::pair<DivisorClass, DivisorClass>> na_generators;
  /// lambda^(r-1) and lambda^(r-2) F as Chow classes.
  std::optional<std::pair<ChowClass, ChowClass>> ne_generators;
  std::vector<PairingRecord> pairings;
  std::optional<NefVerdict> nef_witness;
  std::optional<EffectiveWitness> effective_witness;
};

ConeReport miyaoka_report(const SplitHiggsBundle& spec);

}  // namespace higgsnef
