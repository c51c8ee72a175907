#include "higgsnef/stability.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace higgsnef {

namespace {

constexpr std::size_t kMaxAtoms = 24;

void check_enumerable(const SplitHiggsBundle& spec) {
  if (spec.size() > kMaxAtoms) {
    throw Error("subset enumeration supports at most " +
                std::to_string(kMaxAtoms) + " atoms");
  }
}

bool size_then_lex(const AtomSet& a, const AtomSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

AtomSet from_mask(std::uint32_t mask, std::size_t n) {
  AtomSet out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (1u << i)) out.push_back(i);
  }
  return out;
}

std::vector<std::string> qualifiers_for(const SplitHiggsBundle& spec,
                                        bool higgs) {
  std::vector<std::string> q;
  if (higgs) {
    q.emplace_back("coordinate-level: only phi-invariant sums of atoms are checked");
  } else {
    q.emplace_back("coordinate-level: sums of atoms are checked");
  }
  if (!spec.all_line_atoms()) {
    q.emplace_back("conditional on atom stability");
  }
  return q;
}

Verdict judge(const SplitHiggsBundle& spec, std::vector<AtomSet> subsets,
              bool higgs) {
  Verdict v;
  v.qualifiers = qualifiers_for(spec, higgs);
  const Rational mu = slope(spec);
  std::sort(subsets.begin(), subsets.end(), size_then_lex);
  std::optional<std::size_t> best;
  for (auto& s : subsets) {
    SubsetCheck check;
    check.slope = slope(spec, std::span<const std::size_t>(s));
    check.bundle_slope = mu;
    check.margin = check.slope - mu;
    check.subset = std::move(s);
    if (check.margin > 0) {
      v.semistable = false;
      if (!best || check.margin > v.certificate[*best].margin) {
        best = v.certificate.size();
      }
    }
    v.certificate.push_back(std::move(check));
  }
  if (best) v.destabilizer = v.certificate[*best].subset;
  return v;
}

std::vector<std::vector<std::size_t>> successors(const SplitHiggsBundle& spec) {
  std::vector<std::vector<std::size_t>> succ(spec.size());
  for (const auto& a : spec.arrows()) succ[a.from].push_back(a.to);
  return succ;
}

}  // namespace

const SubsetCheck* Verdict::destabilizer_check() const {
  if (!destabilizer) return nullptr;
  for (const auto& c : certificate) {
    if (c.subset == *destabilizer) return &c;
  }
  return nullptr;
}

bool is_closed(const SplitHiggsBundle& spec, const AtomSet& subset) {
  for (const auto& a : spec.arrows()) {
    const bool from_in = std::binary_search(subset.begin(), subset.end(), a.from);
    const bool to_in = std::binary_search(subset.begin(), subset.end(), a.to);
    if (from_in && !to_in) return false;
  }
  return true;
}

std::vector<AtomSet> closed_subsets(const SplitHiggsBundle& spec) {
  require_valid(spec);
  check_enumerable(spec);
  const auto n = spec.size();
  const auto succ = successors(spec);

  // Closed sets are exactly the unions of single-atom closures.
  std::vector<std::uint32_t> closure(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      if (closure[i] & (1u << v)) continue;
      closure[i] |= 1u << v;
      for (auto w : succ[v]) stack.push_back(w);
    }
  }
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::set<std::uint32_t> found;
  std::vector<std::uint32_t> frontier{0};
  while (!frontier.empty()) {
    auto cur = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      if (cur & (1u << i)) continue;
      auto next = cur | closure[i];
      if (found.insert(next).second) frontier.push_back(next);
    }
  }
  std::vector<AtomSet> out;
  for (auto mask : found) {
    if (mask != full) out.push_back(from_mask(mask, n));
  }
  std::sort(out.begin(), out.end(), size_then_lex);
  return out;
}

Verdict higgs_semistability(const SplitHiggsBundle& spec) {
  return judge(spec, closed_subsets(spec), true);
}

Verdict ordinary_semistability(const SplitHiggsBundle& spec) {
  require_valid(spec);
  check_enumerable(spec);
  const auto n = spec.size();
  std::vector<AtomSet> subsets;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    subsets.push_back(from_mask(mask, n));
  }
  return judge(spec, std::move(subsets), false);
}

SlopeExtremes mu_extremes(const SplitHiggsBundle& spec) {
  require_valid(spec);
  SlopeExtremes out;
  out.mu_max = out.mu_min = spec.atom(0).slope();
  for (std::size_t i = 1; i < spec.size(); ++i) {
    const auto mu = spec.atom(i).slope();
    if (mu > out.mu_max) {
      out.mu_max = mu;
      out.max_atom = i;
    }
    if (mu < out.mu_min) {
      out.mu_min = mu;
      out.min_atom = i;
    }
  }
  return out;
}

NefVerdict nef_check(const DivisorClass& d, const SplitHiggsBundle& spec) {
  require_valid(spec);
  if (!(d.ambient == ambient_of(spec))) {
    throw Error("divisor does not live on P(E) of this bundle");
  }
  NefVerdict out{true, d, std::nullopt};
  const auto ext = mu_extremes(spec);
  const auto& a = d.xi_coeff;
  const auto& b = d.fibre_coeff;

  if (spec.rank() == 1) {
    // P(E) is the curve; xi = deg(E) F there.
    const Rational pairing = a * spec.degree() + b;
    if (pairing < 0) {
      out.nef = false;
      out.witness = NefWitness{NefWitness::Kind::section, 0, pairing,
                               "P(E) itself, a copy of the curve"};
    }
    return out;
  }
  if (a < 0) {
    out.nef = false;
    out.witness = NefWitness{NefWitness::Kind::fibre_line, std::nullopt, a,
                             "a line in a fibre"};
    return out;
  }
  const Rational pairing = a * ext.mu_min + b;
  if (pairing < 0) {
    out.nef = false;
    const auto& q = spec.atom(ext.min_atom);
    std::string what = q.is_line()
                           ? "section of the quotient E -> " + q.label
                           : "extremal curve of P(" + q.label + ")";
    out.witness =
        NefWitness{NefWitness::Kind::section, ext.min_atom, pairing, what};
  }
  return out;
}

Rational lambda_quotient_pairing(const SplitHiggsBundle& spec,
                                 const AtomSet& kernel) {
  require_valid(spec);
  if (kernel.empty() || kernel.size() >= spec.size() ||
      !std::is_sorted(kernel.begin(), kernel.end()) ||
      kernel.back() >= spec.size()) {
    throw Error("kernel must be a nonempty proper sorted atom subset");
  }
  if (!is_closed(spec, kernel)) throw Error("kernel not phi-invariant");
  const long s = spec.rank() - spec.rank_of(kernel);
  const ChowAmbient quotient{s, spec.degree() - spec.degree_of(kernel)};
  // lambda restricts to xi' - mu(E) F' on P(E/E_S).
  const DivisorClass restricted{quotient, 1, -slope(spec)};
  const auto d = restricted.to_class();
  auto power = ChowClass::one(quotient);
  for (long i = 0; i < s; ++i) power = chow_mul(power, d);
  return chow_degree(power);
}

std::optional<EffectiveWitness> effective_non_nef_witness(
    const SplitHiggsBundle& spec) {
  if (ordinary_semistability(spec).semistable) return std::nullopt;
  const auto ext = mu_extremes(spec);
  const Rational mu = slope(spec);
  EffectiveWitness w;
  w.alpha = (ext.mu_max + mu) / 2;
  const Rational fibre = mu - w.alpha;
  w.multiple = fibre.get_den().get_si();
  w.lambda_coeff = w.multiple;
  w.fibre_coeff = w.multiple * fibre;
  const auto lambda = lambda_divisor(ambient_of(spec));
  w.divisor = DivisorClass{lambda.ambient, w.lambda_coeff * lambda.xi_coeff,
                           w.lambda_coeff * lambda.fibre_coeff + w.fibre_coeff};
  w.destabilizing_atom = ext.max_atom;
  w.test_curve_atom = ext.min_atom;
  w.pairing = w.divisor.xi_coeff * ext.mu_min + w.divisor.fibre_coeff;
  w.effectivity =
      "effective after scaling by N large (Sym^N of the destabilizing atom "
      "twisted by -N alpha has sections); not computed";
  return w;
}

ConeReport miyaoka_report(const SplitHiggsBundle& spec) {
  const auto verdict = ordinary_semistability(spec);
  const auto amb = ambient_of(spec);
  const auto lambda = lambda_divisor(amb);
  const auto l = lambda.to_class();
  const auto f = ChowClass::fibre(amb);
  ConeReport out;
  out.semistable = verdict.semistable;
  if (amb.rank == 1) {
    out.degenerate = true;
    out.pairings.push_back({"lambda^1", chow_degree(l)});
    if (out.semistable) {
      out.na_generators = std::pair{lambda, DivisorClass{amb, 0, 1}};
    }
    return out;
  }
  if (!out.semistable) {
    out.nef_witness = nef_check(lambda, spec);
    out.effective_witness = effective_non_nef_witness(spec);
    return out;
  }
  out.na_generators = std::pair{lambda, DivisorClass{amb, 0, 1}};
  auto top = ChowClass::one(amb);
  for (long i = 0; i < amb.rank - 2; ++i) top = chow_mul(top, l);
  const auto lambda_r2_f = chow_mul(top, f);
  const auto lambda_r1 = chow_mul(top, l);
  out.ne_generators = std::pair{lambda_r1, lambda_r2_f};
  out.pairings = {
      {"lambda^(r-1).lambda", chow_degree(chow_mul(lambda_r1, l))},
      {"lambda^(r-1).F", chow_degree(chow_mul(lambda_r1, f))},
      {"lambda^(r-2)F.lambda", chow_degree(chow_mul(lambda_r2_f, l))},
      {"lambda^(r-2)F.F", chow_degree(chow_mul(lambda_r2_f, f))},
  };
  return out;
}

}  // namespace higgsnef
