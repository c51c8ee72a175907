#include "higgsnef/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace higgsnef {

SplitHiggsBundle::SplitHiggsBundle(CurveSpec curve, std::vector<Atom> atoms,
                                   std::vector<Arrow> arrows)
    : curve_(curve), atoms_(std::move(atoms)), arrows_(std::move(arrows)) {
  for (auto& a : atoms_) {
    if (a.rank == 1) a.assumed_stable = true;
  }
  std::sort(arrows_.begin(), arrows_.end());
  arrows_.erase(std::unique(arrows_.begin(), arrows_.end()), arrows_.end());
}

long SplitHiggsBundle::rank() const {
  return std::accumulate(atoms_.begin(), atoms_.end(), 0L,
                         [](long acc, const Atom& a) { return acc + a.rank; });
}

long SplitHiggsBundle::degree() const {
  return std::accumulate(atoms_.begin(), atoms_.end(), 0L,
                         [](long acc, const Atom& a) { return acc + a.degree; });
}

long SplitHiggsBundle::rank_of(std::span<const std::size_t> subset) const {
  long r = 0;
  for (auto i : subset) r += atoms_.at(i).rank;
  return r;
}

long SplitHiggsBundle::degree_of(std::span<const std::size_t> subset) const {
  long d = 0;
  for (auto i : subset) d += atoms_.at(i).degree;
  return d;
}

bool SplitHiggsBundle::all_line_atoms() const {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return a.is_line(); });
}

std::optional<std::size_t> SplitHiggsBundle::find_label(
    const std::string& label) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].label == label) return i;
  }
  return std::nullopt;
}

std::string SplitHiggsBundle::describe(
    std::span<const std::size_t> subset) const {
  std::string out;
  for (auto i : subset) {
    if (!out.empty()) out += '+';
    out += atoms_.at(i).label;
  }
  return out;
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::no_atoms: return "no_atoms";
    case Violation::Kind::negative_genus: return "negative_genus";
    case Violation::Kind::nonpositive_rank: return "nonpositive_rank";
    case Violation::Kind::bad_arrow_index: return "bad_arrow_index";
    case Violation::Kind::self_loop: return "self_loop";
    case Violation::Kind::cycle: return "cycle";
    case Violation::Kind::infeasible_arrow: return "infeasible_arrow";
  }
  return "unknown";
}

namespace {

// Kahn's algorithm; returns true when the arrow graph has a directed cycle.
bool has_cycle(std::size_t n, const std::vector<Arrow>& arrows) {
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& a : arrows) {
    if (a.from == a.to) continue;
    succ[a.from].push_back(a.to);
    ++indeg[a.to];
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    ++seen;
    for (auto w : succ[v]) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  return seen != n;
}

}  // namespace

ValidationReport validate(const SplitHiggsBundle& spec) {
  ValidationReport report;
  auto add = [&](Violation::Kind kind, std::string msg) {
    report.violations.push_back({kind, std::move(msg)});
  };
  const auto n = spec.size();
  if (n == 0) add(Violation::Kind::no_atoms, "at least one atom is required");
  if (spec.curve().genus < 0) {
    add(Violation::Kind::negative_genus,
        "genus " + std::to_string(spec.curve().genus) + " is negative");
  }
  bool ranks_ok = true;
  for (const auto& a : spec.atoms()) {
    if (a.rank < 1) {
      ranks_ok = false;
      add(Violation::Kind::nonpositive_rank,
          "atom " + a.label + " has rank " + std::to_string(a.rank));
    }
  }
  std::vector<Arrow> in_range;
  for (const auto& a : spec.arrows()) {
    if (a.from >= n || a.to >= n) {
      add(Violation::Kind::bad_arrow_index,
          "arrow " + std::to_string(a.from) + "->" + std::to_string(a.to) +
              " refers to a missing atom");
      continue;
    }
    if (a.from == a.to) {
      add(Violation::Kind::self_loop,
          "arrow " + spec.atom(a.from).label + "->" + spec.atom(a.to).label +
              " is a self-loop");
      continue;
    }
    in_range.push_back(a);
  }
  if (has_cycle(n, in_range)) {
    add(Violation::Kind::cycle, "cycle in arrows: Higgs field is not nilpotent");
  }
  if (ranks_ok) {
    const long k = spec.curve().canonical_degree();
    for (const auto& a : in_range) {
      const auto& src = spec.atom(a.from);
      const auto& dst = spec.atom(a.to);
      if (dst.slope() + k < src.slope()) {
        add(Violation::Kind::infeasible_arrow,
            "arrow " + src.label + "->" + dst.label + " infeasible: mu(" +
                dst.label + ") + 2g-2 = " + to_string(dst.slope() + k) +
                " < mu(" + src.label + ") = " + to_string(src.slope()));
      }
    }
  }
  return report;
}

void require_valid(const SplitHiggsBundle& spec) {
  auto report = validate(spec);
  if (report.ok()) return;
  std::string msg = "invalid bundle:";
  for (const auto& v : report.violations) msg += " " + v.message + ";";
  msg.pop_back();
  throw Error(msg);
}

Rational slope(const SplitHiggsBundle& spec,
               std::optional<std::span<const std::size_t>> subset) {
  if (subset) {
    if (subset->empty()) throw Error("empty subobject");
    for (auto i : *subset) {
      if (i >= spec.size()) throw Error("atom index out of range");
    }
    const long r = spec.rank_of(*subset);
    if (r <= 0) throw Error("subobject has nonpositive rank");
    return ratio(spec.degree_of(*subset), r);
  }
  if (spec.size() == 0) throw Error("empty subobject");
  if (spec.rank() <= 0) throw Error("bundle has nonpositive rank");
  return ratio(spec.degree(), spec.rank());
}

SplitHiggsBundle exterior_power(const SplitHiggsBundle& spec, long s) {
  if (!spec.all_line_atoms()) {
    throw Error("exterior power requires line atoms");
  }
  const long r = spec.rank();
  if (s <= 0 || s >= r) {
    throw Error("exterior power degree s=" + std::to_string(s) +
                " outside 0 < s < " + std::to_string(r));
  }
  std::vector<Atom> atoms;
  // Enumerate s-subsets in lexicographic order via a selection mask.
  std::vector<bool> pick(static_cast<std::size_t>(r), false);
  std::fill(pick.begin(), pick.begin() + s, true);
  do {
    Atom a;
    for (std::size_t i = 0; i < pick.size(); ++i) {
      if (!pick[i]) continue;
      if (!a.label.empty()) a.label += '^';
      a.label += spec.atom(i).label;
      a.degree += spec.atom(i).degree;
    }
    atoms.push_back(std::move(a));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return SplitHiggsBundle(spec.curve(), std::move(atoms), {});
}

SplitHiggsBundle pullback_etale(const SplitHiggsBundle& spec, long n) {
  if (n < 1) {
    throw Error("pullback degree must be >= 1, got " + std::to_string(n));
  }
  if (spec.curve().genus == 0 && n > 1) {
    // P^1 is simply connected.
    throw Error("a genus-0 curve has no connected etale cover of degree " +
                std::to_string(n));
  }
  CurveSpec curve{n * (spec.curve().genus - 1) + 1};
  std::vector<Atom> atoms = spec.atoms();
  for (auto& a : atoms) a.degree *= n;
  return SplitHiggsBundle(curve, std::move(atoms), spec.arrows());
}

SplitHiggsBundle genus2_counterexample() {
  return SplitHiggsBundle(CurveSpec{2},
                          {{"L1", 1, 3, true}, {"L2", 1, 1, true},
                           {"L3", 1, 3, true}},
                          {{0, 1}, {1, 2}});
}

}  // namespace higgsnef
