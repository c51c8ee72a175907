#include "higgsnef/higgs_grass.hpp"

#include <algorithm>
#include <map>

namespace higgsnef {

namespace {

std::string phi_name(std::size_t row, std::size_t col) {
  return "phi_{" + std::to_string(row) + "}{" + std::to_string(col) + "}";
}

bool support_is_nilpotent(std::size_t r, const std::vector<HiggsEntry>& support) {
  std::vector<Arrow> arrows;
  for (const auto& e : support) {
    if (e.row == e.col) return false;
    arrows.push_back({e.col - 1, e.row - 1});
  }
  std::vector<Atom> atoms(r);
  for (std::size_t i = 0; i < r; ++i) atoms[i].label = "e" + std::to_string(i + 1);
  // Genus large enough that no arrow is infeasible; only acyclicity matters.
  const SplitHiggsBundle probe(CurveSpec{1}, std::move(atoms), std::move(arrows));
  for (const auto& v : validate(probe).violations) {
    if (v.kind == Violation::Kind::cycle) return false;
  }
  return true;
}

void require_chain_lines(const SplitHiggsBundle& spec) {
  if (!spec.all_line_atoms()) {
    throw Error("class formulas require chain shape (line atoms only)");
  }
  std::vector<int> in(spec.size(), 0), out(spec.size(), 0);
  for (const auto& a : spec.arrows()) {
    if (++out[a.from] > 1 || ++in[a.to] > 1) {
      throw Error("class formulas require chain shape");
    }
  }
}

Component push_component(const Component& c, const ChowClass& sub_class,
                         const DivisorClass& lambda) {
  Component out;
  out.kind = c.kind;
  out.depth = c.depth;
  out.isomorphic_to_base = c.isomorphic_to_base;
  out.cycle_class = pushforward_sub(c.cycle_class, sub_class);
  if (c.isomorphic_to_base) {
    out.restricted_lambda = divisor_pairing(out.cycle_class, lambda);
  }
  for (const auto& p : c.parts) {
    out.parts.push_back(push_component(p, sub_class, lambda));
  }
  return out;
}

std::vector<Component> components_at(const SplitHiggsBundle& spec, long depth) {
  const auto profile = cokernel_profile(spec);
  const auto amb = ambient_of(spec);
  const auto lambda = lambda_divisor(amb);

  if (!spec.has_higgs_field()) {
    Component whole;
    whole.depth = depth;
    whole.cycle_class = ChowClass::one(amb);
    whole.isomorphic_to_base = amb.rank == 1;
    if (whole.isomorphic_to_base) {
      whole.restricted_lambda = divisor_pairing(whole.cycle_class, lambda);
    }
    return {whole};
  }

  const auto q = static_cast<long>(profile.source_atoms.size());
  Component pq;
  pq.depth = depth;
  pq.cycle_class = projectivized_quotient_class(amb, q, profile.deg_phi,
                                                profile.torsion_degree);
  pq.isomorphic_to_base = q == 1;
  if (pq.isomorphic_to_base) {
    pq.restricted_lambda = divisor_pairing(pq.cycle_class, lambda);
  }

  const auto last = last_graded_piece(spec);
  const auto bar = quotient_by_last_piece(spec);
  const auto sub_class =
      projectivized_quotient_class(amb, bar.rank(), spec.degree_of(last), 0);
  Component bar_e;
  bar_e.kind = Component::Kind::barE_pushforward;
  bar_e.depth = depth + 1;
  bar_e.cycle_class = ChowClass(amb);
  for (const auto& c : components_at(bar, depth + 1)) {
    bar_e.parts.push_back(push_component(c, sub_class, lambda));
    bar_e.cycle_class += bar_e.parts.back().cycle_class;
  }
  bar_e.isomorphic_to_base = q == 1;
  if (bar_e.isomorphic_to_base) {
    bar_e.restricted_lambda = divisor_pairing(bar_e.cycle_class, lambda);
  }
  return {pq, bar_e};
}

}  // namespace

std::string LocalEquation::str() const {
  std::string out =
      "eq(" + std::to_string(alpha) + "," + std::to_string(beta) + "):";
  if (terms.empty()) return out + " 0 = 0";
  bool first = true;
  for (const auto& t : terms) {
    if (first) {
      out += t.sign < 0 ? " -" : " ";
    } else {
      out += t.sign < 0 ? " - " : " + ";
    }
    first = false;
    out += phi_name(t.phi_row, t.phi_col) + "*e_" + std::to_string(t.e_gamma) +
           "*e_" + std::to_string(t.e_other);
  }
  return out + " = 0";
}

std::vector<LocalEquation> local_equations(
    std::size_t r, const std::vector<HiggsEntry>& support) {
  if (r < 2) throw Error("local equations need r >= 2");
  for (const auto& e : support) {
    if (e.row < 1 || e.row > r || e.col < 1 || e.col > r) {
      throw Error("Higgs entry " + phi_name(e.row, e.col) + " out of range");
    }
  }
  if (!support_is_nilpotent(r, support)) {
    throw Error("Higgs support is not nilpotent");
  }
  auto nonzero = [&](std::size_t row, std::size_t col) {
    return std::find(support.begin(), support.end(), HiggsEntry{row, col}) !=
           support.end();
  };
  std::vector<LocalEquation> out;
  for (std::size_t alpha = 1; alpha <= r; ++alpha) {
    for (std::size_t beta = alpha + 1; beta <= r; ++beta) {
      LocalEquation eq{alpha, beta, {}};
      for (std::size_t gamma = 1; gamma <= r; ++gamma) {
        if (nonzero(gamma, beta)) eq.terms.push_back({+1, gamma, beta, gamma, alpha});
        if (nonzero(gamma, alpha)) eq.terms.push_back({-1, gamma, alpha, gamma, beta});
      }
      out.push_back(std::move(eq));
    }
  }
  return out;
}

std::vector<HiggsEntry> higgs_support(const SplitHiggsBundle& spec) {
  if (!spec.all_line_atoms()) {
    throw Error("local equations require line atoms");
  }
  std::vector<HiggsEntry> out;
  for (const auto& a : spec.arrows()) out.push_back({a.to + 1, a.from + 1});
  std::sort(out.begin(), out.end());
  return out;
}

QProfile cokernel_profile(const SplitHiggsBundle& spec) {
  require_valid(spec);
  require_chain_lines(spec);
  const long k = spec.curve().canonical_degree();
  QProfile p;
  std::vector<bool> has_in(spec.size(), false);
  for (const auto& a : spec.arrows()) {
    has_in[a.to] = true;
    const long di = spec.atom(a.from).degree;
    const long dj = spec.atom(a.to).degree;
    const long torsion = dj - di + k;
    if (torsion < 0) {
      throw Error("arrow " + spec.atom(a.from).label + "->" +
                  spec.atom(a.to).label + " has negative torsion degree");
    }
    p.torsion_degree += torsion;
    p.deg_phi += di - k;
    ++p.r_phi;
  }
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (!has_in[i]) p.source_atoms.push_back(i);
  }
  return p;
}

std::string Component::kind_name() const {
  return kind == Kind::quotient_PQ ? "quotient_PQ" : "barE_pushforward";
}

AtomSet last_graded_piece(const SplitHiggsBundle& spec) {
  require_valid(spec);
  const auto n = spec.size();
  // Longest-path level from a source; arrows only increase the level.
  std::vector<long> level(n, 0);
  for (std::size_t pass = 0; pass < n; ++pass) {
    bool changed = false;
    for (const auto& a : spec.arrows()) {
      if (level[a.to] < level[a.from] + 1) {
        level[a.to] = level[a.from] + 1;
        changed = true;
      }
    }
    if (!changed) break;
  }
  const long top = *std::max_element(level.begin(), level.end());
  AtomSet out;
  for (std::size_t i = 0; i < n; ++i) {
    if (level[i] == top) out.push_back(i);
  }
  return out;
}

SplitHiggsBundle quotient_by_last_piece(const SplitHiggsBundle& spec) {
  const auto last = last_graded_piece(spec);
  std::map<std::size_t, std::size_t> remap;
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (std::binary_search(last.begin(), last.end(), i)) continue;
    remap[i] = atoms.size();
    atoms.push_back(spec.atom(i));
  }
  if (atoms.empty()) throw Error("quotient by the last graded piece is zero");
  std::vector<Arrow> arrows;
  for (const auto& a : spec.arrows()) {
    auto f = remap.find(a.from);
    auto t = remap.find(a.to);
    if (f != remap.end() && t != remap.end()) arrows.push_back({f->second, t->second});
  }
  return SplitHiggsBundle(spec.curve(), std::move(atoms), std::move(arrows));
}

std::vector<Component> hg1_components(const SplitHiggsBundle& spec) {
  return components_at(spec, 0);
}

ChowClass hg1_total_class_formula(const SplitHiggsBundle& spec) {
  const auto profile = cokernel_profile(spec);
  const auto amb = ambient_of(spec);
  if (!spec.has_higgs_field()) return ChowClass::one(amb);

  // phi maps each arrow source L_i isomorphically onto its image in L_j (x) K.
  long deg_image = 0;
  for (const auto& a : spec.arrows()) deg_image += spec.atom(a.from).degree;
  const long r_phi = static_cast<long>(spec.arrows().size());
  const long bracket = deg_image + r_phi * (2 - 2 * spec.curve().genus) +
                       profile.torsion_degree;
  auto total = ChowClass::xi_power(amb, r_phi) -
               Rational(bracket) * ChowClass::xi_power_fibre(amb, r_phi - 1);

  const auto last = last_graded_piece(spec);
  const auto bar = quotient_by_last_piece(spec);
  const auto sub_class =
      projectivized_quotient_class(amb, bar.rank(), spec.degree_of(last), 0);
  total += pushforward_sub(hg1_total_class_formula(bar), sub_class);
  return total;
}

ChowClass hg1_total_class(const SplitHiggsBundle& spec) {
  auto total = hg1_total_class_formula(spec);
  ChowClass sum(ambient_of(spec));
  for (const auto& c : hg1_components(spec)) sum += c.cycle_class;
  if (!(sum == total)) {
    throw InternalError("component sum " + sum.str() +
                        " differs from the total class " + total.str());
  }
  return total;
}

Rational theta_restriction(const SplitHiggsBundle& spec, const AtomSet& kernel) {
  require_valid(spec);
  if (kernel.empty() || kernel.size() >= spec.size() ||
      !std::is_sorted(kernel.begin(), kernel.end()) ||
      kernel.back() >= spec.size()) {
    throw Error("kernel must be a nonempty proper sorted atom subset");
  }
  if (!is_closed(spec, kernel)) throw Error("kernel not phi-invariant");
  const long s = spec.rank() - spec.rank_of(kernel);
  const long quotient_degree = spec.degree() - spec.degree_of(kernel);
  return Rational(quotient_degree) - ratio(s * spec.degree(), spec.rank());
}

ChainReport rank3_chain_report(const SplitHiggsBundle& spec) {
  require_valid(spec);
  if (spec.size() != 3 || !spec.all_line_atoms() ||
      spec.arrows() != std::vector<Arrow>{{0, 1}, {1, 2}}) {
    throw Error("expected a rank-3 chain L1 -> L2 -> L3 of line atoms");
  }
  const long a1 = spec.atom(0).degree;
  const long a2 = spec.atom(1).degree;
  const long a3 = spec.atom(2).degree;

  ChainReport rep;
  rep.bundle = spec;
  rep.higgs = higgs_semistability(spec);

  // Slope inequality for kernel S with denominators cleared:
  // rk(S) deg(E) - r deg(S) = -r rk(S) margin(S).
  auto cleared = [&](const AtomSet& s) -> long {
    for (const auto& c : rep.higgs.certificate) {
      if (c.subset != s) continue;
      Rational v = -c.margin * spec.rank() * spec.rank_of(s);
      if (!is_integer(v)) throw InternalError("non-integral cleared inequality");
      return v.get_num().get_si();
    }
    throw InternalError("kernel " + spec.describe(s) + " missing from certificate");
  };
  rep.ineq_kernel_l3 = cleared({2});
  rep.ineq_kernel_l23 = cleared({1, 2});
  if (rep.ineq_kernel_l3 != a1 + a2 - 2 * a3 ||
      rep.ineq_kernel_l23 != 2 * a1 - a2 - a3) {
    throw InternalError("cleared slope inequalities disagree with the degrees");
  }

  const auto comps = hg1_components(spec);
  if (comps.size() != 2 || !comps[0].restricted_lambda ||
      !comps[1].restricted_lambda) {
    throw InternalError("expected two curve components");
  }
  rep.lambda_q = *comps[0].restricted_lambda;
  rep.lambda_bar_e = *comps[1].restricted_lambda;
  rep.theta_2 = theta_restriction(spec, {2});

  const long e32 = 2 * a1 - a2 - a3;
  if (rep.lambda_bar_e != ratio(2 * e32, 3) || rep.lambda_q != ratio(e32, 3) ||
      rep.theta_2 != ratio(a1 + a2 - 2 * a3, 3)) {
    throw InternalError("restricted classes disagree with the closed forms");
  }
  return rep;
}

ChainReport counterexample_demo() {
  auto rep = rank3_chain_report(genus2_counterexample());
  const bool golden = rep.ineq_kernel_l23 == 2 && rep.ineq_kernel_l3 == -2 &&
                      rep.lambda_bar_e == ratio(4, 3) &&
                      rep.lambda_q == ratio(2, 3) &&
                      rep.theta_2 == ratio(-2, 3) && !rep.higgs.semistable &&
                      rep.higgs.destabilizer == AtomSet{2};
  if (!golden) {
    throw InternalError("genus-2 counterexample does not reproduce its values");
  }
  return rep;
}

}  // namespace higgsnef
