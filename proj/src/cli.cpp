#include "higgsnef/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "higgsnef/chern.hpp"
#include "higgsnef/chow.hpp"
#include "higgsnef/higgs_grass.hpp"
#include "higgsnef/stability.hpp"

namespace higgsnef {

namespace {

using Report = nlohmann::ordered_json;

std::string q(const Rational& x) { return to_string(x); }

AtomSet resolve_labels(const SplitHiggsBundle& spec, const std::string& csv) {
  AtomSet out;
  std::stringstream in(csv);
  std::string label;
  while (std::getline(in, label, ',')) {
    auto idx = spec.find_label(label);
    if (!idx) throw Error("unknown atom label '" + label + "'");
    out.push_back(*idx);
  }
  if (out.empty()) throw Error("empty subobject");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- rendering ---------------------------------------------------------

std::string inline_value(const Report& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object()) {
    std::string s;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!s.empty()) s += ", ";
      s += it.key() + "=" + inline_value(it.value());
    }
    return s;
  }
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += inline_value(v[i]);
    }
    return s + "]";
  }
  if (v.is_null()) return "-";
  return v.dump();
}

void render(const Report& obj, std::ostream& out, const std::string& indent) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object()) {
      out << indent << it.key() << ":\n";
      render(v, out, indent + "  ");
    } else if (v.is_array() && !v.empty() &&
               std::any_of(v.begin(), v.end(), [](const Report& item) {
                 return item.is_string() || item.is_object();
               })) {
      out << indent << it.key() << ":\n";
      for (const auto& item : v) {
        out << indent << "  " << (item.is_string() ? "" : "- ")
            << inline_value(item) << "\n";
      }
    } else {
      out << indent << it.key() << ": " << inline_value(v) << "\n";
    }
  }
}

void emit(const std::string& command, Report body, bool json, std::ostream& out) {
  if (json) {
    Report doc;
    doc["schema_version"] = kJsonSchemaVersion;
    doc["command"] = command;
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
    out << doc.dump(2) << "\n";
    return;
  }
  if (body.contains("result")) {
    out << body["result"].get<std::string>() << "\n";
    body.erase("result");
  }
  render(body, out, "");
}

// ---- report builders ---------------------------------------------------

Report bundle_summary(const SplitHiggsBundle& spec) {
  Report r;
  r["genus"] = spec.curve().genus;
  r["rank"] = spec.rank();
  r["degree"] = spec.degree();
  return r;
}

Report verdict_report(const SplitHiggsBundle& spec, const Verdict& v, bool higgs) {
  Report r;
  const std::string prefix = higgs ? "HIGGS-" : "";
  if (v.semistable) {
    r["result"] = prefix + "SEMISTABLE";
  } else {
    r["result"] = prefix + "UNSTABLE (destabilizer: " +
                  spec.describe(*v.destabilizer) + ")";
  }
  r["semistable"] = v.semistable;
  r["slope"] = q(slope(spec));
  if (const auto* d = v.destabilizer_check()) {
    r["destabilizer"] = spec.describe(d->subset);
    r["destabilizer_margin"] = q(d->margin);
  } else {
    r["destabilizer"] = nullptr;
    r["destabilizer_margin"] = nullptr;
  }
  Report checked = Report::array();
  for (const auto& c : v.certificate) {
    checked.push_back(Report{{"subset", spec.describe(c.subset)},
                             {"slope", q(c.slope)},
                             {"margin", q(c.margin)}});
  }
  r["checked"] = checked;
  r["qualifiers"] = v.qualifiers;
  return r;
}

Report nef_report(const SplitHiggsBundle& spec, const NefVerdict& v) {
  Report r;
  if (v.nef) {
    r["result"] = "NEF";
  } else {
    const auto& w = *v.witness;
    std::string where = w.kind == NefWitness::Kind::fibre_line
                            ? "fibre line"
                            : "quotient " + spec.atom(*w.quotient_atom).label;
    r["result"] = "NOT NEF, witness " + where + ", pairing " + q(w.pairing);
  }
  r["nef"] = v.nef;
  r["divisor"] = v.divisor.str();
  r["mu_min"] = q(mu_extremes(spec).mu_min);
  if (v.witness) {
    r["witness"] = Report{{"curve", v.witness->description},
                          {"pairing", q(v.witness->pairing)}};
  } else {
    r["witness"] = nullptr;
  }
  return r;
}

Report component_report(const Component& c) {
  Report r{{"kind", c.kind_name()},
           {"depth", c.depth},
           {"class", c.cycle_class.str()},
           {"curve", c.isomorphic_to_base}};
  r["restricted_lambda"] =
      c.restricted_lambda ? Report(q(*c.restricted_lambda)) : Report(nullptr);
  return r;
}

void flatten(const Component& c, Report& list) {
  list.push_back(component_report(c));
  for (const auto& p : c.parts) flatten(p, list);
}

// "3 lambda - F" style rendering of a lambda + b F.
std::string lambda_combination(const Rational& a, const Rational& b) {
  std::string out = (a == 1 ? "" : q(a) + " ") + "lambda";
  if (b == 0) return out;
  out += b < 0 ? " - " : " + ";
  return out + (abs(b) == 1 ? "" : q(abs(b)) + " ") + "F";
}

Report effective_report(const SplitHiggsBundle& spec, const EffectiveWitness& w) {
  return Report{
      {"class", lambda_combination(w.lambda_coeff, w.fibre_coeff)},
      {"divisor", w.divisor.str()},
      {"alpha", q(w.alpha)},
      {"destabilizing_atom", spec.atom(w.destabilizing_atom).label},
      {"test_curve", "section of the quotient E -> " + spec.atom(w.test_curve_atom).label},
      {"pairing", q(w.pairing)},
      {"effectivity", w.effectivity}};
}

std::vector<AtomSet> kernels_for(const SplitHiggsBundle& spec,
                                 const std::string& subset_csv) {
  if (subset_csv.empty()) return closed_subsets(spec);
  return {resolve_labels(spec, subset_csv)};
}

Report restricted_values(const SplitHiggsBundle& spec, const std::string& csv,
                         const std::function<Rational(const AtomSet&)>& f) {
  Report list = Report::array();
  for (const auto& k : kernels_for(spec, csv)) {
    list.push_back(Report{{"kernel", spec.describe(k)},
                          {"quotient_rank", spec.rank() - spec.rank_of(k)},
                          {"value", q(f(k))}});
  }
  Report r;
  r["values"] = list;
  return r;
}

Report cmd_validate(const SplitHiggsBundle& spec) {
  const auto report = validate(spec);
  Report r;
  r["result"] = report.ok() ? "VALID" : "INVALID";
  r["valid"] = report.ok();
  r.update(bundle_summary(spec));
  Report list = Report::array();
  for (const auto& v : report.violations) {
    list.push_back(Report{{"kind", to_string(v.kind)}, {"message", v.message}});
  }
  r["violations"] = list;
  return r;
}

Report cmd_classes(const SplitHiggsBundle& spec) {
  require_valid(spec);
  const auto amb = ambient_of(spec);
  Report r;
  r["lambda"] = lambda_divisor(amb).str();
  Report thetas = Report::array();
  if (spec.all_line_atoms()) {
    for (long s = 1; s < spec.rank(); ++s) {
      const auto theta = theta_via_plucker(spec, s);
      thetas.push_back(Report{{"s", s},
                              {"plucker_rank", theta.ambient.rank},
                              {"plucker_degree", theta.ambient.degree},
                              {"divisor", theta.str()}});
    }
  }
  r["theta_plucker"] = thetas;
  Report quotients = Report::array();
  for (const auto& k : closed_subsets(spec)) {
    const long qr = spec.rank() - spec.rank_of(k);
    quotients.push_back(Report{
        {"kernel", spec.describe(k)},
        {"quotient_rank", qr},
        {"class", projectivized_quotient_class(amb, qr, spec.degree_of(k), 0).str()}});
  }
  r["quotient_classes"] = quotients;
  return r;
}

Report cmd_grass1(const SplitHiggsBundle& spec) {
  const auto profile = cokernel_profile(spec);
  Report r;
  std::vector<std::string> sources;
  for (auto i : profile.source_atoms) sources.push_back(spec.atom(i).label);
  r["profile"] = Report{{"sources", sources},
                        {"torsion_degree", profile.torsion_degree},
                        {"r_phi", profile.r_phi},
                        {"deg_phi", profile.deg_phi}};
  Report comps = Report::array();
  ChowClass sum(ambient_of(spec));
  for (const auto& c : hg1_components(spec)) {
    flatten(c, comps);
    sum += c.cycle_class;
  }
  r["components"] = comps;
  r["component_sum"] = sum.str();
  r["total_class"] = hg1_total_class(spec).str();
  r["agreement"] = "VERIFIED";
  return r;
}

Report cmd_equations(const SplitHiggsBundle& spec) {
  const auto eqs = local_equations(static_cast<std::size_t>(spec.rank()),
                                   higgs_support(spec));
  std::vector<std::string> lines;
  for (const auto& e : eqs) lines.push_back(e.str());
  Report r;
  r["count"] = eqs.size();
  r["equations"] = lines;
  return r;
}

Report cmd_miyaoka(const SplitHiggsBundle& spec) {
  const auto rep = miyaoka_report(spec);
  Report r;
  r["result"] = rep.semistable ? "SEMISTABLE" : "UNSTABLE";
  r["semistable"] = rep.semistable;
  r["degenerate"] = rep.degenerate;
  if (rep.na_generators) {
    r["nef_cone"] = {rep.na_generators->first.str(), rep.na_generators->second.str()};
  } else {
    r["nef_cone"] = nullptr;
  }
  if (rep.ne_generators) {
    r["curve_cone"] = {rep.ne_generators->first.str(), rep.ne_generators->second.str()};
  } else {
    r["curve_cone"] = nullptr;
  }
  Report pairings = Report::array();
  for (const auto& p : rep.pairings) {
    pairings.push_back(Report{{"pairing", p.name}, {"value", q(p.value)}});
  }
  r["pairings"] = pairings;
  r["nef_witness"] = rep.nef_witness ? nef_report(spec, *rep.nef_witness)
                                     : Report(nullptr);
  r["effective_witness"] = rep.effective_witness
                               ? effective_report(spec, *rep.effective_witness)
                               : Report(nullptr);
  return r;
}

Report cmd_delta(long rank) {
  const auto delta = delta_class(rank);
  const auto tensor = c2_tensor_dual(rank);  // throws unless 2r Delta matches
  Report r;
  r["result"] = "Delta = " + delta.str() + " ; identity 2r·Delta = c2(E⊗E*) VERIFIED";
  r["rank"] = rank;
  r["delta"] = delta.str();
  r["c2_tensor_dual"] = tensor.str();
  r["c1_tensor_dual"] = q(c1_tensor_dual(rank));
  return r;
}

Report cmd_demo() {
  const auto rep = counterexample_demo();
  const auto& spec = rep.bundle;
  Report r;
  r["result"] = "HIGGS-UNSTABLE (destabilizer: " +
                spec.describe(*rep.higgs.destabilizer) + ")";
  r["genus"] = spec.curve().genus;
  r["degrees"] = {spec.atom(0).degree, spec.atom(1).degree, spec.atom(2).degree};
  r["2a1-a2-a3"] = rep.ineq_kernel_l23;
  r["a1+a2-2a3"] = rep.ineq_kernel_l3;
  r["lambda_barE_component"] = q(rep.lambda_bar_e);
  r["lambda_Q_component"] = q(rep.lambda_q);
  r["theta_2"] = q(rep.theta_2);
  r["higgs_semistable"] = rep.higgs.semistable;
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact semistability and nefness calculator for split Higgs bundles on curves",
               "higgsnef"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  std::string file, subset, a_text = "1", b_text;
  long rank = 0;
  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "bundle spec file")->required();
    return sub;
  };
  auto* validate_cmd = with_file(app.add_subcommand("validate", "check a bundle spec"));
  auto* slope_cmd = with_file(app.add_subcommand("slope", "slope of E or of a sub-sum"));
  slope_cmd->add_option("--subset", subset, "comma-separated atom labels");
  auto* stab_cmd = with_file(app.add_subcommand("stability", "ordinary semistability"));
  auto* hstab_cmd = with_file(app.add_subcommand("higgs-stability", "Higgs semistability"));
  auto* nef_cmd = with_file(app.add_subcommand("nef", "nefness of a xi + b F on P(E)"));
  nef_cmd->add_option("--a", a_text, "xi coefficient (default 1)");
  nef_cmd->add_option("--b", b_text, "F coefficient (default -mu(E), i.e. lambda)");
  auto* classes_cmd = with_file(app.add_subcommand("classes", "lambda, Pluecker theta and quotient classes"));
  auto* grass_cmd = with_file(app.add_subcommand("grass1", "components of the rank-1 Higgs quotient scheme"));
  auto* eq_cmd = with_file(app.add_subcommand("equations", "local quadric equations"));
  auto* theta_cmd = with_file(app.add_subcommand("theta", "theta_s on Higgs quotient sections"));
  theta_cmd->add_option("--subset", subset, "kernel as comma-separated labels");
  auto* pairing_cmd = with_file(app.add_subcommand("pairing", "(lambda restricted to P(E/E_S))^s"));
  pairing_cmd->add_option("--subset", subset, "kernel as comma-separated labels");
  auto* miyaoka_cmd = with_file(app.add_subcommand("miyaoka", "nef and curve cones of P(E)"));
  auto* delta_cmd = app.add_subcommand("delta", "discriminant identity");
  delta_cmd->add_option("--rank", rank, "rank r")->required();
  auto* demo_cmd = app.add_subcommand("demo-counterexample", "genus-2 rank-3 chain");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (sub == delta_cmd) {
      emit(name, cmd_delta(rank), json, out);
      return 0;
    }
    if (sub == demo_cmd) {
      emit(name, cmd_demo(), json, out);
      return 0;
    }
    const auto spec = load_bundle_spec(file);
    if (sub == validate_cmd) {
      auto r = cmd_validate(spec);
      const bool ok = r["valid"].get<bool>();
      emit(name, std::move(r), json, out);
      return ok ? 0 : 2;
    }
    require_valid(spec);
    Report r;
    if (sub == slope_cmd) {
      if (subset.empty()) {
        r["subset"] = "E";
        r["slope"] = q(slope(spec));
      } else {
        const auto s = resolve_labels(spec, subset);
        r["subset"] = spec.describe(s);
        r["slope"] = q(slope(spec, std::span<const std::size_t>(s)));
      }
    } else if (sub == stab_cmd) {
      r = verdict_report(spec, ordinary_semistability(spec), false);
    } else if (sub == hstab_cmd) {
      r = verdict_report(spec, higgs_semistability(spec), true);
    } else if (sub == nef_cmd) {
      const auto amb = ambient_of(spec);
      const Rational a = parse_rational(a_text);
      const Rational b = b_text.empty() ? Rational(-slope(spec) * a)
                                        : parse_rational(b_text);
      r = nef_report(spec, nef_check(DivisorClass{amb, a, b}, spec));
    } else if (sub == classes_cmd) {
      r = cmd_classes(spec);
    } else if (sub == grass_cmd) {
      r = cmd_grass1(spec);
    } else if (sub == eq_cmd) {
      r = cmd_equations(spec);
    } else if (sub == theta_cmd) {
      r = restricted_values(spec, subset, [&](const AtomSet& k) {
        return theta_restriction(spec, k);
      });
    } else if (sub == pairing_cmd) {
      r = restricted_values(spec, subset, [&](const AtomSet& k) {
        return lambda_quotient_pairing(spec, k);
      });
    } else if (sub == miyaoka_cmd) {
      r = cmd_miyaoka(spec);
    }
    emit(name, std::move(r), json, out);
    return 0;
  } catch (const InternalError& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace higgsnef
