#include <algorithm>

#include "doctest.h"
#include "higgsnef/model.hpp"
#include "support/generators.hpp"

using namespace higgsnef;
using namespace higgsnef::testing;

namespace {

bool has_kind(const ValidationReport& r, Violation::Kind k) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-7")) == "-7");
  CHECK(to_string(parse_rational("+2/1")) == "2");
  CHECK(to_string(ratio(4, -6)) == "-2/3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("validate: the genus-2 chain is valid") {
  CHECK(validate(genus2_counterexample()).ok());
  CHECK(validate(lines({3, 1, 3}, 2, {{0, 1}, {1, 2}})).ok());
}

TEST_CASE("validate: single atom without arrows is valid") {
  CHECK(validate(lines({5})).ok());
}

TEST_CASE("validate: two-cycle is rejected") {
  const auto r = validate(lines({1, 1}, 2, {{0, 1}, {1, 0}}));
  CHECK(has_kind(r, Violation::Kind::cycle));
}

TEST_CASE("validate: structural violations") {
  CHECK(has_kind(validate(SplitHiggsBundle(CurveSpec{1}, {}, {})),
                 Violation::Kind::no_atoms));
  CHECK(has_kind(validate(lines({1}, -1)), Violation::Kind::negative_genus));
  CHECK(has_kind(validate(lines({1, 1}, 2, {{0, 5}})),
                 Violation::Kind::bad_arrow_index));
  CHECK(has_kind(validate(lines({1, 1}, 2, {{1, 1}})), Violation::Kind::self_loop));
  // deg(L2 (x) K) = 0 + 2 < 5: no nonzero map L1 -> L2 (x) K.
  CHECK(has_kind(validate(lines({5, 0}, 2, {{0, 1}})),
                 Violation::Kind::infeasible_arrow));
  SplitHiggsBundle zero_rank(CurveSpec{1}, {{"A", 0, 1, true}}, {});
  CHECK(has_kind(validate(zero_rank), Violation::Kind::nonpositive_rank));
  CHECK_THROWS_AS(require_valid(zero_rank), Error);
}

TEST_CASE("validate is idempotent and ignores arrow order") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto spec = random_higgs_bundle(rng, 6, -20, 20);
    auto arrows = spec.arrows();
    std::shuffle(arrows.begin(), arrows.end(), rng);
    const SplitHiggsBundle shuffled(spec.curve(), spec.atoms(), arrows);
    CHECK(shuffled == spec);
    CHECK(validate(spec).violations == validate(shuffled).violations);
    CHECK(validate(spec).violations == validate(spec).violations);
  }
}

TEST_CASE("slope examples") {
  const auto e = lines({3, 1, 3});
  CHECK(slope(e) == ratio(7, 3));
  CHECK(slope(lines({-4})) == -4);
  const AtomSet s{1, 2};
  CHECK(slope(e, std::span<const std::size_t>(s)) == 2);
  const AtomSet empty;
  CHECK_THROWS_WITH_AS(slope(e, std::span<const std::size_t>(empty)),
                       "empty subobject", Error);
}

TEST_CASE("slope counts ranks of higher-rank atoms") {
  SplitHiggsBundle e(CurveSpec{3}, {{"V", 2, 3, false}, {"L", 1, 0, true}}, {});
  CHECK(slope(e) == 1);
  CHECK(e.atom(0).slope() == ratio(3, 2));
  CHECK_FALSE(e.all_line_atoms());
}

TEST_CASE("exterior power examples") {
  const auto w = exterior_power(lines({3, 1, 3}), 2);
  std::vector<long> d;
  for (const auto& a : w.atoms()) d.push_back(a.degree);
  CHECK(d == std::vector<long>{4, 6, 4});
  CHECK(w.atom(0).label == "L1^L2");
  CHECK(w.arrows().empty());

  const auto eq = exterior_power(lines({2, 2, 2, 2}), 3);
  for (const auto& a : eq.atoms()) CHECK(a.degree == 6);
  CHECK(eq.size() == 4);

  const auto e = lines({3, 1, 3});
  CHECK(exterior_power(e, 1).atoms() == e.atoms());

  SplitHiggsBundle v(CurveSpec{1}, {{"V", 2, 1, true}}, {});
  CHECK_THROWS_WITH_AS(exterior_power(v, 1),
                       "exterior power requires line atoms", Error);
  CHECK_THROWS_AS(exterior_power(e, 0), Error);
  CHECK_THROWS_AS(exterior_power(e, 4), Error);
}

TEST_CASE("property: slope of the s-th exterior power is s times the slope") {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto e = random_line_bundle(rng, 6, -20, 20);
    for (long s = 1; s < e.rank(); ++s) {
      CHECK(slope(exterior_power(e, s)) == s * slope(e));
    }
  }
}

TEST_CASE("pullback examples") {
  const auto p = pullback_etale(genus2_counterexample(), 2);
  CHECK(p.curve().genus == 3);
  CHECK(p.atom(0).degree == 6);
  CHECK(p.atom(1).degree == 2);
  CHECK(p.atom(2).degree == 6);
  CHECK(p.arrows() == genus2_counterexample().arrows());
  CHECK(pullback_etale(genus2_counterexample(), 1) == genus2_counterexample());
  CHECK_THROWS_AS(pullback_etale(genus2_counterexample(), 0), Error);
  CHECK(pullback_etale(lines({1, 2}, 0), 1) == lines({1, 2}, 0));
  CHECK_THROWS_AS(pullback_etale(lines({1, 2}, 0), 2), Error);
  CHECK(pullback_etale(lines({1, 2}, 1), 3).curve().genus == 1);
}

TEST_CASE("property: pullback keeps feasibility") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto e = random_higgs_bundle(rng, 6, -20, 20, 1);
    for (long n = 1; n <= 4; ++n) CHECK(validate(pullback_etale(e, n)).ok());
  }
}

TEST_CASE("describe and label lookup") {
  const auto e = genus2_counterexample();
  const AtomSet s{1, 2};
  CHECK(e.describe(std::span<const std::size_t>(s)) == "L2+L3");
  CHECK(e.find_label("L3") == 2u);
  CHECK_FALSE(e.find_label("M").has_value());
}
