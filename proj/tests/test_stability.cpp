#include <algorithm>

#include "doctest.h"
#include "higgsnef/stability.hpp"
#include "support/generators.hpp"

using namespace higgsnef;
using namespace higgsnef::testing;

namespace {

SplitHiggsBundle chain123(std::vector<long> d) {
  return lines(std::move(d), 2, {{0, 1}, {1, 2}});
}

}  // namespace

TEST_CASE("closed subsets examples") {
  CHECK(closed_subsets(chain123({3, 1, 3})) == std::vector<AtomSet>{{2}, {1, 2}});
  CHECK(closed_subsets(lines({1, 1})) == std::vector<AtomSet>{{0}, {1}});
  CHECK(closed_subsets(lines({0, 0, 0}, 2, {{0, 2}, {1, 2}})) ==
        std::vector<AtomSet>{{2}, {0, 2}, {1, 2}});
  CHECK(closed_subsets(lines({4})).empty());
}

TEST_CASE("property: closed subsets agree with brute force") {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto spec = random_higgs_bundle(rng, 7, -20, 20);
    const auto found = closed_subsets(spec);
    CHECK(found == brute_closed_subsets(spec));
    for (const auto& s : found) CHECK(is_closed(spec, s));
  }
}

TEST_CASE("higgs semistability examples") {
  auto v = higgs_semistability(chain123({3, 1, 3}));
  CHECK_FALSE(v.semistable);
  REQUIRE(v.destabilizer);
  CHECK(*v.destabilizer == AtomSet{2});
  CHECK(v.destabilizer_check()->margin == ratio(2, 3));
  CHECK(v.qualifiers.size() == 1);

  CHECK(higgs_semistability(lines({2, 2, 2}, 1, {{0, 1}, {0, 2}})).semistable);
  CHECK(higgs_semistability(chain123({5, 3, 1})).semistable);
}

TEST_CASE("ordinary semistability examples") {
  auto v = ordinary_semistability(lines({3, 1, 3}));
  CHECK_FALSE(v.semistable);
  CHECK(*v.destabilizer == AtomSet{0});
  CHECK(v.destabilizer_check()->margin == ratio(2, 3));
  CHECK(v.certificate.size() == 6);
  CHECK(ordinary_semistability(lines({4, 4})).semistable);

  const auto e = lines({2, 1}, 2, {{0, 1}});
  CHECK(higgs_semistability(e).semistable);
  CHECK_FALSE(ordinary_semistability(e).semistable);
}

TEST_CASE("rank>1 atoms are flagged as conditional") {
  SplitHiggsBundle e(CurveSpec{2}, {{"V", 2, 2, true}, {"L", 1, 1, true}}, {});
  const auto v = ordinary_semistability(e);
  CHECK(v.semistable);
  CHECK(std::find(v.qualifiers.begin(), v.qualifiers.end(),
                  "conditional on atom stability") != v.qualifiers.end());
}

TEST_CASE("mu extremes examples") {
  auto x = mu_extremes(lines({3, 1, 3}));
  CHECK(x.mu_max == 3);
  CHECK(x.mu_min == 1);
  CHECK(x.min_atom == 1);
  x = mu_extremes(lines({-2, -2}));
  CHECK(x.mu_max == -2);
  CHECK(x.mu_min == -2);
}

TEST_CASE("nef check examples") {
  const auto e = lines({3, 1, 3});
  auto v = nef_check(lambda_divisor(ambient_of(e)), e);
  CHECK_FALSE(v.nef);
  REQUIRE(v.witness);
  CHECK(v.witness->quotient_atom == 1u);
  CHECK(v.witness->pairing == ratio(-4, 3));

  const auto flat = lines({2, 2, 2});
  CHECK(nef_check(lambda_divisor(ambient_of(flat)), flat).nef);
  CHECK(nef_check(DivisorClass{ambient_of(e), 0, 1}, e).nef);
  CHECK_FALSE(nef_check(DivisorClass{ambient_of(e), -1, 9}, e).nef);
  CHECK_THROWS_AS(nef_check(DivisorClass{{2, 4}, 1, 0}, e), Error);
}

TEST_CASE("nef check on a curve") {
  const auto c = lines({5});
  CHECK(nef_check(DivisorClass{ambient_of(c), 1, -5}, c).nef);
  CHECK_FALSE(nef_check(DivisorClass{ambient_of(c), 1, -6}, c).nef);
}

TEST_CASE("lambda quotient pairing examples") {
  CHECK(lambda_quotient_pairing(chain123({3, 1, 3}), {2}) == ratio(-2, 3));
  CHECK(lambda_quotient_pairing(chain123({5, 3, 1}), {1, 2}) == 2);
  const auto flat = chain123({4, 2, 0});
  CHECK(lambda_quotient_pairing(lines({2, 2, 2}), {0, 2}) == 0);
  CHECK_THROWS_WITH_AS(lambda_quotient_pairing(flat, {0}), "kernel not phi-invariant",
                       Error);
  CHECK_THROWS_AS(lambda_quotient_pairing(flat, {}), Error);
}

TEST_CASE("effective witness examples") {
  auto w = effective_non_nef_witness(lines({3, 1, 3}));
  REQUIRE(w);
  CHECK(w->alpha == ratio(8, 3));
  CHECK(w->multiple == 3);
  CHECK(w->lambda_coeff == 3);
  CHECK(w->fibre_coeff == -1);
  CHECK(w->divisor == DivisorClass{{3, 7}, 3, -8});
  CHECK(w->pairing == -5);

  CHECK_FALSE(effective_non_nef_witness(lines({1, 1})));

  w = effective_non_nef_witness(lines({2, 0}));
  REQUIRE(w);
  CHECK(w->alpha == ratio(3, 2));
  CHECK(w->lambda_coeff == 2);
  CHECK(w->fibre_coeff == -1);
}

TEST_CASE("miyaoka report examples") {
  auto rep = miyaoka_report(lines({4, 4, 4}));
  CHECK(rep.semistable);
  REQUIRE(rep.ne_generators);
  for (const auto& p : rep.pairings) {
    if (p.name == "lambda^(r-1).lambda") CHECK(p.value == 0);
    if (p.name == "lambda^(r-2)F.lambda") CHECK(p.value == 1);
    if (p.name == "lambda^(r-1).F") CHECK(p.value == 1);
    if (p.name == "lambda^(r-2)F.F") CHECK(p.value == 0);
  }

  rep = miyaoka_report(lines({3, 1, 3}));
  CHECK_FALSE(rep.semistable);
  CHECK(rep.nef_witness);
  CHECK(rep.effective_witness);
  CHECK_FALSE(rep.na_generators);

  rep = miyaoka_report(lines({7}));
  CHECK(rep.degenerate);
  REQUIRE(rep.pairings.size() == 1);
  CHECK(rep.pairings[0].value == 0);
}

TEST_CASE("property: semistable iff lambda nef") {
  Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    const auto e = random_line_bundle(rng, 6, -20, 20);
    const bool nef = nef_check(lambda_divisor(ambient_of(e)), e).nef;
    CHECK(ordinary_semistability(e).semistable == nef);
  }
}

TEST_CASE("property: Higgs verdict matches the sign of quotient pairings") {
  Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    const auto e = random_higgs_bundle(rng, 6, -20, 20);
    bool negative = false;
    for (const auto& s : closed_subsets(e)) {
      if (lambda_quotient_pairing(e, s) < 0) negative = true;
    }
    CHECK(higgs_semistability(e).semistable == !negative);
  }
}

TEST_CASE("property: effective witness is negative on its test curve") {
  Rng rng(34);
  for (int i = 0; i < 300; ++i) {
    const auto e = random_line_bundle(rng, 6, -20, 20);
    const auto w = effective_non_nef_witness(e);
    if (!w) continue;
    CHECK(w->pairing < 0);
    CHECK(is_integer(w->fibre_coeff));
    CHECK(w->alpha < mu_extremes(e).mu_max);
    CHECK(w->alpha > slope(e));
  }
}
