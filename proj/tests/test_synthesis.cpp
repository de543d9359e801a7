#include <catch2/catch_amalgamated.hpp>

#include "rieszterm/certify.hpp"
#include "rieszterm/synthesis.hpp"

using namespace rieszterm;

namespace {

Point pt1(Rational x0) { return Point{{0, std::move(x0)}}; }
Point pt2(Rational x0, Rational x1) { return Point{{0, std::move(x0)}, {1, std::move(x1)}}; }

ThresholdSet gt(VarIndex v, Rational l) { return {v, ThresholdSet::Rel::Gt, std::move(l)}; }
ThresholdSet ge(VarIndex v, Rational l) { return {v, ThresholdSet::Rel::Ge, std::move(l)}; }

}  // namespace

TEST_CASE("strict threshold indicator is exactly 0/1", "[synthesis]") {
  Term ind = indicator_gt(0, Rational(1));
  CHECK(eval(ind, pt1(Rational(3))) == Rational(1));
  CHECK(eval(ind, pt1(Rational(1))) == Rational(0));
  CHECK(eval(ind, pt1(Rational(1, 2))) == Rational(0));
  CHECK(eval(ind, pt1(Rational(-2))) == Rational(0));
  CHECK(eval(ind, pt1(Rational(1000001, 1000000))) == Rational(1));

  Term ind32 = indicator_gt(0, Rational(3, 2));
  CHECK(eval(ind32, pt1(Rational(3, 2))) == Rational(0));
  CHECK(eval(ind32, pt1(Rational(2))) == Rational(1));
  CHECK(eval(ind32, pt1(Rational(1))) == Rational(0));

  CHECK_THROWS_AS(indicator_gt(0, Rational(0)), NonpositiveThreshold);
  CHECK_THROWS_AS(indicator_gt(0, Rational(-1)), NonpositiveThreshold);
}

TEST_CASE("inclusive threshold indicator is exactly 0/1", "[synthesis]") {
  Term ind = indicator_ge(0, Rational(2));

  // At or above the threshold every probe is below the limit: correct value,
  // exhausted window.
  EvalDiagnostics at;
  CHECK(eval(ind, pt1(Rational(2)), &at) == Rational(1));
  CHECK(at.stability_warning);
  EvalDiagnostics above;
  CHECK(eval(ind, pt1(Rational(5)), &above) == Rational(1));
  CHECK(above.stability_warning);

  // Below the threshold the meet stabilises; no warning.
  EvalDiagnostics below;
  CHECK(eval(ind, pt1(Rational(3, 2)), &below) == Rational(0));
  CHECK_FALSE(below.stability_warning);
  EvalDiagnostics neg;
  CHECK(eval(ind, pt1(Rational(-1)), &neg) == Rational(0));
  CHECK_FALSE(neg.stability_warning);

  // Stabilisation depth grows like log2(l/(l-x)): 2 - 2^-40 needs 41 probes,
  // still inside the default window.
  EvalDiagnostics close;
  CHECK(eval(ind, pt1(Rational(2) - pow2(-40)), &close) == Rational(0));
  CHECK_FALSE(close.stability_warning);

  CHECK_THROWS_AS(indicator_ge(0, Rational(0)), NonpositiveThreshold);
}

TEST_CASE("indicators certify with k = 0", "[synthesis]") {
  BoundCertificate gtc = infer_bound(indicator_gt(0, Rational(3, 2)));
  CHECK(gtc.k == Rational(0));
  REQUIRE(gtc.lambda.count(0) == 1);
  CHECK(gtc.lambda.at(0) == Rational(2, 3));

  BoundCertificate gec = infer_bound(indicator_ge(0, Rational(2)));
  CHECK(gec.k == Rational(0));
  REQUIRE(gec.lambda.count(0) == 1);
  CHECK(gec.lambda.at(0) == Rational(1));  // first probe threshold is l/2
}

TEST_CASE("regions combine by meet and join", "[synthesis]") {
  Region both = Region::all_of({gt(0, Rational(1)), ge(1, Rational(2))});
  Region either = Region::any_of({gt(0, Rational(1)), ge(1, Rational(2))});

  CHECK(region_contains(both, pt2(Rational(2), Rational(3))));
  CHECK_FALSE(region_contains(both, pt2(Rational(1, 2), Rational(3))));
  CHECK(region_contains(either, pt2(Rational(1, 2), Rational(3))));
  CHECK_FALSE(region_contains(either, pt2(Rational(1, 2), Rational(1))));
  CHECK(region_contains(both, pt2(Rational(2), Rational(2))));  // inclusive edge
  CHECK(region_on_boundary(both, pt2(Rational(2), Rational(2))));
  CHECK(region_on_boundary(both, pt2(Rational(1), Rational(5))));
  CHECK_FALSE(region_on_boundary(both, pt2(Rational(3, 2), Rational(3))));

  CHECK_THROWS_AS(Region::all({}), EmptyRegion);
  CHECK_THROWS_AS(Region::any_of({}), EmptyRegion);

  Term dom = t_add(t_proj(0), t_proj(1));
  Term ind_both = region_indicator(both, dom);
  CHECK(eval(ind_both, pt2(Rational(2), Rational(3))) == Rational(1));
  CHECK(eval(ind_both, pt2(Rational(1, 2), Rational(3))) == Rational(0));
  Term ind_either = region_indicator(either, dom);
  CHECK(eval(ind_either, pt2(Rational(1, 2), Rational(3))) == Rational(1));
  CHECK(eval(ind_either, pt2(Rational(1, 2), Rational(1))) == Rational(0));
}

TEST_CASE("verification grid covers thresholds and dominator axes", "[synthesis]") {
  Region r = Region::of(gt(0, Rational(1)));
  auto grid = verification_grid(r, t_proj(1));
  CHECK(grid.size() == 15);  // {0, 1/2, 1, 3/2, 2} x {-1, 0, 1}
  for (const Point& p : grid) {
    CHECK(p.count(0) == 1);
    CHECK(p.count(1) == 1);
  }
}

TEST_CASE("dominators below 1 inside the region are rejected", "[synthesis]") {
  Region r = Region::of(gt(0, Rational(1)));
  CHECK_THROWS_AS(region_indicator(r, t_scale(Rational(1, 4), t_proj(0))),
                  DominatorTooSmall);
  CHECK_NOTHROW(region_indicator(r, t_proj(0)));
}

TEST_CASE("simple functions sum scaled region indicators", "[synthesis]") {
  SimpleFunctionSpec spec;
  spec.dominator = t_scale(Rational(2), t_proj(0));
  spec.entries.push_back({Rational(3, 2), Region::of(gt(0, Rational(1)))});
  Term s = simple_term(spec);
  CHECK(eval(s, pt1(Rational(2))) == Rational(3, 2));
  CHECK(eval(s, pt1(Rational(1, 2))) == Rational(0));

  SimpleFunctionSpec big = spec;
  big.entries[0].first = Rational(10);  // exceeds 2*x0 at the grid point 3/2
  CHECK_THROWS_AS(simple_term(big), DominatorTooSmall);

  SimpleFunctionSpec empty;
  empty.dominator = t_zero();
  CHECK(term_equal(simple_term(empty), t_zero()));

  SimpleFunctionSpec overlap;
  overlap.dominator = t_scale(Rational(4), t_proj(0));
  overlap.entries.push_back({Rational(1), Region::of(gt(0, Rational(1)))});
  overlap.entries.push_back({Rational(1), Region::of(gt(0, Rational(2)))});
  Term o = simple_term(overlap);
  CHECK(eval(o, pt1(Rational(3))) == Rational(2));
  CHECK(eval(o, pt1(Rational(3, 2))) == Rational(1));
  CHECK(eval(o, pt1(Rational(1, 2))) == Rational(0));
}

TEST_CASE("ladders wrap increasing simple functions", "[synthesis]") {
  SimpleFunctionSpec low;
  low.dominator = t_scale(Rational(2), t_proj(0));
  low.entries.push_back({Rational(1), Region::of(gt(0, Rational(1)))});
  SimpleFunctionSpec high = low;
  high.entries[0].first = Rational(2);

  Term cap = t_scale(Rational(2), t_proj(0));
  Term lad = ladder_term({low, high}, cap);
  CHECK(eval(lad, pt1(Rational(2))) == Rational(2));
  CHECK(eval(lad, pt1(Rational(1, 2))) == Rational(0));

  CHECK_THROWS_AS(ladder_term({high, low}, cap), LadderNotIncreasing);
  CHECK_THROWS_AS(ladder_term({}, cap), SynthesisError);
}
