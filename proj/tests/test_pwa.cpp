#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "rieszterm/piecewise_affine.hpp"
#include "rieszterm/random.hpp"

using namespace rieszterm;

namespace {

// Independent oracle: literally scan min(f(n), cap) for n = 0..limit.
Rational brute_sup(const PiecewiseAffine& f, const Rational& cap, long limit) {
  Rational best = rat_min(f.value(Rational(0)), cap);
  for (long n = 1; n <= limit; ++n) {
    Rational v = rat_min(f.value(Rational(n)), cap);
    if (v > best) best = v;
    if (v == cap) break;  // capped values cannot exceed the cap
  }
  return best;
}

}  // namespace

TEST_CASE("capped affine suprema in closed form", "[pwa]") {
  // Positive slope: the cap is attained in the limit.
  CHECK(sup_affine_capped(Rational(1), Rational(0), Rational(5)) == Rational(5));
  CHECK(sup_affine_capped(Rational(1, 1000), Rational(-7), Rational(2)) == Rational(2));
  // Zero or negative slope: the maximum sits at n = 0.
  CHECK(sup_affine_capped(Rational(0), Rational(2), Rational(5)) == Rational(2));
  CHECK(sup_affine_capped(Rational(0), Rational(7), Rational(5)) == Rational(5));
  CHECK(sup_affine_capped(Rational(-1), Rational(3), Rational(10)) == Rational(3));
  CHECK(sup_affine_capped(Rational(2), Rational(-100), Rational(0)) == Rational(0));
}

TEST_CASE("capped affine suprema agree with brute force", "[pwa]") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    Rational a = random_rational(rng, 20, 10);
    Rational b = random_rational(rng, 50, 10);
    Rational c = random_rational(rng, 50, 10);
    Rational closed = sup_affine_capped(a, b, c);
    PiecewiseAffine f({{Rational(0), a, b}});
    // With |a| >= 1/10 and |c - b| <= 100, attainment happens within 2000 steps.
    CHECK(closed == brute_sup(f, c, 2000));
  }
}

TEST_CASE("piecewise-affine validation", "[pwa]") {
  CHECK_THROWS_AS(PiecewiseAffine({}), Error);
  CHECK_THROWS_AS(PiecewiseAffine({{Rational(1), Rational(0), Rational(0)}}), Error);
  CHECK_THROWS_AS(PiecewiseAffine({{Rational(0), Rational(1), Rational(0)},
                                   {Rational(0), Rational(1), Rational(0)}}),
                  Error);
  PiecewiseAffine ok({{Rational(0), Rational(0), Rational(0)},
                      {Rational(3, 2), Rational(2), Rational(-3)}});
  CHECK(ok.segments().size() == 2);
  CHECK(ok.value(Rational(1)) == Rational(0));
  CHECK(ok.value(Rational(2)) == Rational(1));
  CHECK(ok.value(Rational(3, 2)) == Rational(0));
  CHECK(ok.continuous());
  CHECK_THROWS_AS(ok.value(Rational(-1)), Error);

  PiecewiseAffine jump({{Rational(0), Rational(0), Rational(0)},
                        {Rational(1), Rational(0), Rational(5)}});
  CHECK_FALSE(jump.continuous());
  CHECK(jump.value(Rational(1)) == Rational(5));
}

TEST_CASE("capped piecewise-affine suprema", "[pwa]") {
  // Ramp (2n - 3)^+ capped at 7: final slope positive, cap attained.
  PiecewiseAffine ramp({{Rational(0), Rational(0), Rational(0)},
                        {Rational(3, 2), Rational(2), Rational(-3)}});
  CHECK(pwa_sup_capped(ramp, Rational(7)) == Rational(7));

  // Decreasing: maximum at n = 0.
  PiecewiseAffine dec({{Rational(0), Rational(-1), Rational(10)}});
  CHECK(pwa_sup_capped(dec, Rational(100)) == Rational(10));
  CHECK(pwa_sup_capped(dec, Rational(4)) == Rational(4));

  // Tent: rises to the breakpoint then falls; the breakpoint is fractional so
  // the integer maximum sits beside it.
  PiecewiseAffine tent({{Rational(0), Rational(2), Rational(0)},
                        {Rational(7, 2), Rational(-1), Rational(21, 2)}});
  // f(3) = 6, f(4) = 13/2: integer max is 13/2.
  CHECK(pwa_sup_capped(tent, Rational(100)) == Rational(13, 2));
  CHECK(pwa_sup_capped(tent, Rational(6)) == Rational(6));
}

TEST_CASE("capped piecewise-affine suprema agree with brute force", "[pwa]") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 500; ++i) {
    // Three segments with breakpoints in (0, 40]; the last slope is <= 0 so the
    // sup is attained among small integers and brute force terminates.
    Rational b1 = rat_abs(random_rational(rng, 20, 3)) + Rational(1, 7);
    Rational b2 = b1 + rat_abs(random_rational(rng, 20, 3)) + Rational(1, 5);
    std::vector<PwaSegment> segs{
        {Rational(0), random_rational(rng, 5, 3), random_rational(rng, 30, 5)},
        {b1, random_rational(rng, 5, 3), random_rational(rng, 30, 5)},
        {b2, -rat_abs(random_rational(rng, 5, 3)), random_rational(rng, 30, 5)}};
    PiecewiseAffine f(segs);
    Rational cap = random_rational(rng, 60, 5);
    CHECK(pwa_sup_capped(f, cap) == brute_sup(f, cap, 200));
  }
}
