#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rieszterm/eval.hpp"
#include "rieszterm/parse.hpp"
#include "rieszterm/random.hpp"

using namespace rieszterm;

namespace {
Rational ev(const char* src, const Point& x, Signature sig = Signature::Base,
            EvalDiagnostics* diag = nullptr) {
  return eval(parse(src, sig), x, diag);
}
}  // namespace

TEST_CASE("primitive evaluation", "[eval]") {
  CHECK(ev("trunc(x0)", {{0, Rational(2)}}) == Rational(1));
  CHECK(ev("trunc(x0)", {{0, Rational(1, 2)}}) == Rational(1, 2));
  CHECK(ev("trunc(x0)", {{0, Rational(-5)}}) == Rational(-5));
  CHECK(ev("zero", {}) == Rational(0));
  CHECK(ev("one", {}, Signature::Unital) == Rational(1));
  CHECK(ev("2*x0 + x1", {{0, Rational(3)}, {1, Rational(1, 2)}}) == Rational(13, 2));
  CHECK(ev("x0 v x1", {{0, Rational(-1)}, {1, Rational(4)}}) == Rational(4));
  CHECK(ev("meet(x0, x1)", {{0, Rational(-1)}, {1, Rational(4)}}) == Rational(-1));
  CHECK(ev("abs(x0)", {{0, Rational(-5)}}) == Rational(5));
  CHECK(ev("pos(x0)", {{0, Rational(-3)}}) == Rational(0));
  CHECK(ev("negpart(x0)", {{0, Rational(-3)}}) == Rational(3));
  CHECK(ev("sq(x0)", {{0, Rational(-3)}}, Signature::Extended) == Rational(9));
  CHECK(ev("abspow[3](x0)", {{0, Rational(-2)}}, Signature::Extended) == Rational(8));
  CHECK_THROWS_AS(ev("abspow[3/2](x0)", {{0, Rational(2)}}, Signature::Extended), EvalError);
}

TEST_CASE("missing variables are reported", "[eval]") {
  CHECK_THROWS_AS(ev("x0 + x1", {{0, Rational(1)}}), MissingVariable);
  Term loose = t_scale(Coeff::index(), t_proj(0));
  CHECK_THROWS_AS(eval(loose, {{0, Rational(1)}}), EvalError);
}

TEST_CASE("affine capped sups evaluate in closed form", "[eval]") {
  const char* src = "tsup[n] cap=x1 : n*(x0)";
  CHECK(ev(src, {{0, Rational(1)}, {1, Rational(5)}}) == Rational(5));
  CHECK(ev(src, {{0, Rational(0)}, {1, Rational(5)}}) == Rational(0));
  CHECK(ev(src, {{0, Rational(-1)}, {1, Rational(5)}}) == Rational(0));
  CHECK(ev(src, {{0, Rational(1)}, {1, Rational(-2)}}) == Rational(-2));

  // Threshold indicator at 1: exactly 0/1 on either side.
  const char* ind = "tsup[n] cap=trunc(x0) : n*(x0 - trunc(x0))";
  CHECK(ev(ind, {{0, Rational(3)}}) == Rational(1));
  CHECK(ev(ind, {{0, Rational(1)}}) == Rational(0));
  CHECK(ev(ind, {{0, Rational(1, 2)}}) == Rational(0));
}

TEST_CASE("finite-list monotone schemas are exact", "[eval]") {
  // Decreasing capped meet: inf_n { f_n v cap } over the constant-extended list.
  const char* src = "tsup[n] cap=zero : mono(dec, 8, [x0; meet(x0, x1)])";
  CHECK(ev(src, {{0, Rational(5)}, {1, Rational(2)}}) == Rational(2));
  CHECK(ev(src, {{0, Rational(5)}, {1, Rational(-1)}}) == Rational(0));
  CHECK(ev(src, {{0, Rational(-1)}, {1, Rational(7)}}) == Rational(0));

  // Increasing capped join with early exit on cap attainment.
  const char* inc = "tsup[n] cap=trunc(x0) : mono(inc, 8, [x0; x0 + x1])";
  CHECK(ev(inc, {{0, Rational(1)}, {1, Rational(5)}}) == Rational(1));
  // The cap itself is the ceiling: min(x0 + x1, trunc(x0)) = 1/4 here.
  CHECK(ev(inc, {{0, Rational(1, 4)}, {1, Rational(1, 4)}}) == Rational(1, 4));
}

TEST_CASE("declared monotonicity is checked", "[eval]") {
  const char* src = "tsup[n] cap=100*x2 : mono(inc, 8, [x0; meet(x0, x1)])";
  Point x{{0, Rational(5)}, {1, Rational(2)}, {2, Rational(1)}};
  CHECK_THROWS_AS(ev(src, x), SchemaNotMonotone);
}

TEST_CASE("parametric schemas stabilize or warn", "[eval]") {
  EvalDiagnostics diag;
  // q_k = 1 - 2^-(k+1) climbs toward the cap 1 but never reaches it.
  Rational v = ev("tsup[n] cap=one : mono(inc, 4, {1 - 2^(-(k+1))}*one)", {},
                  Signature::Unital, &diag);
  CHECK(v == Rational(31, 32));  // last probe value, j = 4
  CHECK(diag.stability_warning);
  REQUIRE_FALSE(diag.notes.empty());

  // Exact early exit: the body reaches the cap within the window.
  EvalDiagnostics diag2;
  Rational w = ev("tsup[n] cap=one : mono(inc, 4, {k}*one)", {}, Signature::Unital, &diag2);
  CHECK(w == Rational(1));
  CHECK_FALSE(diag2.stability_warning);

  // A parametric coefficient dividing by zero at some index is an eval error.
  CHECK_THROWS_AS(ev("tsup[n] cap=zero : mono(inc, 4, {1/k}*x0)", {{0, Rational(1)}}),
                  EvalError);
}

TEST_CASE("grid evaluation", "[eval]") {
  auto grid = eval_on_grid(parse("x0", Signature::Base), {{0, Interval(Rational(0), Rational(1))}}, 3);
  REQUIRE(grid.size() == 3);
  CHECK(grid[0].second == Rational(0));
  CHECK(grid[1].second == Rational(1, 2));
  CHECK(grid[2].second == Rational(1));

  auto ind = eval_on_grid(parse("tsup[n] cap=trunc(x0) : n*(x0 - trunc(x0))", Signature::Base),
                          {{0, Interval(Rational(0), Rational(2))}}, 5);
  REQUIRE(ind.size() == 5);
  CHECK(ind[0].second == Rational(0));
  CHECK(ind[1].second == Rational(0));
  CHECK(ind[2].second == Rational(0));  // boundary x = 1 stays 0 for the strict set
  CHECK(ind[3].second == Rational(1));
  CHECK(ind[4].second == Rational(1));

  // Row-major order with the highest index varying fastest.
  auto two = eval_on_grid(parse("x0 + x1", Signature::Base),
                          {{0, Interval(Rational(0), Rational(1))},
                           {1, Interval(Rational(0), Rational(10))}},
                          2);
  REQUIRE(two.size() == 4);
  CHECK(two[0].second == Rational(0));
  CHECK(two[1].second == Rational(10));
  CHECK(two[2].second == Rational(1));
  CHECK(two[3].second == Rational(11));

  auto closed = eval_on_grid(parse("zero", Signature::Base), {}, 4);
  REQUIRE(closed.size() == 1);
  CHECK(closed[0].second == Rational(0));
  CHECK(closed[0].first.empty());

  CHECK_THROWS_AS(eval_on_grid(parse("x0 + x1", Signature::Base),
                               {{0, Interval(Rational(0), Rational(1))}}, 2),
                  MissingVariable);
  CHECK_THROWS_AS(eval_on_grid(parse("x0", Signature::Base),
                               {{0, Interval(Rational(0), Rational(1))}}, 0),
                  Error);
}

TEST_CASE("vector-lattice laws hold pointwise on random terms", "[eval]") {
  std::mt19937_64 rng(90210);
  for (int pair = 0; pair < 2000; ++pair) {
    Signature sig = pair % 2 == 0 ? Signature::Base : Signature::Unital;
    Term f = random_term(rng, sig, 4, 3);
    Term g = random_term(rng, sig, 4, 3);
    Term sum_of_lattice = t_add(t_join(f, g), t_meet(f, g));
    Term plain_sum = t_add(f, g);
    Term absf = t_abs(f);
    Term decomp = t_sub(t_pos(f), t_negpart(f));
    for (int s = 0; s < 5; ++s) {
      Point x = random_point(rng, 3);
      CHECK(eval(sum_of_lattice, x) == eval(plain_sum, x));
      CHECK(eval(absf, x) >= Rational(0));
      CHECK(eval(decomp, x) == eval(f, x));
    }
  }
}
