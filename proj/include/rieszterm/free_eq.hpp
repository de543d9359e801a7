// Randomized free-equality testing: two terms over the same variables are
// compared by exact evaluation on seeded pseudo-random points.  Agreement on
// every sample is reported as `agree`; otherwise the first differing point is
// returned as a concrete separating witness.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "rieszterm/eval.hpp"
#include "rieszterm/random.hpp"
#include "rieszterm/term.hpp"

namespace rieszterm {

struct FreeEqResult {
  bool agree = true;
  std::size_t samples_run = 0;
  Point witness;   // valid when !agree
  Rational lhs;    // value of the first term at `witness`
  Rational rhs;    // value of the second term at `witness`
};

inline FreeEqResult free_eq(const Term& a, const Term& b, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t arity = std::max(term_arity(a), term_arity(b));
  if (arity == 0) arity = 1;
  FreeEqResult r;
  for (std::size_t s = 0; s < samples; ++s) {
    Point x = random_point(rng, arity);
    Rational va = eval(a, x);
    Rational vb = eval(b, x);
    ++r.samples_run;
    if (va != vb) {
      r.agree = false;
      r.witness = std::move(x);
      r.lhs = std::move(va);
      r.rhs = std::move(vb);
      return r;
    }
  }
  return r;
}

}  // namespace rieszterm
