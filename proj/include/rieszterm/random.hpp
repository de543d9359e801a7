// Seeded pseudo-random generators for rationals, evaluation points, and
// well-formed terms.  All randomness flows through std::mt19937_64 so every
// consumer is reproducible from a single u64 seed.
//
// Lattice identities fail at kinks, so the scalar sampler mixes the boundary
// values {0, 1, -1} in at a fixed 10% rate alongside uniform rationals with
// numerator and denominator bounded by 1000.
//
// The term generator only emits terms whose evaluation is total: scales carry
// constant coefficients, and monotone finite-list schemas are built as
// cumulative joins (increasing) or meets (decreasing), which are pointwise
// monotone by construction.
#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rieszterm/eval.hpp"
#include "rieszterm/rational.hpp"
#include "rieszterm/term.hpp"

namespace rieszterm {

inline long long random_int(std::mt19937_64& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

// Uniform rational with |numerator| <= num_bound, 1 <= denominator <= den_bound.
inline Rational random_rational(std::mt19937_64& rng, long long num_bound = 1000,
                                long long den_bound = 1000) {
  return Rational(Int(random_int(rng, -num_bound, num_bound)),
                  Int(random_int(rng, 1, den_bound)));
}

// As random_rational, but 10% of draws come from the boundary set {0, 1, -1}.
inline Rational random_rational_mixed(std::mt19937_64& rng, long long num_bound = 1000,
                                      long long den_bound = 1000) {
  if (random_int(rng, 0, 9) == 0) {
    switch (random_int(rng, 0, 2)) {
      case 0: return Rational(0);
      case 1: return Rational(1);
      default: return Rational(-1);
    }
  }
  return random_rational(rng, num_bound, den_bound);
}

// Point binding x0..x_{arity-1}.
inline Point random_point(std::mt19937_64& rng, std::size_t arity, long long num_bound = 1000,
                          long long den_bound = 1000) {
  Point p;
  for (std::size_t i = 0; i < arity; ++i)
    p[static_cast<VarIndex>(i)] = random_rational_mixed(rng, num_bound, den_bound);
  return p;
}

namespace detail {

inline Term random_leaf(std::mt19937_64& rng, Signature sig, unsigned nvars) {
  long long roll = random_int(rng, 0, 99);
  if (sig != Signature::Base && roll < 20) return t_one();
  if (roll < 45) return t_zero();
  return t_proj(static_cast<VarIndex>(random_int(rng, 0, nvars - 1)));
}

}  // namespace detail

// Random term over x0..x_{nvars-1} in the given signature, with node depth at
// most `depth`.  Small constant coefficients keep evaluation cheap.
inline Term random_term(std::mt19937_64& rng, Signature sig, unsigned depth, unsigned nvars) {
  if (nvars == 0) nvars = 1;
  if (depth == 0) return detail::random_leaf(rng, sig, nvars);
  long long roll = random_int(rng, 0, 99);
  if (roll < 20)
    return t_add(random_term(rng, sig, depth - 1, nvars), random_term(rng, sig, depth - 1, nvars));
  if (roll < 35) {
    Rational c(Int(random_int(rng, -20, 20)), Int(random_int(rng, 1, 10)));
    return t_scale(c, random_term(rng, sig, depth - 1, nvars));
  }
  if (roll < 55)
    return t_join(random_term(rng, sig, depth - 1, nvars), random_term(rng, sig, depth - 1, nvars));
  if (roll < 65 && sig == Signature::Base) return t_trunc(random_term(rng, sig, depth - 1, nvars));
  if (roll < 80) {
    Term cap = random_term(rng, sig, depth - 1, nvars);
    if (random_int(rng, 0, 9) < 6) {
      Term u = random_term(rng, sig, depth - 1, nvars);
      Term v = random_term(rng, sig, depth - 1, nvars);
      return t_trunc_sup(std::move(cap), affine_schema(std::move(u), std::move(v)));
    }
    Direction dir = random_int(rng, 0, 1) == 0 ? Direction::Increasing : Direction::Decreasing;
    std::size_t len = static_cast<std::size_t>(random_int(rng, 1, 4));
    std::vector<Term> items;
    items.push_back(random_term(rng, sig, depth > 1 ? depth - 2 : 0, nvars));
    for (std::size_t i = 1; i < len; ++i) {
      Term next = random_term(rng, sig, depth > 1 ? depth - 2 : 0, nvars);
      items.push_back(dir == Direction::Increasing ? t_join(items.back(), std::move(next))
                                                   : t_meet(items.back(), std::move(next)));
    }
    return t_trunc_sup(std::move(cap), monotone_schema(dir, kDefaultStabilizationHint, std::move(items)));
  }
  return detail::random_leaf(rng, sig, nvars);
}

}  // namespace rieszterm
