// Closed rational intervals [lo, hi] and the image rules used by the
// interval-bound analysis (addition, scaling, pointwise max/min, capping).
#pragma once

#include <string>

#include "rieszterm/rational.hpp"

namespace rieszterm {

struct Interval {
  Rational lo, hi;

  Interval() : lo(0), hi(0) {}
  Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo > hi) throw Error("interval with lo > hi");
  }

  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
};

inline Interval iv_add(const Interval& a, const Interval& b) {
  return Interval(a.lo + b.lo, a.hi + b.hi);
}

inline Interval iv_scale(const Rational& c, const Interval& a) {
  Rational x = c * a.lo, y = c * a.hi;
  return x <= y ? Interval(x, y) : Interval(y, x);
}

// Image of pointwise max over independent inputs.
inline Interval iv_join(const Interval& a, const Interval& b) {
  return Interval(rat_max(a.lo, b.lo), rat_max(a.hi, b.hi));
}

// Image of pointwise min over independent inputs.
inline Interval iv_meet(const Interval& a, const Interval& b) {
  return Interval(rat_min(a.lo, b.lo), rat_min(a.hi, b.hi));
}

// Image of x |-> min(x, c).
inline Interval iv_min_with(const Interval& a, const Rational& c) {
  return Interval(rat_min(a.lo, c), rat_min(a.hi, c));
}

// Image of x |-> max(x, c).
inline Interval iv_max_with(const Interval& a, const Rational& c) {
  return Interval(rat_max(a.lo, c), rat_max(a.hi, c));
}

inline Interval iv_neg(const Interval& a) { return Interval(-a.hi, -a.lo); }

// Image of x |-> x^2.
inline Interval iv_square(const Interval& a) {
  Rational l2 = a.lo * a.lo, h2 = a.hi * a.hi;
  Rational hi = rat_max(l2, h2);
  Rational lo = a.contains(Rational(0)) ? Rational(0) : rat_min(l2, h2);
  return Interval(lo, hi);
}

// Hull of two intervals (smallest interval containing both).
inline Interval iv_hull(const Interval& a, const Interval& b) {
  return Interval(rat_min(a.lo, b.lo), rat_max(a.hi, b.hi));
}

inline std::string to_string(const Interval& a) {
  return "[" + to_string(a.lo) + ", " + to_string(a.hi) + "]";
}

}  // namespace rieszterm
