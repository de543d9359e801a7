// One-parameter piecewise-affine functions on [0, inf) and closed-form
// suprema of capped sequences over the nonnegative integers.  These are the
// normal forms through which every countable supremum in the library is
// evaluated -- no unbounded iteration anywhere.
#pragma once

#include <string>
#include <vector>

#include "rieszterm/rational.hpp"

namespace rieszterm {

// sup over integer n >= 0 of min(a*n + b, c).
//   a > 0 : the affine part grows without bound, so the cap is attained.
//   else  : the sequence is maximal at n = 0.
inline Rational sup_affine_capped(const Rational& a, const Rational& b, const Rational& c) {
  if (a > 0) return c;
  return rat_min(b, c);
}

// A piecewise-affine function given by segments [start_i, start_{i+1}) with
// value slope_i * t + intercept_i; the last segment extends to infinity.
// Segment starts are strictly increasing and the first start is 0.
struct PwaSegment {
  Rational start, slope, intercept;
};

class PiecewiseAffine {
 public:
  explicit PiecewiseAffine(std::vector<PwaSegment> segments) : segs_(std::move(segments)) {
    if (segs_.empty()) throw Error("piecewise-affine function needs at least one segment");
    if (segs_.front().start != 0) throw Error("first segment must start at 0");
    for (std::size_t i = 1; i < segs_.size(); ++i)
      if (!(segs_[i - 1].start < segs_[i].start))
        throw Error("segment starts must be strictly increasing");
  }

  const std::vector<PwaSegment>& segments() const { return segs_; }

  Rational value(const Rational& t) const {
    if (t < 0) throw Error("piecewise-affine function evaluated at negative argument");
    const PwaSegment& s = segment_at(t);
    return s.slope * t + s.intercept;
  }

  // True iff adjacent segments agree at every breakpoint.
  bool continuous() const {
    for (std::size_t i = 1; i < segs_.size(); ++i) {
      const Rational& b = segs_[i].start;
      if (segs_[i - 1].slope * b + segs_[i - 1].intercept != segs_[i].slope * b + segs_[i].intercept)
        return false;
    }
    return true;
  }

 private:
  const PwaSegment& segment_at(const Rational& t) const {
    std::size_t i = segs_.size();
    while (i > 1 && segs_[i - 1].start > t) --i;
    return segs_[i - 1];
  }

  std::vector<PwaSegment> segs_;
};

// sup over integer n >= 0 of min(f(n), cap).
//
// On each segment f is affine, hence monotone, so the integer maximum of f on
// the segment sits next to one of the segment's ends; it is enough to probe
// floor/ceil of every breakpoint plus one integer on each side (and n = 0).
// If the final segment has positive slope the cap itself is attained in the
// limit, exactly, for all large n.  min(., cap) is monotone, so capping after
// maximising f per probe point is sound.
inline Rational pwa_sup_capped(const PiecewiseAffine& f, const Rational& cap) {
  const auto& segs = f.segments();
  if (segs.back().slope > 0) return cap;
  Rational best = rat_min(f.value(Rational(0)), cap);
  auto probe = [&](const Int& n) {
    if (n < 0) return;
    Rational v = rat_min(f.value(Rational(n)), cap);
    if (v > best) best = v;
  };
  for (const PwaSegment& s : segs) {
    Int fl = floor_int(s.start);
    Int ce = ceil_int(s.start);
    probe(fl - 1);
    probe(fl);
    probe(fl + 1);
    probe(ce);
    probe(ce + 1);
  }
  return best;
}

inline std::string to_string(const PiecewiseAffine& f) {
  std::string s = "pwa{";
  bool first = true;
  for (const PwaSegment& seg : f.segments()) {
    if (!first) s += "; ";
    first = false;
    s += "[" + to_string(seg.start) + ",.): " + to_string(seg.slope) + "*t+" + to_string(seg.intercept);
  }
  return s + "}";
}

}  // namespace rieszterm
