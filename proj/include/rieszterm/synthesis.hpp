// Synthesis of indicator-style terms in the base signature.
//
// The strict threshold indicator is the capped ramp
//   ind_{x>l}  =  tsup[n] cap=trunc(pos(g)) : n*(g - trunc(g)),   g = (1/l)x,
// whose value is exactly 1 when x > l and exactly 0 otherwise: g - trunc(g)
// is the overshoot (g-1)^+, so the affine sup reaches the cap exactly when
// g > 1, and the positively-truncated cap keeps the value 0 for g <= 1
// (including negative inputs, where the unpadded cap would leak g itself).
//
// The inclusive indicator is the countable meet of strict indicators at
// thresholds q_k = l*(1 - 2^-(k+1)) climbing to l from below, encoded through
// the negated capped sup -tsup[cap=zero] mono(inc, hint, -ind_{x>q_k}); for
// x < l it stabilises exactly at probe index ceil(log2(l/(l-x))), for
// x >= l the window is exhausted and the (correct) value 1 is returned with
// a stability warning.
//
// Regions are finite meet/join combinations of threshold sets; their
// indicators compose by term-level meet/join (0/1-valued everywhere, off
// boundaries).  Simple functions sum scaled region indicators; ladders wrap
// an increasing finite list of simple functions into a capped monotone sup.
// Dominator preconditions (g >= 1 inside each region; spec value <= g) are
// checked on a rational verification grid derived from the thresholds, with
// exact arithmetic, skipping points that sit on a threshold boundary.
#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "rieszterm/certify.hpp"
#include "rieszterm/eval.hpp"
#include "rieszterm/term.hpp"

namespace rieszterm {

struct ThresholdSet {
  enum class Rel { Gt, Ge };
  VarIndex var = 0;
  Rel rel = Rel::Gt;
  Rational threshold;  // must be positive
};

// Finite meet/join combination of threshold sets.
struct Region {
  enum class Kind { Leaf, All, Any };
  Kind kind = Kind::Leaf;
  ThresholdSet leaf;           // Leaf
  std::vector<Region> parts;   // All / Any, non-empty

  static Region of(ThresholdSet t) {
    Region r;
    r.kind = Kind::Leaf;
    r.leaf = std::move(t);
    return r;
  }
  static Region all(std::vector<Region> parts) { return combo(Kind::All, std::move(parts)); }
  static Region any(std::vector<Region> parts) { return combo(Kind::Any, std::move(parts)); }
  static Region all_of(const std::vector<ThresholdSet>& ts) { return lift(Kind::All, ts); }
  static Region any_of(const std::vector<ThresholdSet>& ts) { return lift(Kind::Any, ts); }

 private:
  static Region combo(Kind k, std::vector<Region> parts) {
    if (parts.empty()) throw EmptyRegion("a region combination needs at least one part");
    Region r;
    r.kind = k;
    r.parts = std::move(parts);
    return r;
  }
  static Region lift(Kind k, const std::vector<ThresholdSet>& ts) {
    std::vector<Region> parts;
    parts.reserve(ts.size());
    for (const ThresholdSet& t : ts) parts.push_back(of(t));
    return combo(k, parts);
  }
};

inline bool region_contains(const Region& r, const Point& x) {
  switch (r.kind) {
    case Region::Kind::Leaf: {
      auto it = x.find(r.leaf.var);
      if (it == x.end()) throw MissingVariable(r.leaf.var);
      return r.leaf.rel == ThresholdSet::Rel::Gt ? it->second > r.leaf.threshold
                                                 : it->second >= r.leaf.threshold;
    }
    case Region::Kind::All:
      for (const Region& p : r.parts)
        if (!region_contains(p, x)) return false;
      return true;
    case Region::Kind::Any:
      for (const Region& p : r.parts)
        if (region_contains(p, x)) return true;
      return false;
  }
  throw Error("unreachable region kind");
}

// A point sitting exactly on some threshold is a boundary point; grid checks
// skip these (the indicators are only specified off boundaries).
inline bool region_on_boundary(const Region& r, const Point& x) {
  switch (r.kind) {
    case Region::Kind::Leaf: {
      auto it = x.find(r.leaf.var);
      if (it == x.end()) throw MissingVariable(r.leaf.var);
      return it->second == r.leaf.threshold;
    }
    default:
      for (const Region& p : r.parts)
        if (region_on_boundary(p, x)) return true;
      return false;
  }
}

namespace detail {

inline void collect_thresholds(const Region& r, std::map<VarIndex, std::set<Rational>>& out) {
  if (r.kind == Region::Kind::Leaf) {
    out[r.leaf.var].insert(r.leaf.threshold);
    return;
  }
  for (const Region& p : r.parts) collect_thresholds(p, out);
}

// Strict indicator with an arbitrary (possibly index-parametric) reciprocal
// coefficient c standing for 1/threshold.
inline Term indicator_gt_scaled(VarIndex var, const Coeff& c) {
  Term g = t_scale(c, t_proj(var));
  Term cap = t_trunc(t_pos(g));
  Term u = t_sub(g, t_trunc(g));
  return t_trunc_sup(std::move(cap), affine_schema(std::move(u), t_zero()));
}

}  // namespace detail

// Term evaluating to exactly 1 where x_var > threshold and exactly 0
// elsewhere.  Base signature; certifies with k = 0.
inline Term indicator_gt(VarIndex var, const Rational& threshold) {
  if (threshold <= 0)
    throw NonpositiveThreshold("strict threshold must be positive, got " + to_string(threshold));
  return detail::indicator_gt_scaled(var, Coeff::constant(Rational(1) / threshold));
}

// Term evaluating to exactly 1 where x_var >= threshold and exactly 0
// elsewhere.  For x < threshold the defining meet stabilises within
// ceil(log2(threshold/(threshold-x))) probes; `hint` bounds that window.
inline Term indicator_ge(VarIndex var, const Rational& threshold,
                         unsigned hint = kDefaultStabilizationHint) {
  if (threshold <= 0)
    throw NonpositiveThreshold("inclusive threshold must be positive, got " + to_string(threshold));
  // q_k = threshold * (1 - 2^-(k+1)); the body is -ind_{x > q_k}.
  Coeff qk = Coeff::mul(
      Coeff::constant(threshold),
      Coeff::sub(Coeff::constant(Rational(1)),
                 Coeff::pow2_of(Coeff::neg(Coeff::add(Coeff::index(), Coeff::constant(Rational(1)))))));
  Coeff inv_qk = Coeff::div(Coeff::constant(Rational(1)), qk);
  Term body = t_neg(detail::indicator_gt_scaled(var, inv_qk));
  Term meet_encoded = t_trunc_sup(t_zero(), monotone_schema(Direction::Increasing, hint, std::move(body)));
  return t_neg(std::move(meet_encoded));
}

// Rational verification grid: per mentioned variable, 0 plus l/2, l, 3l/2, 2l
// for each threshold l (plus any extra axes demanded by the dominator, probed
// at {-1, 0, 1}).
inline std::vector<Point> verification_grid(const Region& region, const Term& dominator) {
  std::map<VarIndex, std::set<Rational>> axes;
  detail::collect_thresholds(region, axes);
  for (auto& [v, vals] : axes) {
    std::set<Rational> expanded{Rational(0)};
    for (const Rational& l : vals) {
      expanded.insert(l / 2);
      expanded.insert(l);
      expanded.insert(l * Rational(3, 2));
      expanded.insert(l * 2);
    }
    vals = std::move(expanded);
  }
  for (VarIndex v : free_vars(dominator))
    if (!axes.count(v)) axes[v] = {Rational(-1), Rational(0), Rational(1)};

  std::vector<VarIndex> vars;
  std::vector<std::vector<Rational>> vals;
  for (auto& [v, s] : axes) {
    vars.push_back(v);
    vals.emplace_back(s.begin(), s.end());
  }
  std::vector<Point> grid;
  std::vector<std::size_t> odo(vars.size(), 0);
  for (;;) {
    Point p;
    for (std::size_t i = 0; i < vars.size(); ++i) p[vars[i]] = vals[i][odo[i]];
    grid.push_back(std::move(p));
    std::size_t i = vars.size();
    for (;;) {
      if (i == 0) return grid;
      --i;
      if (++odo[i] < vals[i].size()) break;
      odo[i] = 0;
      if (i == 0) return grid;
    }
  }
}

// Indicator of a region, built by meet/join composition of threshold
// indicators.  The dominator must evaluate >= 1 at every off-boundary grid
// point inside the region (the hypothesis under which a scaled region
// indicator stays dominated), else DominatorTooSmall.
inline Term region_indicator(const Region& region, const Term& dominator,
                             unsigned hint = kDefaultStabilizationHint) {
  for (const Point& pt : verification_grid(region, dominator)) {
    if (region_on_boundary(region, pt)) continue;
    if (!region_contains(region, pt)) continue;
    if (eval(dominator, pt) < 1)
      throw DominatorTooSmall("dominator evaluates below 1 inside the region");
  }
  auto build = [&](auto&& self, const Region& r) -> Term {
    switch (r.kind) {
      case Region::Kind::Leaf:
        return r.leaf.rel == ThresholdSet::Rel::Gt
                   ? indicator_gt(r.leaf.var, r.leaf.threshold)
                   : indicator_ge(r.leaf.var, r.leaf.threshold, hint);
      case Region::Kind::All: {
        Term acc = self(self, r.parts.front());
        for (std::size_t i = 1; i < r.parts.size(); ++i)
          acc = t_meet(std::move(acc), self(self, r.parts[i]));
        return acc;
      }
      case Region::Kind::Any: {
        Term acc = self(self, r.parts.front());
        for (std::size_t i = 1; i < r.parts.size(); ++i)
          acc = t_join(std::move(acc), self(self, r.parts[i]));
        return acc;
      }
    }
    throw Error("unreachable region kind");
  };
  return build(build, region);
}

// A simple-function specification: sum of coefficient * region indicator,
// dominated by `dominator`.
struct SimpleFunctionSpec {
  std::vector<std::pair<Rational, Region>> entries;
  Term dominator;
  unsigned hint = kDefaultStabilizationHint;
};

// Builds sum_i c_i * ind_{R_i}.  Every region re-validates the dominator;
// additionally the summed spec value must stay <= dominator on the combined
// grid (off boundaries), else DominatorTooSmall.  Empty spec -> zero.
inline Term simple_term(const SimpleFunctionSpec& spec) {
  if (spec.entries.empty()) return t_zero();
  Region combined = [&] {
    std::vector<Region> all;
    for (const auto& [c, r] : spec.entries) all.push_back(r);
    return Region::any(std::move(all));
  }();
  for (const Point& pt : verification_grid(combined, spec.dominator)) {
    if (region_on_boundary(combined, pt)) continue;
    Rational value(0);
    for (const auto& [c, r] : spec.entries)
      if (region_contains(r, pt)) value += c;
    if (value > eval(spec.dominator, pt))
      throw DominatorTooSmall("spec value exceeds the dominator at a grid point");
  }
  Term acc;
  for (const auto& [c, r] : spec.entries) {
    Term part = t_scale(c, region_indicator(r, spec.dominator, spec.hint));
    acc = acc.empty() ? std::move(part) : t_add(std::move(acc), std::move(part));
  }
  return acc;
}

// Wraps an increasing finite ladder of simple functions into a capped
// monotone sup tsup[cap] mono(inc, ., [s_0; ...; s_{L-1}]) (constant past the
// end).  Increasingness is checked pointwise on the combined grid, off
// boundaries, else LadderNotIncreasing.
inline Term ladder_term(const std::vector<SimpleFunctionSpec>& ladder, const Term& cap,
                        unsigned hint = kDefaultStabilizationHint) {
  if (ladder.empty()) throw SynthesisError("ladder needs at least one rung");
  std::vector<Term> rungs;
  rungs.reserve(ladder.size());
  for (const SimpleFunctionSpec& s : ladder) rungs.push_back(simple_term(s));

  // Combined grid: every rung's thresholds plus the cap's axes.
  std::vector<Region> all;
  for (const SimpleFunctionSpec& s : ladder)
    for (const auto& [c, r] : s.entries) all.push_back(r);
  if (!all.empty()) {
    Region combined = Region::any(std::move(all));
    for (const Point& pt : verification_grid(combined, cap)) {
      if (region_on_boundary(combined, pt)) continue;
      for (std::size_t i = 1; i < rungs.size(); ++i)
        if (eval(rungs[i - 1], pt) > eval(rungs[i], pt))
          throw LadderNotIncreasing("ladder rung " + std::to_string(i - 1) +
                                    " exceeds rung " + std::to_string(i) +
                                    " at a grid point");
    }
  }
  return t_trunc_sup(cap, monotone_schema(Direction::Increasing, hint, std::move(rungs)));
}

}  // namespace rieszterm
