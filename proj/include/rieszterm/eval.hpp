// Exact evaluation of terms at rational points.
//
// Countable suprema are never computed by unbounded iteration:
//  - affine schemas n*u + v use the closed form sup_affine_capped;
//  - finite-list monotone schemas are probed exhaustively (their tail is
//    constant, so the result is exact);
//  - parametric monotone schemas are probed up to their stabilization hint.
//    The probe stops early -- exactly -- when the capped value reaches the cap
//    (increasing case) or falls to the cap (decreasing case).  If the window
//    is exhausted the last value is returned and a stability warning is
//    recorded: possibly unconverged, never silently claimed exact.
// A monotone schema whose probes violate the declared direction raises
// SchemaNotMonotone.
//
// An increasing schema denotes sup_n{f_n ^ cap}; a decreasing schema denotes
// the dual capped meet inf_n{f_n v cap}.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rieszterm/interval.hpp"
#include "rieszterm/piecewise_affine.hpp"
#include "rieszterm/term.hpp"

namespace rieszterm {

using Point = std::map<VarIndex, Rational>;

struct EvalDiagnostics {
  bool stability_warning = false;
  std::vector<std::string> notes;
};

namespace detail {

struct EvalCtx {
  const Point& x;
  const Int* index = nullptr;  // bound schema index, when inside a parametric body
  EvalDiagnostics* diag = nullptr;
};

inline Rational eval_node(const Term& t, EvalCtx& ctx);

// f_j for a monotone schema at probe index j.
inline Rational monotone_element(const SequenceSchema& s, std::size_t j, EvalCtx& ctx) {
  if (s.is_finite_list()) {
    const Term& it = s.items[j < s.items.size() ? j : s.items.size() - 1];
    return eval_node(it, ctx);
  }
  Int jv(static_cast<unsigned long>(j));
  EvalCtx inner{ctx.x, &jv, ctx.diag};
  return eval_node(s.body, inner);
}

inline Rational eval_trunc_sup(const Term& t, EvalCtx& ctx) {
  const SequenceSchema& s = t.schema();
  Rational g = eval_node(t.cap(), ctx);
  if (s.is_affine()) {
    Rational a = eval_node(s.u, ctx);
    Rational b = eval_node(s.v, ctx);
    return sup_affine_capped(a, b, g);
  }
  const bool inc = s.direction == Direction::Increasing;
  // Window: whole list for finite lists (exact), hint+1 probes otherwise.
  std::size_t window =
      s.is_finite_list() ? s.items.size() : static_cast<std::size_t>(s.hint) + 1;
  std::optional<Rational> prev;
  Rational value;
  for (std::size_t j = 0; j < window; ++j) {
    Rational fj = monotone_element(s, j, ctx);
    Rational vj = inc ? rat_min(fj, g) : rat_max(fj, g);
    if (prev && (inc ? vj < *prev : vj > *prev))
      throw SchemaNotMonotone("schema declared " + std::string(inc ? "inc" : "dec") +
                              " is not monotone at probe index " + std::to_string(j));
    prev = vj;
    value = vj;
    // Cap attainment: for an increasing capped sequence the sup is the cap the
    // moment any element reaches it, and dually for decreasing meets.
    if (vj == g) return g;
  }
  if (s.is_finite_list()) return value;  // constant tail => exact
  if (ctx.diag) {
    ctx.diag->stability_warning = true;
    ctx.diag->notes.push_back("monotone schema did not stabilize within hint " +
                              std::to_string(s.hint) + "; returning the last probe value");
  }
  return value;
}

inline Rational eval_node(const Term& t, EvalCtx& ctx) {
  switch (t.kind()) {
    case NodeKind::Proj: {
      auto it = ctx.x.find(t.var());
      if (it == ctx.x.end()) throw MissingVariable(t.var());
      return it->second;
    }
    case NodeKind::Zero:
      return Rational(0);
    case NodeKind::One:
      return Rational(1);
    case NodeKind::Add:
      return eval_node(t.left(), ctx) + eval_node(t.right(), ctx);
    case NodeKind::Join:
      return rat_max(eval_node(t.left(), ctx), eval_node(t.right(), ctx));
    case NodeKind::Scale: {
      Rational c;
      if (t.coeff().is_constant()) {
        c = t.coeff().constant_value();
      } else {
        if (!ctx.index)
          throw EvalError("coefficient uses the schema index k outside a parametric body");
        c = t.coeff().eval(*ctx.index);
      }
      return c * eval_node(t.child(), ctx);
    }
    case NodeKind::Trunc:
      // min(f, 1) on the whole range, matching the extension of truncation to
      // arbitrary-sign arguments.
      return rat_min(eval_node(t.child(), ctx), Rational(1));
    case NodeKind::TruncSup:
      return eval_trunc_sup(t, ctx);
    case NodeKind::Square: {
      Rational v = eval_node(t.child(), ctx);
      return v * v;
    }
    case NodeKind::AbsPow: {
      Rational v = rat_abs(eval_node(t.child(), ctx));
      const Rational& q = t.exponent();
      if (!is_integer(q))
        throw EvalError("abspow with non-integer exponent " + to_string(q) +
                        " has no exact rational value");
      return pow_int(v, static_cast<long>(num(q)));
    }
  }
  throw Error("unreachable node kind");
}

}  // namespace detail

// Evaluates t at x; x must assign every free variable.  Diagnostics, when
// provided, collect stability warnings from parametric monotone schemas.
inline Rational eval(const Term& t, const Point& x, EvalDiagnostics* diag = nullptr) {
  detail::EvalCtx ctx{x, nullptr, diag};
  return detail::eval_node(t, ctx);
}

// Axis-aligned rational box.
using Box = std::map<VarIndex, Interval>;

// Evaluates t on the uniform grid over `box` with `steps` points per axis
// (endpoints included; steps == 1 degenerates to the lower endpoint).  The
// box must cover free_vars(t).  Points are emitted in row-major order with
// the highest variable index varying fastest.
inline std::vector<std::pair<Point, Rational>> eval_on_grid(const Term& t, const Box& box,
                                                            unsigned steps,
                                                            EvalDiagnostics* diag = nullptr) {
  if (steps == 0) throw Error("grid needs at least one step");
  IndexSet vars = free_vars(t);
  for (VarIndex v : vars)
    if (!box.count(v)) throw MissingVariable(v);

  std::vector<std::vector<Rational>> axes;
  for (VarIndex v : vars) {
    const Interval& iv = box.at(v);
    std::vector<Rational> pts;
    if (steps == 1) {
      pts.push_back(iv.lo);
    } else {
      for (unsigned i = 0; i < steps; ++i)
        pts.push_back(iv.lo + (iv.hi - iv.lo) * Rational(i) / Rational(steps - 1));
    }
    axes.push_back(std::move(pts));
  }

  std::vector<std::pair<Point, Rational>> out;
  std::vector<unsigned> odo(vars.size(), 0);
  for (;;) {
    Point p;
    for (std::size_t i = 0; i < vars.size(); ++i) p[vars[i]] = axes[i][odo[i]];
    out.emplace_back(p, eval(t, p, diag));
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++odo[i] < steps) break;
      odo[i] = 0;
      if (i == 0) return out;
    }
    if (vars.empty()) return out;
  }
}

}  // namespace rieszterm
