// Certifying static analysis.
//
// A bound certificate (k, {lambda_j}) for an operation tau asserts the
// pointwise bound |tau(v)| <= k + sum_j lambda_j * |v_j|.  An operation
// admitting such a bound preserves p-integrability over finite measures, and
// over arbitrary measures when k = 0.  Inference is syntax-directed and
// sound; it is deliberately conservative (a refusal or a k > 0 result is not
// a proof of failure -- the witness module handles necessity).
//
// Inference rules:
//   x_i        -> (0, {i: 1})
//   zero       -> (0, {})
//   one        -> (1, {})
//   c * s      -> |c| * cert(s)
//   s + t      -> componentwise sum
//   s v t      -> componentwise max   (|f v g| <= |f| v |g|; the coarser
//                 componentwise-sum rule is available as JoinRule::Sum)
//   trunc s    -> cert(s)             (|f ^ 1| <= |f|)
//   tsup       -> cert(cap) + cert(f_0)   (f_0 ^ cap <= result <= cap, and
//                 dually for decreasing schemas)
//   sq, abspow -> refused (NotCertifiable)
//
// interval_bound() is the companion abstract interpretation over closed
// rational intervals; it also covers the extended nodes and so decides
// boundedness on boxes (the infinity-integrability criterion).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "rieszterm/eval.hpp"
#include "rieszterm/interval.hpp"
#include "rieszterm/term.hpp"

namespace rieszterm {

struct BoundCertificate {
  Rational k;
  std::map<VarIndex, Rational> lambda;

  bool operator==(const BoundCertificate& o) const { return k == o.k && lambda == o.lambda; }

  // k + sum_j lambda_j |x_j| at a point (absent coordinates read as 0).
  Rational bound_at(const Point& x) const {
    Rational b = k;
    for (const auto& [j, lj] : lambda) {
      auto it = x.find(j);
      if (it != x.end()) b += lj * rat_abs(it->second);
    }
    return b;
  }
};

inline std::string to_string(const BoundCertificate& c) {
  std::string s = "k=" + to_string(c.k) + " lambda={";
  bool first = true;
  for (const auto& [j, lj] : c.lambda) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(j) + ":" + to_string(lj);
  }
  return s + "}";
}

enum class JoinRule { Max, Sum };

namespace detail {

inline BoundCertificate cert_scale(const Rational& c, BoundCertificate in) {
  Rational a = rat_abs(c);
  in.k *= a;
  for (auto& [j, lj] : in.lambda) lj *= a;
  return in;
}

inline BoundCertificate cert_add(BoundCertificate a, const BoundCertificate& b) {
  a.k += b.k;
  for (const auto& [j, lj] : b.lambda) {
    auto [it, fresh] = a.lambda.emplace(j, lj);
    if (!fresh) it->second += lj;
  }
  return a;
}

inline BoundCertificate cert_join(BoundCertificate a, const BoundCertificate& b, JoinRule rule) {
  if (rule == JoinRule::Sum) return cert_add(std::move(a), b);
  a.k = rat_max(a.k, b.k);
  for (const auto& [j, lj] : b.lambda) {
    auto [it, fresh] = a.lambda.emplace(j, lj);
    if (!fresh) it->second = rat_max(it->second, lj);
  }
  return a;
}

inline BoundCertificate infer(const Term& t, JoinRule rule) {
  switch (t.kind()) {
    case NodeKind::Proj: {
      BoundCertificate c{Rational(0), {}};
      c.lambda[t.var()] = Rational(1);
      return c;
    }
    case NodeKind::Zero:
      return BoundCertificate{Rational(0), {}};
    case NodeKind::One:
      return BoundCertificate{Rational(1), {}};
    case NodeKind::Add:
      return cert_add(infer(t.left(), rule), infer(t.right(), rule));
    case NodeKind::Join:
      return cert_join(infer(t.left(), rule), infer(t.right(), rule), rule);
    case NodeKind::Scale:
      return cert_scale(t.coeff().constant_value(), infer(t.child(), rule));
    case NodeKind::Trunc:
      return infer(t.child(), rule);
    case NodeKind::TruncSup:
      return cert_add(infer(t.cap(), rule), infer(schema_first(t.schema()), rule));
    case NodeKind::Square:
      throw NotCertifiable("sq admits no linear bound certificate");
    case NodeKind::AbsPow:
      throw NotCertifiable("abspow admits no linear bound certificate");
  }
  throw Error("unreachable node kind");
}

}  // namespace detail

// Infers a sound certificate for t, or throws NotCertifiable for extended
// nodes.  Base-signature terms always receive k = 0.
inline BoundCertificate infer_bound(const Term& t, JoinRule rule = JoinRule::Max) {
  validate_index_closed(t);
  BoundCertificate c = detail::infer(t, rule);
  if (signature_of(t) == Signature::Base && c.k != 0)
    throw Error("internal invariant broken: base-signature certificate with k != 0");
  return c;
}

// Exact check of |eval(t, x)| <= k + sum lambda_j |x_j|.
inline bool check_certificate(const Term& t, const BoundCertificate& c, const Point& x,
                              EvalDiagnostics* diag = nullptr) {
  return rat_abs(eval(t, x, diag)) <= c.bound_at(x);
}

// --- interval bound --------------------------------------------------------------

namespace detail {

inline Interval iv_bound(const Term& t, const Box& box) {
  switch (t.kind()) {
    case NodeKind::Proj: {
      auto it = box.find(t.var());
      if (it == box.end()) throw MissingVariable(t.var());
      return it->second;
    }
    case NodeKind::Zero:
      return Interval(Rational(0), Rational(0));
    case NodeKind::One:
      return Interval(Rational(1), Rational(1));
    case NodeKind::Add:
      return iv_add(iv_bound(t.left(), box), iv_bound(t.right(), box));
    case NodeKind::Join:
      return iv_join(iv_bound(t.left(), box), iv_bound(t.right(), box));
    case NodeKind::Scale:
      return iv_scale(t.coeff().constant_value(), iv_bound(t.child(), box));
    case NodeKind::Trunc:
      return iv_min_with(iv_bound(t.child(), box), Rational(1));
    case NodeKind::TruncSup: {
      Interval g = iv_bound(t.cap(), box);
      Interval f0 = iv_bound(schema_first(t.schema()), box);
      const SequenceSchema& s = t.schema();
      if (s.kind == SequenceSchema::Kind::Monotone && s.direction == Direction::Decreasing)
        return Interval(g.lo, iv_join(f0, g).hi);  // g <= result <= f_0 v g
      return Interval(iv_meet(f0, g).lo, g.hi);    // f_0 ^ g <= result <= g
    }
    case NodeKind::Square:
      return iv_square(iv_bound(t.child(), box));
    case NodeKind::AbsPow: {
      Interval a = iv_bound(t.child(), box);
      Rational m = rat_max(rat_abs(a.lo), rat_abs(a.hi));
      const Rational& q = t.exponent();
      if (is_integer(q)) {
        long e = static_cast<long>(num(q));
        Rational hi = pow_int(m, e);
        Rational lo = a.contains(Rational(0))
                          ? Rational(0)
                          : pow_int(rat_min(rat_abs(a.lo), rat_abs(a.hi)), e);
        return Interval(lo, hi);
      }
      // Sound (loose) enclosure for fractional exponents:
      // |x|^q <= max(1, m^ceil(q)) on |x| <= m.
      Rational hi = rat_max(Rational(1), pow_int(m, static_cast<long>(ceil_int(q))));
      return Interval(Rational(0), hi);
    }
  }
  throw Error("unreachable node kind");
}

}  // namespace detail

// Sound enclosure of t's range over the box.  Total on all three signatures.
inline Interval interval_bound(const Term& t, const Box& box) {
  validate_index_closed(t);
  return detail::iv_bound(t, box);
}

// --- classification ----------------------------------------------------------------

struct Classification {
  Signature sig;
  bool preserves_p_integrability = false;         // arbitrary measures
  bool preserves_finite_p_integrability = false;  // finite measures
  bool preserves_infty_integrability = false;     // bounded on every box
  std::optional<BoundCertificate> certificate;
  std::optional<std::pair<Box, Interval>> box_bound;
};

// Flags per signature:
//   base:     all three true, witnessed by a k = 0 certificate;
//   unital:   finite/infinity true; arbitrary-measure flag iff inferred k = 0
//             (conservative: inference may miss a tighter k);
//   extended: no certificate; only boundedness on boxes is established, via
//             an interval bound on `box` ([-10,10] per variable by default).
//             The negative flags are conservative pending a witness search.
inline Classification classify(const Term& t, std::optional<Box> box = std::nullopt) {
  Classification out;
  out.sig = signature_of(t);
  if (out.sig != Signature::Extended) {
    out.certificate = infer_bound(t);
    out.preserves_finite_p_integrability = true;
    out.preserves_infty_integrability = true;
    out.preserves_p_integrability = out.certificate->k == 0;
    return out;
  }
  Box b;
  if (box) {
    b = *box;
  } else {
    for (VarIndex v : free_vars(t)) b[v] = Interval(Rational(-10), Rational(10));
  }
  out.preserves_infty_integrability = true;
  out.box_bound = std::make_pair(b, interval_bound(t, b));
  return out;
}

}  // namespace rieszterm
