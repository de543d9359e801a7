// Immutable term AST over the three operation signatures:
//   base      (--sig t):   x_i, zero, +, rational scaling, v (pointwise max),
//                          trunc, tsup (capped countable suprema / meets)
//   unital    (--sig u):   as base but with `one` instead of trunc
//   extended  (--sig ext): unital plus sq and abspow demo nodes
// Terms are handles onto shared immutable nodes; all operations are pure.
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "rieszterm/coeff_expr.hpp"
#include "rieszterm/errors.hpp"
#include "rieszterm/rational.hpp"

namespace rieszterm {

enum class NodeKind { Proj, Zero, One, Add, Scale, Join, Trunc, TruncSup, Square, AbsPow };

enum class Signature { Base, Unital, Extended };

inline const char* to_cstring(Signature s) {
  switch (s) {
    case Signature::Base: return "t";
    case Signature::Unital: return "u";
    case Signature::Extended: return "ext";
  }
  return "?";
}

using VarIndex = std::uint32_t;
using IndexSet = std::vector<VarIndex>;  // sorted, unique

struct TermNode;
struct SequenceSchema;

class Term {
 public:
  Term() = default;  // empty handle; only factory functions create real terms
  bool empty() const { return !p_; }

  NodeKind kind() const;
  VarIndex var() const;               // Proj
  const Coeff& coeff() const;         // Scale
  const Rational& exponent() const;   // AbsPow
  const Term& child() const;          // Scale/Trunc/Square/AbsPow
  const Term& left() const;           // Add/Join
  const Term& right() const;          // Add/Join
  const Term& cap() const;            // TruncSup
  const SequenceSchema& schema() const;  // TruncSup

  friend Term make_term(TermNode&& node);

 private:
  std::shared_ptr<const TermNode> p_;
};

// Direction of a declared-monotone schema.  Increasing schemas denote capped
// suprema sup_n{f_n ^ cap}; decreasing schemas denote the dual capped meets
// inf_n{f_n v cap} (equivalently -sup_n{(-f_n) ^ (-cap)}).
enum class Direction { Increasing, Decreasing };

inline constexpr unsigned kDefaultStabilizationHint = 64;

struct SequenceSchema {
  enum class Kind { Affine, Monotone };
  Kind kind = Kind::Affine;

  // Affine: f_n = n*u + v with u, v free of the schema index.
  Term u, v;

  // Monotone: either a parametric body mentioning the index k in scale
  // coefficients, or a finite list of terms extended constantly past its end.
  Direction direction = Direction::Increasing;
  unsigned hint = kDefaultStabilizationHint;  // probe window bound
  Term body;                                  // parametric body (empty if list form)
  std::vector<Term> items;                    // finite-list form (empty if parametric)

  bool is_affine() const { return kind == Kind::Affine; }
  bool is_finite_list() const { return kind == Kind::Monotone && !items.empty(); }
  bool is_parametric() const { return kind == Kind::Monotone && items.empty(); }
};

struct TermNode {
  NodeKind kind;
  VarIndex var = 0;
  Coeff coeff;
  Rational exponent;
  Term a, b;
  std::shared_ptr<const SequenceSchema> schema;
};

inline Term make_term(TermNode&& node) {
  Term t;
  t.p_ = std::make_shared<const TermNode>(std::move(node));
  return t;
}

inline NodeKind Term::kind() const { return p_->kind; }
inline VarIndex Term::var() const { return p_->var; }
inline const Coeff& Term::coeff() const { return p_->coeff; }
inline const Rational& Term::exponent() const { return p_->exponent; }
inline const Term& Term::child() const { return p_->a; }
inline const Term& Term::left() const { return p_->a; }
inline const Term& Term::right() const { return p_->b; }
inline const Term& Term::cap() const { return p_->a; }
inline const SequenceSchema& Term::schema() const { return *p_->schema; }

// --- primitive builders -------------------------------------------------------

inline Term t_proj(VarIndex i) {
  TermNode n{NodeKind::Proj};
  n.var = i;
  return make_term(std::move(n));
}
inline Term t_zero() { return make_term(TermNode{NodeKind::Zero}); }
inline Term t_one() { return make_term(TermNode{NodeKind::One}); }
inline Term t_add(Term a, Term b) {
  TermNode n{NodeKind::Add};
  n.a = std::move(a);
  n.b = std::move(b);
  return make_term(std::move(n));
}
inline Term t_scale(Coeff c, Term t) {
  TermNode n{NodeKind::Scale};
  n.coeff = std::move(c);
  n.a = std::move(t);
  return make_term(std::move(n));
}
inline Term t_scale(Rational c, Term t) { return t_scale(Coeff::constant(std::move(c)), std::move(t)); }
inline Term t_join(Term a, Term b) {
  TermNode n{NodeKind::Join};
  n.a = std::move(a);
  n.b = std::move(b);
  return make_term(std::move(n));
}
inline Term t_trunc(Term t) {
  TermNode n{NodeKind::Trunc};
  n.a = std::move(t);
  return make_term(std::move(n));
}
inline Term t_trunc_sup(Term cap, SequenceSchema schema) {
  if (schema.kind == SequenceSchema::Kind::Monotone && schema.items.empty() && schema.body.empty())
    throw Error("monotone schema needs a parametric body or a non-empty item list");
  if (schema.kind == SequenceSchema::Kind::Monotone && schema.hint == 0)
    throw Error("monotone schema needs a positive stabilization hint");
  TermNode n{NodeKind::TruncSup};
  n.a = std::move(cap);
  n.schema = std::make_shared<const SequenceSchema>(std::move(schema));
  return make_term(std::move(n));
}
inline Term t_square(Term t) {
  TermNode n{NodeKind::Square};
  n.a = std::move(t);
  return make_term(std::move(n));
}
inline Term t_abspow(Rational q, Term t) {
  if (q <= 0) throw Error("abspow exponent must be positive");
  TermNode n{NodeKind::AbsPow};
  n.exponent = std::move(q);
  n.a = std::move(t);
  return make_term(std::move(n));
}

inline SequenceSchema affine_schema(Term u, Term v) {
  SequenceSchema s;
  s.kind = SequenceSchema::Kind::Affine;
  s.u = std::move(u);
  s.v = std::move(v);
  return s;
}
inline SequenceSchema monotone_schema(Direction dir, unsigned hint, Term body) {
  SequenceSchema s;
  s.kind = SequenceSchema::Kind::Monotone;
  s.direction = dir;
  s.hint = hint;
  s.body = std::move(body);
  return s;
}
inline SequenceSchema monotone_schema(Direction dir, unsigned hint, std::vector<Term> items) {
  SequenceSchema s;
  s.kind = SequenceSchema::Kind::Monotone;
  s.direction = dir;
  s.hint = hint;
  s.items = std::move(items);
  return s;
}

// --- derived operations (expanded immediately into primitives) -----------------

inline Term t_neg(Term t) { return t_scale(Rational(-1), std::move(t)); }
inline Term t_sub(Term a, Term b) { return t_add(std::move(a), t_neg(std::move(b))); }
// f ^ g = -((-f) v (-g))
inline Term t_meet(Term a, Term b) {
  return t_neg(t_join(t_neg(std::move(a)), t_neg(std::move(b))));
}
// f+ = f v 0
inline Term t_pos(Term t) { return t_join(std::move(t), t_zero()); }
// f- = (-f) v 0
inline Term t_negpart(Term t) { return t_pos(t_neg(std::move(t))); }
// |f| = f v (-f)
inline Term t_abs(Term t) {
  Term minus = t_neg(t);
  return t_join(std::move(t), std::move(minus));
}
// Truncation in a unital signature: f ^ one = -((-f) v (-one)).
inline Term t_trunc_via_unit(Term t) { return t_meet(std::move(t), t_one()); }

// --- structural equality --------------------------------------------------------

inline bool schema_equal(const SequenceSchema& x, const SequenceSchema& y);

inline bool term_equal(const Term& s, const Term& t) {
  if (s.empty() || t.empty()) return s.empty() && t.empty();
  if (s.kind() != t.kind()) return false;
  switch (s.kind()) {
    case NodeKind::Proj: return s.var() == t.var();
    case NodeKind::Zero:
    case NodeKind::One: return true;
    case NodeKind::Add:
    case NodeKind::Join:
      return term_equal(s.left(), t.left()) && term_equal(s.right(), t.right());
    case NodeKind::Scale:
      return s.coeff().equals(t.coeff()) && term_equal(s.child(), t.child());
    case NodeKind::Trunc:
    case NodeKind::Square:
      return term_equal(s.child(), t.child());
    case NodeKind::AbsPow:
      return s.exponent() == t.exponent() && term_equal(s.child(), t.child());
    case NodeKind::TruncSup:
      return term_equal(s.cap(), t.cap()) && schema_equal(s.schema(), t.schema());
  }
  return false;
}

inline bool schema_equal(const SequenceSchema& x, const SequenceSchema& y) {
  if (x.kind != y.kind) return false;
  if (x.kind == SequenceSchema::Kind::Affine)
    return term_equal(x.u, y.u) && term_equal(x.v, y.v);
  if (x.direction != y.direction || x.hint != y.hint) return false;
  if (x.is_finite_list() != y.is_finite_list()) return false;
  if (x.is_finite_list()) {
    if (x.items.size() != y.items.size()) return false;
    for (std::size_t i = 0; i < x.items.size(); ++i)
      if (!term_equal(x.items[i], y.items[i])) return false;
    return true;
  }
  return term_equal(x.body, y.body);
}

// --- traversal helpers -----------------------------------------------------------

template <typename Fn>
inline void for_each_child(const Term& t, Fn&& fn) {
  switch (t.kind()) {
    case NodeKind::Proj:
    case NodeKind::Zero:
    case NodeKind::One:
      return;
    case NodeKind::Add:
    case NodeKind::Join:
      fn(t.left());
      fn(t.right());
      return;
    case NodeKind::Scale:
    case NodeKind::Trunc:
    case NodeKind::Square:
    case NodeKind::AbsPow:
      fn(t.child());
      return;
    case NodeKind::TruncSup: {
      fn(t.cap());
      const SequenceSchema& s = t.schema();
      if (s.is_affine()) {
        fn(s.u);
        fn(s.v);
      } else if (s.is_finite_list()) {
        for (const Term& it : s.items) fn(it);
      } else {
        fn(s.body);
      }
      return;
    }
  }
}

inline void collect_vars(const Term& t, std::vector<VarIndex>& out) {
  if (t.kind() == NodeKind::Proj) out.push_back(t.var());
  for_each_child(t, [&](const Term& c) { collect_vars(c, out); });
}

// Sorted, duplicate-free variable indices occurring in t (including inside
// caps and schema bodies).
inline IndexSet free_vars(const Term& t) {
  std::vector<VarIndex> v;
  collect_vars(t, v);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Number of input coordinates 0..m-1 the term reads (0 for closed terms).
inline std::size_t term_arity(const Term& t) {
  IndexSet vs = free_vars(t);
  return vs.empty() ? 0 : static_cast<std::size_t>(vs.back()) + 1;
}

// --- validation --------------------------------------------------------------------

namespace detail {
inline void check_signature(const Term& t, Signature sig) {
  switch (t.kind()) {
    case NodeKind::One:
      if (sig == Signature::Base)
        throw SignatureViolation("`one` is not available in signature t");
      break;
    case NodeKind::Trunc:
      if (sig != Signature::Base)
        throw SignatureViolation("primitive trunc is only available in signature t");
      break;
    case NodeKind::Square:
    case NodeKind::AbsPow:
      if (sig != Signature::Extended)
        throw SignatureViolation("sq/abspow are only available in signature ext");
      break;
    default:
      break;
  }
  for_each_child(t, [&](const Term& c) { check_signature(c, sig); });
}

inline void check_index_closed(const Term& t, bool inside_parametric) {
  if (t.kind() == NodeKind::Scale && t.coeff().has_index() && !inside_parametric)
    throw Error("coefficient uses the schema index k outside a parametric monotone body");
  if (t.kind() == NodeKind::TruncSup) {
    const SequenceSchema& s = t.schema();
    check_index_closed(t.cap(), inside_parametric);
    if (s.is_affine()) {
      check_index_closed(s.u, inside_parametric);
      check_index_closed(s.v, inside_parametric);
    } else if (s.is_finite_list()) {
      for (const Term& it : s.items) check_index_closed(it, inside_parametric);
    } else {
      if (inside_parametric)
        throw Error("parametric monotone schemas may not nest inside one another");
      check_index_closed(s.body, true);
    }
    return;
  }
  for_each_child(t, [&](const Term& c) { check_index_closed(c, inside_parametric); });
}
}  // namespace detail

// Throws SignatureViolation if t uses a node outside `sig`.
inline void validate_signature(const Term& t, Signature sig) { detail::check_signature(t, sig); }

// Throws if an index coefficient escapes every parametric monotone body, or if
// parametric bodies nest.
inline void validate_index_closed(const Term& t) { detail::check_index_closed(t, false); }

// Smallest signature admitting every node of t.
inline Signature signature_of(const Term& t) {
  bool has_one = false, has_trunc = false, has_ext = false;
  auto walk = [&](auto&& self, const Term& u) -> void {
    switch (u.kind()) {
      case NodeKind::One: has_one = true; break;
      case NodeKind::Trunc: has_trunc = true; break;
      case NodeKind::Square:
      case NodeKind::AbsPow: has_ext = true; break;
      default: break;
    }
    for_each_child(u, [&](const Term& c) { self(self, c); });
  };
  walk(walk, t);
  if (has_trunc && (has_one || has_ext))
    throw SignatureViolation("term mixes primitive trunc with unit/extended nodes; no signature admits it");
  if (has_ext) return Signature::Extended;
  if (has_one) return Signature::Unital;
  return Signature::Base;
}

// Substitutes the schema index k := j through every parametric coefficient.
// Used to materialise f_0 (and probe terms f_j) from parametric bodies.
inline Term subst_index(const Term& t, const Int& j) {
  switch (t.kind()) {
    case NodeKind::Proj:
    case NodeKind::Zero:
    case NodeKind::One:
      return t;
    case NodeKind::Add:
      return t_add(subst_index(t.left(), j), subst_index(t.right(), j));
    case NodeKind::Join:
      return t_join(subst_index(t.left(), j), subst_index(t.right(), j));
    case NodeKind::Scale: {
      Coeff c = t.coeff().has_index() ? Coeff::constant(t.coeff().eval(j)) : t.coeff();
      return t_scale(std::move(c), subst_index(t.child(), j));
    }
    case NodeKind::Trunc:
      return t_trunc(subst_index(t.child(), j));
    case NodeKind::Square:
      return t_square(subst_index(t.child(), j));
    case NodeKind::AbsPow:
      return t_abspow(t.exponent(), subst_index(t.child(), j));
    case NodeKind::TruncSup: {
      const SequenceSchema& s = t.schema();
      SequenceSchema ns;
      if (s.is_affine()) {
        ns = affine_schema(subst_index(s.u, j), subst_index(s.v, j));
      } else if (s.is_finite_list()) {
        std::vector<Term> items;
        items.reserve(s.items.size());
        for (const Term& it : s.items) items.push_back(subst_index(it, j));
        ns = monotone_schema(s.direction, s.hint, std::move(items));
      } else {
        // A nested parametric body would rebind k, but nesting is rejected by
        // validate_index_closed, so substituting straight through is safe.
        ns = monotone_schema(s.direction, s.hint, subst_index(s.body, j));
      }
      return t_trunc_sup(subst_index(t.cap(), j), std::move(ns));
    }
  }
  throw Error("unreachable node kind");
}

// First element f_0 of a schema (used by certificates and interval bounds).
inline Term schema_first(const SequenceSchema& s) {
  if (s.is_affine()) return s.v;  // f_0 = 0*u + v
  if (s.is_finite_list()) return s.items.front();
  return subst_index(s.body, Int(0));
}

}  // namespace rieszterm
