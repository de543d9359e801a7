// Exact finite-dimensional models and the identity catalog.
//
// Carriers: the rationals (dimension 1), finite powers Q^K with pointwise
// operations, and quotients of Q^K by a null set N of coordinates (two
// vectors are equal iff they agree off N; elements are represented
// canonically with zeros on N).  The weak unit of every model is the
// all-ones vector (canonicalised), and truncation is the pointwise meet
// with it.
//
// The catalog lists sixteen laws of truncated / unital lattice-ordered
// structure.  Each law is universally quantified over carrier elements;
// positivity side conditions are enforced by substituting |f| (sound and
// complete here, since every nonnegative vector is an absolute value), and
// an ordered-pair premise a <= b by substituting (|a| /\ |b|, |b|).
// Countable suprema appearing in the laws are evaluated per coordinate in
// closed form (capped affine or capped piecewise-affine ramps); sequence
// families beyond those shapes are restricted to finite families extended
// constantly, whose supremum is the finite pointwise max.
//
// Every law carries one documented syntactic mutation that breaks it; the
// mutated forms are expected to be refuted quickly by random search and
// guard against vacuous checks.
#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rieszterm/errors.hpp"
#include "rieszterm/piecewise_affine.hpp"
#include "rieszterm/random.hpp"
#include "rieszterm/rational.hpp"

namespace rieszterm {

// A finite power of the rationals, optionally quotiented by a set of null
// coordinates.  dim == 1 with no nulls is the scalar model.
struct PowerModel {
  std::size_t dim = 1;
  std::set<std::size_t> null_coords;

  static PowerModel reals() { return PowerModel{1, {}}; }
  static PowerModel power(std::size_t k) {
    if (k == 0) throw DimensionMismatch("model dimension must be positive");
    return PowerModel{k, {}};
  }
  static PowerModel quotient(std::size_t k, std::set<std::size_t> nulls) {
    if (k == 0) throw DimensionMismatch("model dimension must be positive");
    for (std::size_t c : nulls)
      if (c >= k) throw DimensionMismatch("null coordinate " + std::to_string(c) + " out of range");
    return PowerModel{k, std::move(nulls)};
  }
  bool is_null(std::size_t i) const { return null_coords.count(i) != 0; }
};

using Elem = std::vector<Rational>;

inline void require_dim(const PowerModel& m, const Elem& e) {
  if (e.size() != m.dim)
    throw DimensionMismatch("element has " + std::to_string(e.size()) + " coordinates, model has " +
                            std::to_string(m.dim));
}

// Canonical representative: zero on the null coordinates.
inline Elem canon(const PowerModel& m, Elem e) {
  require_dim(m, e);
  for (std::size_t c : m.null_coords) e[c] = 0;
  return e;
}

inline Elem m_zero(const PowerModel& m) { return Elem(m.dim, Rational(0)); }
inline Elem m_one(const PowerModel& m) { return canon(m, Elem(m.dim, Rational(1))); }

namespace detail {
template <typename F>
Elem zip(const PowerModel& m, const Elem& a, const Elem& b, F f) {
  require_dim(m, a);
  require_dim(m, b);
  Elem r(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i) r[i] = f(a[i], b[i]);
  return canon(m, std::move(r));
}
template <typename F>
Elem map(const PowerModel& m, const Elem& a, F f) {
  require_dim(m, a);
  Elem r(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i) r[i] = f(a[i]);
  return canon(m, std::move(r));
}
}  // namespace detail

inline Elem m_add(const PowerModel& m, const Elem& a, const Elem& b) {
  return detail::zip(m, a, b, [](const Rational& x, const Rational& y) { return x + y; });
}
inline Elem m_sub(const PowerModel& m, const Elem& a, const Elem& b) {
  return detail::zip(m, a, b, [](const Rational& x, const Rational& y) { return x - y; });
}
inline Elem m_neg(const PowerModel& m, const Elem& a) {
  return detail::map(m, a, [](const Rational& x) { return -x; });
}
inline Elem m_scale(const PowerModel& m, const Rational& c, const Elem& a) {
  return detail::map(m, a, [&](const Rational& x) { return c * x; });
}
inline Elem m_join(const PowerModel& m, const Elem& a, const Elem& b) {
  return detail::zip(m, a, b, [](const Rational& x, const Rational& y) { return rat_max(x, y); });
}
inline Elem m_meet(const PowerModel& m, const Elem& a, const Elem& b) {
  return detail::zip(m, a, b, [](const Rational& x, const Rational& y) { return rat_min(x, y); });
}
// Truncation: pointwise meet with the unit (min with 1 off the null set).
inline Elem m_trunc(const PowerModel& m, const Elem& a) { return m_meet(m, a, m_one(m)); }
inline Elem m_pos(const PowerModel& m, const Elem& a) { return m_join(m, a, m_zero(m)); }
inline Elem m_negpart(const PowerModel& m, const Elem& a) { return m_pos(m, m_neg(m, a)); }
inline Elem m_abs(const PowerModel& m, const Elem& a) { return m_join(m, a, m_neg(m, a)); }

inline bool m_equal(const PowerModel& m, const Elem& a, const Elem& b) {
  require_dim(m, a);
  require_dim(m, b);
  for (std::size_t i = 0; i < m.dim; ++i) {
    if (m.is_null(i)) continue;
    if (a[i] != b[i]) return false;
  }
  return true;
}
inline bool m_leq(const PowerModel& m, const Elem& a, const Elem& b) {
  require_dim(m, a);
  require_dim(m, b);
  for (std::size_t i = 0; i < m.dim; ++i) {
    if (m.is_null(i)) continue;
    if (!(a[i] <= b[i])) return false;
  }
  return true;
}

// Capped countable supremum of the affine sequence n*u + v, per coordinate.
inline Elem truncsup_model(const PowerModel& m, const Elem& cap, const Elem& u, const Elem& v) {
  require_dim(m, cap);
  require_dim(m, u);
  require_dim(m, v);
  Elem r(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i) r[i] = sup_affine_capped(u[i], v[i], cap[i]);
  return canon(m, std::move(r));
}

// Capped supremum of a finite family extended constantly: pointwise
// max over the family of the meet with the cap.
inline Elem truncsup_model(const PowerModel& m, const Elem& cap, const std::vector<Elem>& items) {
  if (items.empty()) throw Error("truncated sup of an empty family");
  require_dim(m, cap);
  Elem r = m_meet(m, items.front(), cap);
  for (std::size_t j = 1; j < items.size(); ++j) r = m_join(m, r, m_meet(m, items[j], cap));
  return r;
}

inline Elem quotient_map(const PowerModel& m, const Elem& full) { return canon(m, full); }
inline Elem section(const PowerModel& m, const Elem& q) { return canon(m, q); }

inline std::string to_string(const Elem& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ", ";
    s += to_string(e[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Identity catalog.

enum class IdentityId {
  TS1,         // tsup^g f_n = tsup^g (f_n /\ g)
  TS2,         // tsup^g f_n = (f_0 /\ g) \/ tsup^g (f_n)_{n>=1}
  TS3,         // tsup^g (f_n /\ h) <= h
  T1,          // trunc(f) = trunc(f+) - f-
  T2,          // f >= 0  =>  trunc(f) >= 0
  T3,          // f,g >= 0  =>  f /\ trunc(g) <= trunc(f) <= f
  T4P,         // f+ = tsup^{f+} n*trunc(f+)
  T5P,         // f >= 0  =>  f = tsup^f (n*f - trunc(n*f))
  W1,          // 1 /\ 0 = 0
  W2,          // f+ = tsup^{f+} n*(f+ /\ 1)
  DISTRIB,     // a /\ sup_i x_i = sup_i (a /\ x_i)
  SUMDISTRIB,  // h >= 0  =>  tsup^g (f_n + h) = ((tsup^g f_n) + h) /\ g
  TRUNCSUB,    // a,b >= 0  =>  trunc(a+b) <= trunc(a) + trunc(b)
  TRUNCMONO,   // 0 <= a <= b  =>  a - trunc(a) <= b - trunc(b)
  MEETUNIT,    // u >= 0  =>  (a+ /\ u) - a- = a /\ u
  DOUBLESUP,   // f, f_k >= 0  =>  f = tsup^f_i (i*f - tsup^{i*f}_k trunc(f_k))
};

inline const std::vector<IdentityId>& all_identities() {
  static const std::vector<IdentityId> ids = {
      IdentityId::TS1,        IdentityId::TS2,      IdentityId::TS3,       IdentityId::T1,
      IdentityId::T2,         IdentityId::T3,       IdentityId::T4P,       IdentityId::T5P,
      IdentityId::W1,         IdentityId::W2,       IdentityId::DISTRIB,   IdentityId::SUMDISTRIB,
      IdentityId::TRUNCSUB,   IdentityId::TRUNCMONO, IdentityId::MEETUNIT, IdentityId::DOUBLESUP,
  };
  return ids;
}

inline const char* identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::TS1: return "TS1";
    case IdentityId::TS2: return "TS2";
    case IdentityId::TS3: return "TS3";
    case IdentityId::T1: return "T1";
    case IdentityId::T2: return "T2";
    case IdentityId::T3: return "T3";
    case IdentityId::T4P: return "T4P";
    case IdentityId::T5P: return "T5P";
    case IdentityId::W1: return "W1";
    case IdentityId::W2: return "W2";
    case IdentityId::DISTRIB: return "DISTRIB";
    case IdentityId::SUMDISTRIB: return "SUMDISTRIB";
    case IdentityId::TRUNCSUB: return "TRUNCSUB";
    case IdentityId::TRUNCMONO: return "TRUNCMONO";
    case IdentityId::MEETUNIT: return "MEETUNIT";
    case IdentityId::DOUBLESUP: return "DOUBLESUP";
  }
  throw Error("unknown identity id");
}

inline IdentityId identity_from_name(const std::string& name) {
  for (IdentityId id : all_identities())
    if (name == identity_name(id)) return id;
  throw Error("unknown identity name: " + name);
}

struct CheckResult {
  bool holds = true;
  std::size_t counterexample_index = 0;  // sample index, valid when !holds
  std::string counterexample;            // human-readable instantiation
};

namespace detail {

inline Rational sc_trunc(const Rational& x) { return rat_min(x, Rational(1)); }
inline Rational sc_pos(const Rational& x) { return rat_max(x, Rational(0)); }

// sup over integer n >= 0 of min((n*slope - shift)^+, cap), slope,shift >= 0.
// Realised as a two-segment capped piecewise-affine ramp.
inline Rational ramp_sup_capped(const Rational& slope, const Rational& shift, const Rational& cap) {
  std::vector<PwaSegment> segs;
  if (slope == 0) {
    segs.push_back({Rational(0), Rational(0), Rational(0)});
  } else if (shift == 0) {
    segs.push_back({Rational(0), slope, Rational(0)});
  } else {
    segs.push_back({Rational(0), Rational(0), Rational(0)});
    segs.push_back({shift / slope, slope, -shift});
  }
  return pwa_sup_capped(PiecewiseAffine(std::move(segs)), cap);
}

inline Elem random_element(std::mt19937_64& rng, const PowerModel& m) {
  Elem e(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i) e[i] = random_rational_mixed(rng);
  return canon(m, std::move(e));
}

inline std::size_t identity_sample_arity(IdentityId id) {
  switch (id) {
    case IdentityId::TS1: return 4;   // g, f0..f2
    case IdentityId::TS2: return 4;   // g, f0..f2
    case IdentityId::TS3: return 5;   // g, h, f0..f2
    case IdentityId::T1: return 1;
    case IdentityId::T2: return 1;
    case IdentityId::T3: return 2;
    case IdentityId::T4P: return 1;
    case IdentityId::T5P: return 1;
    case IdentityId::W1: return 0;
    case IdentityId::W2: return 1;
    case IdentityId::DISTRIB: return 4;    // a, x0..x2
    case IdentityId::SUMDISTRIB: return 5;  // g, h, f0..f2
    case IdentityId::TRUNCSUB: return 2;
    case IdentityId::TRUNCMONO: return 2;
    case IdentityId::MEETUNIT: return 2;
    case IdentityId::DOUBLESUP: return 4;  // f, f0..f2
  }
  throw Error("unknown identity id");
}

// Evaluates one instance of the identity (or its documented mutation) on the
// sampled elements; true means the law held on this instantiation.
inline bool identity_instance(const PowerModel& m, IdentityId id, const std::vector<Elem>& e,
                              bool mutated) {
  switch (id) {
    case IdentityId::TS1: {
      // tsup^g f_n = tsup^g (f_n /\ g).  Mutation: the inner meet with the
      // cap becomes a join with the cap.
      const Elem& g = e[0];
      std::vector<Elem> fam(e.begin() + 1, e.end());
      std::vector<Elem> adj;
      for (const Elem& f : fam)
        adj.push_back(mutated ? m_join(m, f, g) : m_meet(m, f, g));
      return m_equal(m, truncsup_model(m, g, fam), truncsup_model(m, g, adj));
    }
    case IdentityId::TS2: {
      // tsup^g f_n = (f_0 /\ g) \/ tsup^g (f_n)_{n>=1}.  Mutation: the
      // peeled-off first element loses its meet with the cap.
      const Elem& g = e[0];
      std::vector<Elem> fam(e.begin() + 1, e.end());
      std::vector<Elem> rest(fam.begin() + 1, fam.end());
      Elem head = mutated ? fam[0] : m_meet(m, fam[0], g);
      return m_equal(m, truncsup_model(m, g, fam),
                     m_join(m, head, truncsup_model(m, g, rest)));
    }
    case IdentityId::TS3: {
      // tsup^g (f_n /\ h) <= h.  Mutation: h is dropped from the body.
      const Elem& g = e[0];
      const Elem& h = e[1];
      std::vector<Elem> fam;
      for (std::size_t i = 2; i < e.size(); ++i)
        fam.push_back(mutated ? e[i] : m_meet(m, e[i], h));
      return m_leq(m, truncsup_model(m, g, fam), h);
    }
    case IdentityId::T1: {
      // trunc(f) = trunc(f+) - f-.  Mutation: the negative part is truncated
      // too.
      const Elem& f = e[0];
      Elem rhs = m_sub(m, m_trunc(m, m_pos(m, f)),
                       mutated ? m_trunc(m, m_negpart(m, f)) : m_negpart(m, f));
      return m_equal(m, m_trunc(m, f), rhs);
    }
    case IdentityId::T2: {
      // trunc(|f|) >= 0.  Mutation: the positivity substitution is dropped.
      Elem f = mutated ? e[0] : m_abs(m, e[0]);
      return m_leq(m, m_zero(m), m_trunc(m, f));
    }
    case IdentityId::T3: {
      // |f| /\ trunc(|g|) <= trunc(|f|) <= |f|.  Mutation: the meet on the
      // left becomes a join.
      Elem f = m_abs(m, e[0]);
      Elem g = m_abs(m, e[1]);
      Elem left = mutated ? m_join(m, f, m_trunc(m, g)) : m_meet(m, f, m_trunc(m, g));
      return m_leq(m, left, m_trunc(m, f)) && m_leq(m, m_trunc(m, f), f);
    }
    case IdentityId::T4P: {
      // f+ = tsup^{f+} n*trunc(f+), per coordinate a capped affine sup.
      // Mutation: the cap f+ is replaced by trunc(f+).
      Elem fp = m_pos(m, e[0]);
      Elem r(m.dim, Rational(0));
      for (std::size_t i = 0; i < m.dim; ++i) {
        Rational u = sc_trunc(fp[i]);
        Rational cap = mutated ? sc_trunc(fp[i]) : fp[i];
        r[i] = sup_affine_capped(u, Rational(0), cap);
      }
      return m_equal(m, fp, canon(m, std::move(r)));
    }
    case IdentityId::T5P: {
      // |f| = tsup^{|f|} (n|f| - trunc(n|f|)); the body is the ramp
      // (n*a - 1)^+ per coordinate.  Mutation: the cap is truncated.
      Elem f = m_abs(m, e[0]);
      Elem r(m.dim, Rational(0));
      for (std::size_t i = 0; i < m.dim; ++i) {
        Rational cap = mutated ? sc_trunc(f[i]) : f[i];
        r[i] = ramp_sup_capped(f[i], Rational(1), cap);
      }
      return m_equal(m, f, canon(m, std::move(r)));
    }
    case IdentityId::W1: {
      // 1 /\ 0 = 0.  Mutation: 1 \/ 0 = 0.
      Elem probe = mutated ? m_join(m, m_one(m), m_zero(m)) : m_meet(m, m_one(m), m_zero(m));
      return m_equal(m, probe, m_zero(m));
    }
    case IdentityId::W2: {
      // f+ = tsup^{f+} n*(f+ /\ 1).  Mutation: the cap f+ is replaced by
      // f+ /\ 1.
      Elem fp = m_pos(m, e[0]);
      Elem unit = m_one(m);
      Elem r(m.dim, Rational(0));
      for (std::size_t i = 0; i < m.dim; ++i) {
        Rational u = rat_min(fp[i], unit[i]);
        Rational cap = mutated ? rat_min(fp[i], unit[i]) : fp[i];
        r[i] = sup_affine_capped(u, Rational(0), cap);
      }
      return m_equal(m, fp, canon(m, std::move(r)));
    }
    case IdentityId::DISTRIB: {
      // a /\ sup_i x_i = sup_i (a /\ x_i).  Mutation: the meets inside the
      // family become joins.
      const Elem& a = e[0];
      Elem sup = e[1];
      for (std::size_t i = 2; i < e.size(); ++i) sup = m_join(m, sup, e[i]);
      Elem rhs = mutated ? m_join(m, a, e[1]) : m_meet(m, a, e[1]);
      for (std::size_t i = 2; i < e.size(); ++i) {
        Elem part = mutated ? m_join(m, a, e[i]) : m_meet(m, a, e[i]);
        rhs = m_join(m, rhs, part);
      }
      return m_equal(m, m_meet(m, a, sup), rhs);
    }
    case IdentityId::SUMDISTRIB: {
      // tsup^g (f_n + |h|) = ((tsup^g f_n) + |h|) /\ g.  Mutation: the final
      // meet with the cap is dropped.
      const Elem& g = e[0];
      Elem h = m_abs(m, e[1]);
      std::vector<Elem> fam(e.begin() + 2, e.end());
      std::vector<Elem> shifted;
      for (const Elem& f : fam) shifted.push_back(m_add(m, f, h));
      Elem lhs = truncsup_model(m, g, shifted);
      Elem rhs = m_add(m, truncsup_model(m, g, fam), h);
      if (!mutated) rhs = m_meet(m, rhs, g);
      return m_equal(m, lhs, rhs);
    }
    case IdentityId::TRUNCSUB: {
      // trunc(|a| + |b|) <= trunc(|a|) + trunc(|b|).  Mutation: the
      // inequality is reversed.
      Elem a = m_abs(m, e[0]);
      Elem b = m_abs(m, e[1]);
      Elem lhs = m_trunc(m, m_add(m, a, b));
      Elem rhs = m_add(m, m_trunc(m, a), m_trunc(m, b));
      return mutated ? m_leq(m, rhs, lhs) : m_leq(m, lhs, rhs);
    }
    case IdentityId::TRUNCMONO: {
      // With a := |a| /\ |b| <= b := |b|:  a - trunc(a) <= b - trunc(b).
      // Mutation: the two sides are swapped.
      Elem b = m_abs(m, e[1]);
      Elem a = m_meet(m, m_abs(m, e[0]), b);
      Elem la = m_sub(m, a, m_trunc(m, a));
      Elem lb = m_sub(m, b, m_trunc(m, b));
      return mutated ? m_leq(m, lb, la) : m_leq(m, la, lb);
    }
    case IdentityId::MEETUNIT: {
      // (a+ /\ |u|) - a- = a /\ |u|.  Mutation: the negative part is added
      // instead of subtracted.
      const Elem& a = e[0];
      Elem u = m_abs(m, e[1]);
      Elem core = m_meet(m, m_pos(m, a), u);
      Elem lhs = mutated ? m_add(m, core, m_negpart(m, a)) : m_sub(m, core, m_negpart(m, a));
      return m_equal(m, lhs, m_meet(m, a, u));
    }
    case IdentityId::DOUBLESUP: {
      // |f| = tsup^{|f|}_i (i|f| - tsup^{i|f|}_k trunc(|f_k|)).  The inner
      // finite-family sup collapses per coordinate to min(max_k ., i*a), so
      // the body is the ramp (i*a - m)^+ with m = max_k trunc(|f_k|).
      // Mutation: the outer cap |f| is truncated.
      Elem f = m_abs(m, e[0]);
      Elem mmax = m_trunc(m, m_abs(m, e[1]));
      for (std::size_t i = 2; i < e.size(); ++i)
        mmax = m_join(m, mmax, m_trunc(m, m_abs(m, e[i])));
      Elem r(m.dim, Rational(0));
      for (std::size_t i = 0; i < m.dim; ++i) {
        Rational cap = mutated ? sc_trunc(f[i]) : f[i];
        r[i] = ramp_sup_capped(f[i], mmax[i], cap);
      }
      return m_equal(m, f, canon(m, std::move(r)));
    }
  }
  throw Error("unknown identity id");
}

}  // namespace detail

// Checks the identity (or, with mutated=true, its documented broken variant)
// on `samples` seeded pseudo-random instantiations.  Evaluation is exact;
// the first failing instantiation is reported.  The random stream depends
// only on (seed, id), so mutant runs replay the same instantiations.
inline CheckResult check_identity(const PowerModel& m, IdentityId id, std::size_t samples,
                                  std::uint64_t seed, bool mutated = false) {
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(id) + 1)));
  std::size_t arity = detail::identity_sample_arity(id);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Elem> elems;
    elems.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i) elems.push_back(detail::random_element(rng, m));
    if (!detail::identity_instance(m, id, elems, mutated)) {
      CheckResult r;
      r.holds = false;
      r.counterexample_index = s;
      std::string desc;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) desc += " ";
        desc += "e" + std::to_string(i) + "=" + to_string(elems[i]);
      }
      if (elems.empty()) desc = "(no quantified elements)";
      r.counterexample = desc;
      return r;
    }
  }
  return CheckResult{};
}

}  // namespace rieszterm
