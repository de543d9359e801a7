// Witness construction: when an operation admits no linear bound, exhibit a
// discrete measure space on which it provably destroys p-integrability.
//
// Stage n looks for a point v^n with
//   arbitrary-measure mode:  |tau(v^n)| >          sum_{j<n} r_n |v^n_j|
//   finite-measure mode:     |tau(v^n)| >  s_n  +  sum_{j<n} r_n |v^n_j|
// where r_n >= 2^{n/p} and s_n >= 2^{(n+1)/p} are rational upper bounds
// (exact powers when the exponent is an integer, else ceilings on a dyadic
// grid -- rounding up keeps every inequality in the argument valid).  The
// atom A_n then gets weight mu(A_n) = 1/|tau(v^n)|^p: the image integral
// collects 1 per atom (so it grows without bound with n), while each source
// coordinate i collects a finite prefix M_i plus a tail dominated by
// sum 2^{-n} <= 2.  In finite mode the weights additionally satisfy
// mu(A_n) < 2^{-(n+1)}, so they embed into a finite total measure.
//
// For fractional p the powers |.|^p are irrational; all quantities are then
// tracked through adaptive rational enclosures, and atom weights are chosen
// so that each image term still lies in [4/5, 1] (provably above 1/2 even
// through the verifier's own enclosure slack).
//
// partitionable_atoms / conditionally_partitionable_atoms realise lists of
// dyadic weights inside the two concrete atom models (exponents z in the
// unrestricted model with weight 2^z; depths m >= n in the conditional model
// with weight 2^-m and per-row budget below 2^-(n-1)).
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rieszterm/eval.hpp"
#include "rieszterm/interval.hpp"
#include "rieszterm/term.hpp"

namespace rieszterm {

enum class WitnessMode { Arbitrary, Finite };

struct SearchConfig {
  unsigned random_directions = 8;  // seeded random rational directions per stage
  Rational ladder_base = Rational(2);
  // Magnitudes base^s, s = 0..ladder_size.  Stage n of a p-witness typically
  // needs magnitudes near 2^{n/p}, so the ladder must out-reach the deepest
  // stage; the budget is the overall cap on probed points.
  unsigned ladder_size = 2048;
  unsigned probe_budget = 16384;
};

struct WitnessConfig {
  Rational p = Rational(1);  // integrability exponent, >= 1
  WitnessMode mode = WitnessMode::Arbitrary;
  std::size_t count = 0;  // number of stages N
  std::uint64_t seed = 0;
  SearchConfig search;

  void validate() const {
    if (p < 1) throw WitnessError("exponent p must be >= 1");
    if (search.ladder_base <= 1) throw WitnessError("ladder base must exceed 1");
  }
};

// An evaluable operation Q^m -> Q with declared arity m.
struct RealOperation {
  std::size_t arity = 0;
  std::function<Rational(const std::vector<Rational>&)> fn;

  Rational operator()(const std::vector<Rational>& v) const { return fn(v); }
};

inline RealOperation term_operation(const Term& t) {
  RealOperation op;
  op.arity = term_arity(t);
  op.fn = [t](const std::vector<Rational>& v) {
    Point x;
    for (std::size_t i = 0; i < v.size(); ++i) x[static_cast<VarIndex>(i)] = v[i];
    return eval(t, x);
  };
  return op;
}

struct Violation {
  std::vector<Rational> point;
  Rational value;  // tau(point)
};

// --- rational power helpers ------------------------------------------------------

namespace detail {

// Smallest grid rational >= 2^(a/b), a >= 0, b >= 1.
inline Rational pow2_upper(const Int& a, const Int& b, unsigned grid_bits = 32) {
  if (b == 1) return pow_int(Rational(2), static_cast<long>(a));
  unsigned bu = static_cast<unsigned>(b);
  Int d = Int(1) << grid_bits;
  Int target = boost::multiprecision::pow(Int(2), static_cast<unsigned>(a)) *
               boost::multiprecision::pow(d, bu);
  return Rational(iroot_ceil(target, bu), d);
}

// Rational enclosure of x^(a/b) for x >= 0.  Degenerate (exact) when b == 1.
inline Interval pow_enclosure(const Rational& x, unsigned a, unsigned b,
                              unsigned grid_bits = 64) {
  if (x < 0) throw Error("pow_enclosure: negative base");
  Rational xa = pow_int(x, static_cast<long>(a));
  if (b == 1) return Interval(xa, xa);
  Int P = num(xa), Q = den(xa);
  Int D = Int(1) << grid_bits;
  Int Db = boost::multiprecision::pow(D, b);
  Int lo_m = iroot_floor(P * Db / Q, b);
  Int hi_m = iroot_ceil((P * Db + Q - 1) / Q, b);
  return Interval(Rational(lo_m, D), Rational(hi_m, D));
}

// Enclosure of x^p for rational p >= 0, tightened until hi <= ratio_cap * lo
// (or x = 0).  Degenerate for integer p.
inline Interval pow_enclosure_tight(const Rational& x, const Rational& p,
                                    const Rational& ratio_cap = Rational(3, 2)) {
  unsigned a = static_cast<unsigned>(num(p));
  unsigned b = static_cast<unsigned>(den(p));
  if (x == 0) return Interval(Rational(0), Rational(0));
  for (unsigned bits = 64; bits <= 512; bits += 64) {
    Interval e = pow_enclosure(x, a, b, bits);
    if (e.lo > 0 && e.hi <= ratio_cap * e.lo) return e;
  }
  throw WitnessError("power enclosure failed to tighten for " + to_string(x) + "^" +
                     to_string(p));
}

}  // namespace detail

// --- violation search --------------------------------------------------------------

// First point (in a deterministic probe order) with
//   |op(v)| > k + sum_j lambda_j |v_j|         (exact strict comparison).
// Probes: the zero point; coordinate rays +-base^s e_i; then seeded random
// rational directions scaled along the same magnitude ladder.  Returns
// nullopt when the probe budget is exhausted.
inline std::optional<Violation> find_violation_against(
    const RealOperation& op, const Rational& k, const std::vector<Rational>& lambda,
    const SearchConfig& search, std::uint64_t seed) {
  unsigned long probes = 0;
  auto exceeded = [&]() { return probes >= search.probe_budget; };
  auto try_point = [&](const std::vector<Rational>& v) -> std::optional<Violation> {
    ++probes;
    Rational tau = op(v);
    Rational bound = k;
    for (std::size_t j = 0; j < v.size() && j < lambda.size(); ++j)
      bound += lambda[j] * rat_abs(v[j]);
    if (rat_abs(tau) > bound) return Violation{v, tau};
    return std::nullopt;
  };

  std::vector<Rational> v(op.arity, Rational(0));
  if (auto hit = try_point(v)) return hit;

  Rational t(1);  // base^s, maintained incrementally across rungs
  for (unsigned s = 0; s <= search.ladder_size && !exceeded(); ++s, t *= search.ladder_base) {
    for (std::size_t i = 0; i < op.arity && !exceeded(); ++i) {
      for (int sign : {+1, -1}) {
        std::vector<Rational> ray(op.arity, Rational(0));
        ray[i] = sign > 0 ? t : Rational(-t);
        if (auto hit = try_point(ray)) return hit;
        if (exceeded()) break;
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> numd(-1000, 1000);
  std::uniform_int_distribution<long> dend(1, 1000);
  for (unsigned d = 0; d < search.random_directions && !exceeded(); ++d) {
    std::vector<Rational> dir(op.arity);
    bool nonzero = false;
    for (std::size_t i = 0; i < op.arity; ++i) {
      dir[i] = Rational(numd(rng), dend(rng));
      nonzero = nonzero || dir[i] != 0;
    }
    if (!nonzero) continue;
    Rational td(1);
    for (unsigned s = 0; s <= search.ladder_size && !exceeded(); ++s, td *= search.ladder_base) {
      std::vector<Rational> pt(op.arity);
      for (std::size_t i = 0; i < op.arity; ++i) pt[i] = td * dir[i];
      if (auto hit = try_point(pt)) return hit;
    }
  }
  return std::nullopt;
}

// Stage-n violation search with the bound dictated by the mode (see header
// comment).  Coordinates j >= n carry no lambda weight.
inline std::optional<Violation> find_violation(const RealOperation& op, std::size_t n,
                                               const WitnessConfig& cfg) {
  cfg.validate();
  Int pa = num(cfg.p), pb = den(cfg.p);
  // r_n >= 2^{n/p} = 2^{n*pb/pa}
  Rational r = detail::pow2_upper(Int(static_cast<unsigned long>(n)) * pb, pa);
  std::vector<Rational> lambda(std::min<std::size_t>(n, op.arity), r);
  Rational k(0);
  if (cfg.mode == WitnessMode::Finite)
    k = detail::pow2_upper(Int(static_cast<unsigned long>(n + 1)) * pb, pa);
  std::uint64_t stage_seed = cfg.seed ^ (0x9e3779b97f4a7c15ULL * (n + 1));
  return find_violation_against(op, k, lambda, cfg.search, stage_seed);
}

// --- witness assembly ---------------------------------------------------------------

struct ViolationWitness {
  Rational p;
  WitnessMode mode = WitnessMode::Arbitrary;
  std::size_t arity = 0;
  std::vector<std::vector<Rational>> points;  // stage n -> v^n (arity coords)
  std::vector<Rational> taus;                 // stage n -> tau(v^n)
  std::vector<Rational> weights;              // stage n -> mu(A_n)

  std::size_t count() const { return points.size(); }
};

// Runs all N stages and assigns atom weights.  Throws WitnessError when some
// stage exhausts its probe budget (the search is inconclusive, not a proof).
inline ViolationWitness build_witness(const RealOperation& op, const WitnessConfig& cfg) {
  cfg.validate();
  ViolationWitness w;
  w.p = cfg.p;
  w.mode = cfg.mode;
  w.arity = op.arity;
  for (std::size_t n = 0; n < cfg.count; ++n) {
    auto hit = find_violation(op, n, cfg);
    if (!hit)
      throw WitnessError("stage " + std::to_string(n) +
                         ": probe budget exhausted without a violating point");
    Rational atau = rat_abs(hit->value);
    Rational weight;
    if (is_integer(cfg.p)) {
      weight = Rational(1) / pow_int(atau, static_cast<long>(num(cfg.p)));
    } else {
      // 1/upper(|tau|^p), tight enough that weight * |tau|^p ∈ [4/5, 1]; the
      // margin leaves room for the verifier's own enclosure slack, so the
      // default N/2 image threshold stays provable.
      Interval e = detail::pow_enclosure_tight(atau, cfg.p, Rational(5, 4));
      weight = Rational(1) / e.hi;
    }
    w.points.push_back(std::move(hit->point));
    w.taus.push_back(hit->value);
    w.weights.push_back(std::move(weight));
  }
  return w;
}

// --- verification --------------------------------------------------------------------

struct WitnessReport {
  Interval image_sum;  // enclosure; degenerate (exact) for integer p
  Rational threshold;
  struct Source {
    VarIndex i;
    Interval sum;    // enclosure of sum_n |v^n_i|^p mu(A_n)
    Rational bound;  // exhibited bound M_i + sum_{n>i, v!=0} 2^{-n}
    bool within;
  };
  std::vector<Source> sources;
  bool diverges = false;
};

// Checks the divergence argument on the recorded atoms: DIVERGES (true) when
// the image partial sum provably reaches the threshold while every source
// partial sum provably stays within its exhibited bound.  The default
// threshold is N/2 (each image term is 1 for integer p, >= 1/2 otherwise).
inline WitnessReport verify_witness(const ViolationWitness& w,
                                    std::optional<Rational> threshold = std::nullopt) {
  const std::size_t N = w.count();
  WitnessReport rep;
  rep.threshold = threshold ? *threshold : Rational(static_cast<unsigned long>(N)) / 2;

  auto term_enclosure = [&](const Rational& base, std::size_t n) -> Interval {
    // |base|^p * mu(A_n)
    Rational ab = rat_abs(base);
    if (is_integer(w.p)) {
      Rational v = pow_int(ab, static_cast<long>(num(w.p))) * w.weights[n];
      return Interval(v, v);
    }
    if (ab == 0) return Interval(Rational(0), Rational(0));
    Interval e = detail::pow_enclosure_tight(ab, w.p);
    return Interval(e.lo * w.weights[n], e.hi * w.weights[n]);
  };

  Interval image(Rational(0), Rational(0));
  for (std::size_t n = 0; n < N; ++n) image = iv_add(image, term_enclosure(w.taus[n], n));
  rep.image_sum = image;

  bool sources_ok = true;
  for (std::size_t i = 0; i < w.arity; ++i) {
    WitnessReport::Source row;
    row.i = static_cast<VarIndex>(i);
    Interval sum(Rational(0), Rational(0));
    Rational bound(0);
    bool within = true;
    for (std::size_t n = 0; n < N; ++n) {
      const Rational& vi = w.points[n][i];
      Interval tn = term_enclosure(vi, n);
      // The chain guarantees |v_i|^p mu(A_n) < 2^-n for tail stages; when the
      // default enclosure is too loose to prove it, tighten before judging.
      if (n > i && vi != 0 && !is_integer(w.p) && !(tn.hi <= pow2(-static_cast<long>(n)))) {
        try {
          Interval e = detail::pow_enclosure_tight(rat_abs(vi), w.p, Rational(1) + pow2(-40));
          tn = Interval(e.lo * w.weights[n], e.hi * w.weights[n]);
        } catch (const WitnessError&) {
          // keep the loose enclosure; the check below then reports not-within
        }
      }
      sum = iv_add(sum, tn);
      if (n <= i) {
        bound += tn.hi;  // finite prefix contribution M_i
      } else if (vi != 0) {
        bound += pow2(-static_cast<long>(n));
        if (!(tn.hi <= pow2(-static_cast<long>(n)))) within = false;
      }
    }
    row.sum = sum;
    row.bound = bound;
    row.within = within && sum.hi <= bound;
    sources_ok = sources_ok && row.within;
    rep.sources.push_back(std::move(row));
  }

  rep.diverges = N > 0 && image.lo >= rep.threshold && sources_ok;
  return rep;
}

// --- frozen file format ----------------------------------------------------------------
//
//   p=<rational> mode=<A|F> N=<int>
//   atom <n> weight <rational>
//   val <i> <n> <rational>
//
// One atom line per stage, one val line per (coordinate, stage) pair;
// coordinate-major, ascending.  tau is recoverable from the weight as the
// exact p-th root of 1/weight, which is why re-verification from a file
// requires integer p (in-memory verification does not).

inline std::string write_witness(const ViolationWitness& w) {
  std::string out = "p=" + to_string(w.p) +
                    " mode=" + (w.mode == WitnessMode::Arbitrary ? "A" : "F") +
                    " N=" + std::to_string(w.count()) + "\n";
  for (std::size_t n = 0; n < w.count(); ++n)
    out += "atom " + std::to_string(n) + " weight " + to_string(w.weights[n]) + "\n";
  for (std::size_t i = 0; i < w.arity; ++i)
    for (std::size_t n = 0; n < w.count(); ++n)
      out += "val " + std::to_string(i) + " " + std::to_string(n) + " " +
             to_string(w.points[n][i]) + "\n";
  return out;
}

inline ViolationWitness read_witness(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw MalformedWitnessFile("empty witness file");
  ViolationWitness w;
  std::size_t N = 0;
  {
    std::istringstream hs(header);
    std::string field;
    bool saw_p = false, saw_mode = false, saw_n = false;
    while (hs >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos)
        throw MalformedWitnessFile("malformed header field '" + field + "'");
      std::string key = field.substr(0, eq), val = field.substr(eq + 1);
      if (key == "p") {
        w.p = parse_rational(val);
        saw_p = true;
      } else if (key == "mode") {
        if (val == "A")
          w.mode = WitnessMode::Arbitrary;
        else if (val == "F")
          w.mode = WitnessMode::Finite;
        else
          throw MalformedWitnessFile("mode must be A or F");
        saw_mode = true;
      } else if (key == "N") {
        N = std::stoul(val);
        saw_n = true;
      } else {
        throw MalformedWitnessFile("unknown header field '" + key + "'");
      }
    }
    if (!saw_p || !saw_mode || !saw_n)
      throw MalformedWitnessFile("header needs p=, mode= and N=");
  }
  if (!is_integer(w.p))
    throw MalformedWitnessFile(
        "witness files with fractional p cannot be re-verified (tau is not recoverable)");

  std::vector<std::optional<Rational>> weights(N);
  std::map<std::pair<std::size_t, std::size_t>, Rational> vals;
  std::size_t max_coord = 0;
  bool any_val = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "atom") {
      std::size_t n;
      std::string kw, wtext;
      if (!(ls >> n >> kw >> wtext) || kw != "weight" || n >= N)
        throw MalformedWitnessFile("malformed atom line: " + line);
      weights[n] = parse_rational(wtext);
    } else if (kind == "val") {
      std::size_t i, n;
      std::string vtext;
      if (!(ls >> i >> n >> vtext) || n >= N)
        throw MalformedWitnessFile("malformed val line: " + line);
      vals[{i, n}] = parse_rational(vtext);
      max_coord = std::max(max_coord, i);
      any_val = true;
    } else {
      throw MalformedWitnessFile("unknown line kind '" + kind + "'");
    }
  }

  w.arity = any_val ? max_coord + 1 : 0;
  long pe = static_cast<long>(num(w.p));
  for (std::size_t n = 0; n < N; ++n) {
    if (!weights[n]) throw MalformedWitnessFile("missing atom " + std::to_string(n));
    if (*weights[n] <= 0) throw MalformedWitnessFile("atom weights must be positive");
    w.weights.push_back(*weights[n]);
    Rational tau_p = Rational(1) / *weights[n];
    Rational tau;
    if (!exact_root(tau_p, static_cast<unsigned>(pe), tau))
      throw MalformedWitnessFile("atom " + std::to_string(n) +
                                 ": 1/weight is not an exact p-th power");
    w.taus.push_back(tau);
    std::vector<Rational> row(w.arity, Rational(0));
    for (std::size_t i = 0; i < w.arity; ++i) {
      auto it = vals.find({i, n});
      if (it == vals.end())
        throw MalformedWitnessFile("missing val " + std::to_string(i) + " " +
                                   std::to_string(n));
      row[i] = it->second;
    }
    w.points.push_back(std::move(row));
  }
  return w;
}

// --- concrete atom models for dyadic weight lists ---------------------------------------

struct ModelAtom {
  std::size_t row;   // n
  long depth;        // exponent: weight = 2^depth (unrestricted model) or
                     // 2^-depth (conditional model)
  Rational weight;
};

// Realises a_n = sum_{z in K_n} 2^z with disjoint atoms (n, z); any dyadic
// a_n >= 0 works since z ranges over all integers.
inline std::vector<ModelAtom> partitionable_atoms(const std::vector<Rational>& a) {
  std::vector<ModelAtom> out;
  for (std::size_t n = 0; n < a.size(); ++n)
    for (long z : dyadic_exponents(a[n]))  // throws NonDyadicWeight
      out.push_back({n, z, pow2(z)});
  return out;
}

// Realises a_n = sum_{m in K_n} 2^-m with K_n a finite subset of {m >= n}.
// Feasible exactly when the dyadic expansion of a_n uses exponents <= -n;
// in particular a_n must stay below the row budget 2^-(n-1) (equality needs
// the infinite tail and is rejected).
inline std::vector<ModelAtom> conditionally_partitionable_atoms(const std::vector<Rational>& a) {
  std::vector<ModelAtom> out;
  for (std::size_t n = 0; n < a.size(); ++n) {
    for (long z : dyadic_exponents(a[n])) {
      long m = -z;
      if (m < static_cast<long>(n))
        throw WeightTooLarge("row " + std::to_string(n) + ": weight " + to_string(a[n]) +
                             " needs depth " + std::to_string(m) +
                             " < n (exceeds the row budget 2^-(n-1) = " +
                             to_string(pow2(1 - static_cast<long>(n))) + ")");
      out.push_back({n, m, pow2(z)});
    }
  }
  return out;
}

// Un-normalised measure of row n of the conditional model: sum_{m>=n} 2^-m.
inline Rational conditional_model_row_weight(std::size_t n) {
  return pow2(1 - static_cast<long>(n));
}

// Un-normalised total over rows n < K: sum = 4 - 2^{-(K-1)} * 2.
inline Rational conditional_model_total_prefix(std::size_t K) {
  Rational s(0);
  for (std::size_t n = 0; n < K; ++n) s += conditional_model_row_weight(n);
  return s;
}

// Normalisation constant turning the conditional model into a probability
// space (its full total is 4).
inline Rational conditional_model_normalizer() { return Rational(1, 4); }

}  // namespace rieszterm
