// Exact rational scalars: arbitrary-precision, always in canonical form
// (gcd-reduced, positive denominator).  Backed by boost::multiprecision.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rieszterm/errors.hpp"

namespace rieszterm {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational rat(long long n, long long d = 1) { return Rational(n, d); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Largest integer <= r.
inline Int floor_int(const Rational& r) {
  Int q = num(r) / den(r);
  if (r < 0 && q * den(r) != num(r)) --q;
  return q;
}

// Smallest integer >= r.
inline Int ceil_int(const Rational& r) {
  Int q = num(r) / den(r);
  if (r > 0 && q * den(r) != num(r)) ++q;
  return q;
}

// r^e for integer e (negative e inverts; 0^0 = 1, 0^negative is an error).
inline Rational pow_int(const Rational& r, long e) {
  if (e == 0) return Rational(1);
  bool invert = e < 0;
  unsigned long mag = invert ? static_cast<unsigned long>(-(e + 1)) + 1UL
                             : static_cast<unsigned long>(e);
  Rational p(1);
  Rational base = r;
  unsigned long k = mag;
  while (k > 0) {
    if (k & 1UL) p *= base;
    base *= base;
    k >>= 1;
  }
  if (invert) {
    if (p == 0) throw Error("division by zero: negative power of 0");
    p = Rational(1) / p;
  }
  return p;
}

// 2^e as an exact rational, any integer e.
inline Rational pow2(long e) { return pow_int(Rational(2), e); }

// --- integer k-th roots (x >= 0, k >= 1) -----------------------------------

// Largest r with r^k <= x.
inline Int iroot_floor(const Int& x, unsigned k) {
  if (x < 0) throw Error("iroot_floor: negative radicand");
  if (k == 0) throw Error("iroot_floor: zeroth root");
  if (x == 0 || x == 1 || k == 1) return x;
  // Binary search bounded by the bit length.
  unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
  Int hi = Int(1) << (bits / k + 1);
  Int lo = 0;
  while (lo < hi) {
    Int mid = (lo + hi + 1) >> 1;
    Int p = boost::multiprecision::pow(mid, k);
    if (p <= x) lo = mid; else hi = mid - 1;
  }
  return lo;
}

// Smallest r with r^k >= x.
inline Int iroot_ceil(const Int& x, unsigned k) {
  Int f = iroot_floor(x, k);
  return boost::multiprecision::pow(f, k) == x ? f : f + 1;
}

// Exact k-th root of a rational that is a perfect k-th power; nullopt-style
// via bool return.  Used to recover |tau| from stored weights 1/|tau|^p.
inline bool exact_root(const Rational& x, unsigned k, Rational& out) {
  if (x < 0) return false;
  Int rn = iroot_floor(num(x), k);
  Int rd = iroot_floor(den(x), k);
  if (boost::multiprecision::pow(rn, k) != num(x)) return false;
  if (boost::multiprecision::pow(rd, k) != den(x)) return false;
  out = Rational(rn, rd);
  return true;
}

// --- literals ----------------------------------------------------------------

// Accepted forms: "3", "-12/7", "0.25", "-1.5".  Decimals are exact.
inline Rational parse_rational(std::string_view s, std::size_t offset_for_errors = 0) {
  std::size_t i = 0;
  auto fail = [&](const std::string& m) -> Rational {
    throw ParseError(m, offset_for_errors + i);
  };
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  auto digits = [&]() -> Int {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      fail("expected digits in rational literal");
    Int v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      ++i;
    }
    return v;
  };
  Int whole = digits();
  Rational r(whole);
  if (i < s.size() && s[i] == '/') {
    ++i;
    Int d = digits();
    if (d == 0) fail("zero denominator in rational literal");
    r = Rational(whole, d);
  } else if (i < s.size() && s[i] == '.') {
    ++i;
    std::size_t start = i;
    Int frac = digits();
    std::size_t places = i - start;
    Rational scale = pow_int(Rational(10), static_cast<long>(places));
    r = Rational(whole) + Rational(frac) / scale;
  }
  if (i != s.size()) fail("trailing characters in rational literal");
  return neg ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) {
  std::string s = num(r).str();
  if (den(r) != 1) s += "/" + den(r).str();
  return s;
}

// --- dyadic helpers ------------------------------------------------------------

// True iff r's canonical denominator is a power of two.
inline bool is_dyadic(const Rational& r) {
  Int d = den(r);
  return (d & (d - 1)) == 0;
}

// For dyadic r >= 0 returns the strictly decreasing exponents z0 > z1 > ... with
// r = sum 2^{z_i} (empty for r = 0).  Throws NonDyadicWeight otherwise.
inline std::vector<long> dyadic_exponents(const Rational& r) {
  if (r < 0) throw NonDyadicWeight("negative weight is not a dyadic sum");
  if (!is_dyadic(r)) throw NonDyadicWeight("weight " + to_string(r) + " is not dyadic");
  std::vector<long> zs;
  if (r == 0) return zs;
  Int n = num(r);
  long shift = 0;
  Int d = den(r);
  while (d > 1) {
    d >>= 1;
    ++shift;
  }
  // r = n / 2^shift with n odd or shift 0; bits of n give exponents bit - shift.
  unsigned top = static_cast<unsigned>(boost::multiprecision::msb(n));
  for (long bit = static_cast<long>(top); bit >= 0; --bit)
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(bit)))
      zs.push_back(bit - shift);
  return zs;
}

}  // namespace rieszterm
