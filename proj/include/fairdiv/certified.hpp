#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "fairdiv/errors.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

/// A two-sided rational enclosure of a real value. Sums, differences and
/// products of endpoints stay exact; only square roots widen the interval,
/// by at most 2^-bits of the scaled radicand.
struct CertifiedReal {
  Rational lower;
  Rational upper;
  unsigned bits = 0;

  bool is_exact() const { return lower == upper; }

  static CertifiedReal exact(Rational value, unsigned bits = 0) {
    return {value, value, bits};
  }
};

inline std::string format_certified(const CertifiedReal& cr) {
  return "[" + format_rational(cr.lower) + ", " + format_rational(cr.upper) + "] @" +
         std::to_string(cr.bits);
}

/// sqrt(x) as an exact rational when x is a perfect square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  BigInt p = numerator(x), q = denominator(x);
  BigInt rp = boost::multiprecision::sqrt(p);
  BigInt rq = boost::multiprecision::sqrt(q);
  if (rp * rp == p && rq * rq == q) return Rational(rp, rq);
  return std::nullopt;
}

/// Rational lower bound on sqrt(x): floor(sqrt(x * 4^bits)) / 2^bits.
inline Rational sqrt_lower(const Rational& x, unsigned bits) {
  if (x < 0) throw DomainError("square root of a negative value");
  if (x == 0) return 0;
  BigInt p = numerator(x), q = denominator(x);
  BigInt scaled = (p * q) << (2 * bits);  // sqrt(p/q) = sqrt(p*q) / q
  BigInt root = boost::multiprecision::sqrt(scaled);
  return Rational(root, q << bits);
}

/// Rational upper bound on sqrt(x); coincides with the lower bound when the
/// scaled radicand is a perfect square.
inline Rational sqrt_upper(const Rational& x, unsigned bits) {
  if (x < 0) throw DomainError("square root of a negative value");
  if (x == 0) return 0;
  BigInt p = numerator(x), q = denominator(x);
  BigInt scaled = (p * q) << (2 * bits);
  BigInt root = boost::multiprecision::sqrt(scaled);
  if (root * root != scaled) ++root;
  return Rational(root, q << bits);
}

inline CertifiedReal certified_sqrt(const Rational& x, unsigned bits) {
  if (auto r = exact_sqrt(x)) return CertifiedReal::exact(*r, bits);
  return {sqrt_lower(x, bits), sqrt_upper(x, bits), bits};
}

inline CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
  return {a.lower + b.lower, a.upper + b.upper, std::min(a.bits, b.bits)};
}

inline CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
  return {a.lower - b.upper, a.upper - b.lower, std::min(a.bits, b.bits)};
}

/// Scale by a (possibly negative) exact rational.
inline CertifiedReal scale(const CertifiedReal& a, const Rational& c) {
  if (c >= 0) return {a.lower * c, a.upper * c, a.bits};
  return {a.upper * c, a.lower * c, a.bits};
}

inline CertifiedReal square(const CertifiedReal& a) {
  Rational lo2 = a.lower * a.lower, hi2 = a.upper * a.upper;
  if (a.lower >= 0) return {lo2, hi2, a.bits};
  if (a.upper <= 0) return {hi2, lo2, a.bits};
  return {Rational(0), std::max(lo2, hi2), a.bits};
}

/// sqrt over an interval of non-negative values (lower end clamped at 0).
inline CertifiedReal certified_sqrt(const CertifiedReal& a, unsigned bits) {
  Rational lo = a.lower < 0 ? Rational(0) : a.lower;
  if (a.upper < 0) throw DomainError("square root of a negative interval");
  if (a.is_exact()) return certified_sqrt(lo, bits);
  return {sqrt_lower(lo, bits), sqrt_upper(a.upper, bits), bits};
}

/// True when the two enclosures certify a strict order.
inline bool certainly_less(const CertifiedReal& a, const CertifiedReal& b) {
  return a.upper < b.lower;
}

inline bool contains(const CertifiedReal& outer, const CertifiedReal& inner) {
  return outer.lower <= inner.lower && inner.upper <= outer.upper;
}

}  // namespace fairdiv
