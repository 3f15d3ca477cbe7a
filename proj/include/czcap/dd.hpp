#pragma once

// Double-double arithmetic (Dekker/Knuth error-free transforms).
//
// The triple-wise quantities in this project (Menger curvature, permutation
// sums of odd kernels) cancel to O(area^2) while their individual terms stay
// O(1); plain doubles lose up to half the mantissa on thin triangles, which
// is not enough for the 1e-9 verification tolerances used by the test suite.
// A ~32-digit double-double carries the cancellation comfortably.
//
// Requires round-to-nearest IEEE doubles and a correct std::fma; do not
// compile this header with -ffast-math.

#include <cmath>

namespace czcap {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace detail {

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// assumes |a| >= |b| or a == 0
inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline dd operator+(const dd& a, const dd& b) {
  dd s = detail::two_sum(a.hi, b.hi);
  dd t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(const dd& a) { return {-a.hi, -a.lo}; }

inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
  dd p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(const dd& a, const dd& b) {
  double q1 = a.hi / b.hi;
  dd r = a - b * dd(q1);
  double q2 = r.hi / b.hi;
  r = r - b * dd(q2);
  double q3 = r.hi / b.hi;
  dd q = detail::quick_two_sum(q1, q2);
  return q + dd(q3);
}

inline dd& operator+=(dd& a, const dd& b) { return a = a + b; }
inline dd& operator-=(dd& a, const dd& b) { return a = a - b; }
inline dd& operator*=(dd& a, const dd& b) { return a = a * b; }

inline bool operator<(const dd& a, const dd& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const dd& a, const dd& b) { return b < a; }

inline dd dd_abs(const dd& a) { return a.hi < 0.0 ? -a : a; }

// exact difference of two doubles
inline dd dd_sub(double a, double b) { return detail::two_sum(a, -b); }

inline dd dd_sqr(const dd& a) { return a * a; }

inline dd dd_sqrt(const dd& a) {
  if (a.hi == 0.0) return {0.0, 0.0};
  double s = std::sqrt(a.hi);
  dd e = (a - detail::two_prod(s, s)) / dd(2.0 * s);
  return detail::quick_two_sum(s, e.hi + e.lo);
}

// a^k for k >= 0 by binary exponentiation
inline dd dd_ipow(dd a, int k) {
  dd r(1.0);
  while (k > 0) {
    if (k & 1) r = r * a;
    a = a * a;
    k >>= 1;
  }
  return r;
}

}  // namespace czcap
