#pragma once

#include <cmath>

namespace mutfreq::detail {

// Double-double value a = hi + lo with |lo| <= ulp(hi)/2: roughly 31
// significant digits. Only the handful of operations the alternating-sum
// evaluation needs.
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  DD() = default;
  DD(double h, double l) : hi(h), lo(l) {}
  explicit DD(double v) : hi(v), lo(0.0) {}

  double value() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double v = s - a;
  const double e = (a - (s - v)) + (b - v);
  return {s, e};
}

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(const DD& a, const DD& b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(const DD& a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(const DD& a, const DD& b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(const DD& a, const DD& b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(const DD& a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(const DD& a, const DD& b) {
  const double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(b, q1));
  const double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  const double q3 = r.hi / b.hi;
  DD q = quick_two_sum(q1, q2);
  q.lo += q3;
  return quick_two_sum(q.hi, q.lo);
}

inline DD dd_div(double a, double b) { return dd_div(DD(a), DD(b)); }

inline double dd_abs(const DD& a) { return std::abs(a.value()); }

}  // namespace mutfreq::detail
