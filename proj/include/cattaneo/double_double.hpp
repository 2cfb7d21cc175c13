#pragma once

#include <cmath>
#include <complex>

namespace cattaneo {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving ~106 bits of
// significand. Only the operations the quartic and modal kernels need.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  [[nodiscard]] constexpr double value() const { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
  DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - b * DoubleDouble(q1);
  const double q2 = r.hi / b.hi;
  r = r - b * DoubleDouble(q2);
  const double q3 = r.hi / b.hi;
  return dd_detail::quick_two_sum(q1, q2) + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& a, const DoubleDouble& b) { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, const DoubleDouble& b) { return a = a - b; }
inline DoubleDouble& operator*=(DoubleDouble& a, const DoubleDouble& b) { return a = a * b; }

inline DoubleDouble abs(const DoubleDouble& a) { return a.hi < 0.0 ? -a : a; }
inline bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }

inline DoubleDouble sqrt(const DoubleDouble& a) {
  if (a.hi <= 0.0) return {0.0, 0.0};
  const double x = std::sqrt(a.hi);
  // One Newton step from the double estimate.
  const DoubleDouble x2 = dd_detail::two_prod(x, x);
  const DoubleDouble r = a - x2;
  return dd_detail::quick_two_sum(x, r.hi / (2.0 * x));
}

struct ComplexDD {
  DoubleDouble re;
  DoubleDouble im;

  constexpr ComplexDD() = default;
  constexpr ComplexDD(DoubleDouble r, DoubleDouble i) : re(r), im(i) {}
  ComplexDD(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT(google-explicit-constructor)

  [[nodiscard]] std::complex<double> value() const { return {re.value(), im.value()}; }
};

inline ComplexDD operator+(const ComplexDD& a, const ComplexDD& b) { return {a.re + b.re, a.im + b.im}; }
inline ComplexDD operator-(const ComplexDD& a, const ComplexDD& b) { return {a.re - b.re, a.im - b.im}; }
inline ComplexDD operator-(const ComplexDD& a) { return {-a.re, -a.im}; }
inline ComplexDD operator*(const ComplexDD& a, const ComplexDD& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexDD operator*(const ComplexDD& a, const DoubleDouble& b) { return {a.re * b, a.im * b}; }
inline ComplexDD operator/(const ComplexDD& a, const DoubleDouble& b) { return {a.re / b, a.im / b}; }

}  // namespace cattaneo
