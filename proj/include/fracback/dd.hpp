#ifndef FRACBACK_DD_HPP
#define FRACBACK_DD_HPP

// Double-double arithmetic (Dekker/Bailey error-free transformations).
// Roughly 31-32 significant decimal digits; used to control the
// catastrophic cancellation of alternating power series.

#include <cmath>
#include <cstdint>
#include <string>
#include <stdexcept>

namespace fracback {

struct Dd {
  double hi = 0.0;
  double lo = 0.0;

  Dd() = default;
  constexpr Dd(double h) : hi(h), lo(0.0) {}
  constexpr Dd(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

namespace detail {

inline Dd quick_two_sum(double a, double b) {
  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline Dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline Dd dd_add(const Dd& a, const Dd& b) {
  Dd s = detail::two_sum(a.hi, b.hi);
  Dd t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline Dd dd_neg(const Dd& a) { return {-a.hi, -a.lo}; }
inline Dd dd_sub(const Dd& a, const Dd& b) { return dd_add(a, dd_neg(b)); }

inline Dd dd_mul(const Dd& a, const Dd& b) {
  Dd p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline Dd dd_div(const Dd& a, const Dd& b) {
  double q1 = a.hi / b.hi;
  Dd r = dd_sub(a, dd_mul(Dd(q1), b));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(Dd(q2), b));
  double q3 = r.hi / b.hi;
  Dd q = detail::quick_two_sum(q1, q2);
  return dd_add(q, Dd(q3));
}

inline Dd operator+(const Dd& a, const Dd& b) { return dd_add(a, b); }
inline Dd operator-(const Dd& a, const Dd& b) { return dd_sub(a, b); }
inline Dd operator*(const Dd& a, const Dd& b) { return dd_mul(a, b); }
inline Dd operator/(const Dd& a, const Dd& b) { return dd_div(a, b); }
inline Dd operator-(const Dd& a) { return dd_neg(a); }

inline bool operator<(const Dd& a, const Dd& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const Dd& a, const Dd& b) { return b < a; }

inline Dd dd_abs(const Dd& a) { return a.hi < 0.0 ? dd_neg(a) : a; }

inline Dd dd_ldexp(const Dd& a, int n) {
  return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)};
}

// exp(a) by 2^k * exp(r) with r = (a - k ln2)/2^9 and Taylor on |r| <= 7e-4,
// followed by nine squarings.  Relative error a few units of 2^-104.
inline Dd dd_exp(const Dd& a) {
  static const Dd kLn2{6.931471805599452862e-01, 2.319046813846299558e-17};
  if (a.hi > 709.0) throw std::overflow_error("dd_exp: overflow");
  if (a.hi < -746.0) return Dd(0.0);

  double k = std::floor(a.hi / kLn2.hi + 0.5);
  Dd r = dd_sub(a, dd_mul(Dd(k), kLn2));
  constexpr int kShift = 9;
  r = dd_ldexp(r, -kShift);

  // exp(r) - 1 via Taylor; |r| <= ln2/2^10 so eight terms reach 2^-110
  Dd p = r;
  Dd term = r;
  for (int i = 2; i <= 9; ++i) {
    term = dd_mul(term, r);
    term = dd_div(term, Dd(static_cast<double>(i)));
    p = dd_add(p, term);
  }
  // undo the scaling: (1+p)^(2^kShift) with p = e^r - 1
  for (int i = 0; i < kShift; ++i) {
    p = dd_add(dd_mul(p, p), dd_ldexp(p, 1));
  }
  Dd result = dd_add(p, Dd(1.0));
  return dd_ldexp(result, static_cast<int>(k));
}

// log(a) by one Newton step off the double-precision seed:
// y1 = y0 + a*exp(-y0) - 1.
inline Dd dd_log(const Dd& a) {
  if (!(a.hi > 0.0)) throw std::domain_error("dd_log: nonpositive argument");
  Dd y(std::log(a.hi));
  Dd e = dd_exp(dd_neg(y));
  y = dd_add(y, dd_sub(dd_mul(a, e), Dd(1.0)));
  return y;
}

inline Dd dd_pow_int(Dd base, long n) {
  if (n < 0) return dd_div(Dd(1.0), dd_pow_int(base, -n));
  Dd result(1.0);
  while (n > 0) {
    if (n & 1) result = dd_mul(result, base);
    base = dd_mul(base, base);
    n >>= 1;
  }
  return result;
}

// Parse a decimal string (sign, digits, optional point, optional exponent)
// into a Dd.  Digits are accumulated exactly; the final scaling by a power
// of ten costs at most a couple of ulps at dd precision.
inline Dd dd_from_string(const std::string& s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  Dd value(0.0);
  long exponent = 0;
  bool seen_point = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      value = dd_add(dd_mul(value, Dd(10.0)), Dd(static_cast<double>(c - '0')));
      if (seen_point) --exponent;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exponent += std::stol(s.substr(i + 1));
      break;
    } else {
      throw std::invalid_argument("dd_from_string: bad literal '" + s + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("dd_from_string: no digits in '" + s + "'");
  if (exponent != 0) {
    Dd scale = dd_pow_int(Dd(10.0), exponent < 0 ? -exponent : exponent);
    value = exponent < 0 ? dd_div(value, scale) : dd_mul(value, scale);
  }
  return neg ? dd_neg(value) : value;
}

// Complex double-double, just enough for the matrix Mittag-Leffler series.
struct DdComplex {
  Dd re, im;
  DdComplex() = default;
  DdComplex(Dd r, Dd i) : re(r), im(i) {}
  DdComplex(double r, double i = 0.0) : re(r), im(i) {}
};

inline DdComplex operator+(const DdComplex& a, const DdComplex& b) {
  return {dd_add(a.re, b.re), dd_add(a.im, b.im)};
}
inline DdComplex operator-(const DdComplex& a, const DdComplex& b) {
  return {dd_sub(a.re, b.re), dd_sub(a.im, b.im)};
}
inline DdComplex operator*(const DdComplex& a, const DdComplex& b) {
  return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
          dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}
inline DdComplex dd_cdiv_real(const DdComplex& a, const Dd& b) {
  return {dd_div(a.re, b), dd_div(a.im, b)};
}
inline double dd_cabs(const DdComplex& a) {
  return std::hypot(static_cast<double>(a.re), static_cast<double>(a.im));
}

}  // namespace fracback

#endif  // FRACBACK_DD_HPP
