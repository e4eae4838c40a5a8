#pragma once

#include <functional>
#include <vector>

#include "cauchylens/common.hpp"

namespace cauchylens {

// ---------------------------------------------------------------------------
// Extended-precision scalars for the coefficient path.
//
// The regrouped mode sums integrate data against zeta^-(m+1), whose modulus
// reaches dist(0, Gamma)^-(m+1); the true integral is smaller by roughly that
// whole factor, so mode m cancels about m * log10(1/dist) decimal digits.
// Reaching m ~ 40 on the canonical domains therefore needs node positions,
// weights, and data carried well beyond double precision.  GCC and Clang
// provide the 113-bit __float128 on every platform this project targets;
// plain arithmetic on it needs no support library.  Where it is missing,
// long double is the best available stand-in (the documented coefficient
// depth shrinks accordingly).
// ---------------------------------------------------------------------------

#if defined(__SIZEOF_FLOAT128__)
#define CAUCHYLENS_EXTENDED_IS_FLOAT128 1
using xreal = __float128;
#else
using xreal = long double;
#endif

struct xcplx {
  xreal re{0};
  xreal im{0};

  xcplx() = default;
  xcplx(xreal r, xreal i) : re(r), im(i) {}
  explicit xcplx(cplx z) : re(z.real()), im(z.imag()) {}
};

inline cplx to_double(const xcplx& a) {
  return cplx(double(a.re), double(a.im));
}

inline xcplx operator+(const xcplx& a, const xcplx& b) {
  return {a.re + b.re, a.im + b.im};
}
inline xcplx operator-(const xcplx& a, const xcplx& b) {
  return {a.re - b.re, a.im - b.im};
}
inline xcplx operator*(const xcplx& a, const xcplx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline xcplx operator*(const xcplx& a, xreal s) { return {a.re * s, a.im * s}; }
inline xcplx operator*(xreal s, const xcplx& a) { return a * s; }
inline xcplx& operator+=(xcplx& a, const xcplx& b) {
  a.re += b.re;
  a.im += b.im;
  return a;
}
inline xcplx xconj(const xcplx& a) { return {a.re, -a.im}; }
inline xreal xnorm(const xcplx& a) { return a.re * a.re + a.im * a.im; }
inline xcplx xinv(const xcplx& a) {
  const xreal d = xnorm(a);
  return {a.re / d, -a.im / d};
}
inline xcplx operator/(const xcplx& a, const xcplx& b) { return a * xinv(b); }

inline xreal xabs(xreal a) { return a < 0 ? -a : a; }

// sqrt by Newton refinement of the double seed; two steps saturate the
// mantissa.
inline xreal xsqrt(xreal a) {
  if (!(a > 0)) return 0;
  xreal s = xreal(__builtin_sqrt(double(a)));
  s = xreal(0.5) * (s + a / s);
  s = xreal(0.5) * (s + a / s);
  return s;
}

// pi split into two doubles; the pair reconstructs it to ~1e-32.
inline const xreal kXPi =
    xreal(3.141592653589793116) + xreal(1.2246467991473531772e-16);

// e^{i phi} without a quad-precision libm: halve the angle into [-1/256,
// 1/256], sum the short Taylor tails of cos and sin there, and square back.
xcplx xcis(xreal phi);

struct XGauss {
  std::vector<xreal> x;  // nodes on [-1, 1]
  std::vector<xreal> w;
};

// Gauss-Legendre rule with nodes refined to extended precision (Newton on
// the Legendre recurrence, seeded by the double rule).
XGauss xgauss_legendre(int n);

// Extended-precision interface data: same function as the double callback,
// evaluated without the double rounding of argument or value.
using XScalarField = std::function<xcplx(const xcplx&)>;

// One node of an extended-precision boundary rule; sums over these follow
// the same w * tangent * density convention as BoundaryRule.
struct XBoundaryNode {
  xcplx z;
  xcplx tangent;
  xreal w{0};
};

}  // namespace cauchylens
