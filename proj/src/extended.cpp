#include "cauchylens/extended.hpp"

#include "cauchylens/gauss.hpp"

namespace cauchylens {

xcplx xcis(xreal phi) {
  int halvings = 0;
  xreal t = phi;
  const xreal bound = xreal(1) / 256;
  while (xabs(t) > bound && halvings < 64) {
    t *= xreal(0.5);
    ++halvings;
  }
  // cos t + i sin t on |t| <= 1/256; terms through t^14 leave the tail far
  // below the mantissa.
  const xreal t2 = t * t;
  xreal c = 1, s = 1;
  xreal term = 1;
  for (int k = 1; k <= 7; ++k) {
    term = -term * t2 / xreal(double(2 * k * (2 * k - 1)));
    c += term;
    s += term / xreal(double(2 * k + 1));
  }
  xcplx e{c, t * s};
  for (int k = 0; k < halvings; ++k) e = e * e;
  return e;
}

XGauss xgauss_legendre(int n) {
  const GaussRule1d seed = gauss_legendre(std::size_t(n));
  XGauss out;
  out.x.resize(std::size_t(n));
  out.w.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) {
    xreal x = xreal(seed.x[std::size_t(i)]);
    xreal dp = 0;
    // Newton on P_n; three steps from the double seed saturate the mantissa.
    for (int it = 0; it < 3; ++it) {
      xreal p0 = 1, p1 = x;
      for (int k = 1; k < n; ++k) {
        const xreal p2 = (xreal(double(2 * k + 1)) * x * p1 -
                          xreal(double(k)) * p0) /
                         xreal(double(k + 1));
        p0 = p1;
        p1 = p2;
      }
      dp = xreal(double(n)) * (x * p1 - p0) / (x * x - xreal(1));
      x -= p1 / dp;
    }
    // Recompute P_{n-1} at the converged node for the weight formula.
    xreal p0 = 1, p1 = x;
    for (int k = 1; k < n; ++k) {
      const xreal p2 = (xreal(double(2 * k + 1)) * x * p1 -
                        xreal(double(k)) * p0) /
                       xreal(double(k + 1));
      p0 = p1;
      p1 = p2;
    }
    dp = xreal(double(n)) * (x * p1 - p0) / (x * x - xreal(1));
    out.x[std::size_t(i)] = x;
    out.w[std::size_t(i)] = xreal(2) / ((xreal(1) - x * x) * dp * dp);
  }
  return out;
}

}  // namespace cauchylens
