#include "cauchylens/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cauchylens/quadrature.hpp"

namespace cauchylens {

namespace {

void check_disc_pair(double R, double r) {
  if (!(R > 0.0) || !(r > 0.0) || !(r < R))
    throw ConfigError("basis needs 0 < test radius < disc radius");
}

// Forward substitution L x = b for lower-triangular L (row-major n x n).
void solve_lower(const std::vector<cplx>& L, int n, std::vector<cplx>& x) {
  for (int i = 0; i < n; ++i) {
    cplx s = x[i];
    for (int j = 0; j < i; ++j) s -= L[std::size_t(i) * n + j] * x[j];
    x[i] = s / L[std::size_t(i) * n + i];
  }
}

// Back substitution L^H x = b.
void solve_lower_adjoint(const std::vector<cplx>& L, int n, std::vector<cplx>& x) {
  for (int i = n - 1; i >= 0; --i) {
    cplx s = x[i];
    for (int j = i + 1; j < n; ++j) s -= std::conj(L[std::size_t(j) * n + i]) * x[j];
    x[i] = s / std::conj(L[std::size_t(i) * n + i]);
  }
}

}  // namespace

AnalyticBasis make_analytic_basis(double omega_radius, double test_radius, int n_max) {
  check_disc_pair(omega_radius, test_radius);
  if (n_max < 1) throw BasisTooSmall("basis needs at least one function");
  return {omega_radius, test_radius, n_max};
}

double AnalyticBasis::beta(int nu) const {
  return std::sqrt(double(nu) / (pi * std::pow(omega_radius, 2.0 * nu)));
}

double AnalyticBasis::lambda(int nu) const {
  return std::pow(test_radius / omega_radius, 2.0 * nu);
}

cplx AnalyticBasis::eval(int nu, cplx z) const {
  return beta(nu) * std::pow(z, nu - 1);
}

std::vector<cplx> AnalyticBasis::eval_all(cplx z) const {
  std::vector<cplx> out(n_max);
  cplx zp{1.0, 0.0};
  for (int nu = 1; nu <= n_max; ++nu) {
    out[nu - 1] = beta(nu) * zp;
    zp *= z;
  }
  return out;
}

double monomial_ball_norm_squared(double R, int nu) {
  return pi * std::pow(R, 2.0 * nu) / double(nu);
}

std::uint64_t harmonic_dimension(int dim, int nu) {
  if (dim < 2 || dim % 2 != 0)
    throw OddDimension("harmonic counting needs an even dimension >= 2");
  if (nu < 0) throw ConfigError("harmonic degree must be nonnegative");
  if (nu == 0) return 1;
  if (dim == 2) return 2;
  const std::uint64_t n = std::uint64_t(dim) / 2;
  // (2n + 2 nu - 2) * C(2n + nu - 3, nu) / (2n - 2), exactly.
  std::uint64_t binom = 1;
  const std::uint64_t top = 2 * n + std::uint64_t(nu) - 3;
  for (std::uint64_t k = 1; k <= std::uint64_t(nu); ++k) {
    const std::uint64_t factor = top - std::uint64_t(nu) + k;
    if (binom > UINT64_MAX / factor)
      throw ConfigError("harmonic dimension overflows 64-bit arithmetic");
    binom = binom * factor / k;  // exact: C(m, k) is an integer at every step
  }
  const unsigned __int128 num =
      (unsigned __int128)(2 * n + 2 * std::uint64_t(nu) - 2) * binom;
  const std::uint64_t den = 2 * n - 2;
  if (num % den != 0)
    throw NumericalError("harmonic dimension arithmetic lost exactness");
  const unsigned __int128 res = num / den;
  if (res > UINT64_MAX)
    throw ConfigError("harmonic dimension overflows 64-bit arithmetic");
  return std::uint64_t(res);
}

void hermitian_jacobi(std::vector<cplx>& A, int n, std::vector<double>& eigenvalues,
                      std::vector<cplx>& V) {
  const auto at = [n](std::vector<cplx>& M, int i, int j) -> cplx& {
    return M[std::size_t(i) * n + j];
  };
  V.assign(std::size_t(n) * n, cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) at(V, i, i) = 1.0;

  // Cyclic sweeps; a pivot is rotated only while its off-diagonal entry is
  // large relative to sqrt of the product of the diagonals, which keeps the
  // small eigenvalues of a graded positive matrix relatively accurate.
  const double tol = 1e-15;
  bool changed = true;
  int sweep = 0;
  for (; sweep < 60 && changed; ++sweep) {
    changed = false;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx gamma = at(A, p, q);
        const double alpha = at(A, p, p).real();
        const double beta = at(A, q, q).real();
        const double mag = std::abs(gamma);
        if (mag <= tol * std::sqrt(std::abs(alpha) * std::abs(beta))) continue;
        changed = true;

        const cplx u = gamma / mag;
        const double tau = (beta - alpha) / (2.0 * mag);
        double t;
        if (tau >= 0.0)
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx sigma = (t * c) * u;

        // Right-multiply columns p, q of A and V by W = [[c, sigma],
        // [-conj(sigma), c]], then left-multiply rows p, q of A by W^H.
        for (int k = 0; k < n; ++k) {
          const cplx akp = at(A, k, p), akq = at(A, k, q);
          at(A, k, p) = c * akp - std::conj(sigma) * akq;
          at(A, k, q) = sigma * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = at(A, p, k), aqk = at(A, q, k);
          at(A, p, k) = c * apk - sigma * aqk;
          at(A, q, k) = std::conj(sigma) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const cplx vkp = at(V, k, p), vkq = at(V, k, q);
          at(V, k, p) = c * vkp - std::conj(sigma) * vkq;
          at(V, k, q) = sigma * vkp + c * vkq;
        }
        at(A, p, q) = at(A, q, p) = 0.0;
        at(A, p, p) = at(A, p, p).real();
        at(A, q, q) = at(A, q, q).real();
      }
    }
  }
  if (changed)
    throw NumericalError("Jacobi eigeniteration did not converge in 60 sweeps");

  eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) eigenvalues[i] = at(A, i, i).real();
}

cplx NumericBasis::eval(int k, cplx z) const {
  const std::vector<cplx>& v = coef[k];
  cplx sum{0.0, 0.0}, zp{1.0, 0.0};
  for (std::size_t j = 0; j < v.size(); ++j) {
    sum += v[j] * mono_scale[j] * zp;
    zp *= z;
  }
  return sum;
}

NumericBasis build_numeric_basis(double omega_radius, double test_radius, int n_max) {
  check_disc_pair(omega_radius, test_radius);
  if (n_max < 1) throw BasisTooSmall("basis needs at least one function");
  const int n = n_max;

  // Quadratures exact for all monomial products appearing in the Grams.
  const int n_r = n + 8, n_th = 4 * n + 8;
  const auto big = disc_quadrature(cplx(0.0, 0.0), omega_radius, n_r, n_th);
  const auto small = disc_quadrature(cplx(0.0, 0.0), test_radius, n_r, n_th);

  // Scale z^j to unit L^2(Omega) norm as measured by the same rule.
  std::vector<double> scale(n, 0.0);
  for (const WeightedNode& node : big) {
    double p = 1.0;
    const double a2 = std::norm(node.z);
    for (int j = 0; j < n; ++j) {
      scale[j] += node.w * p;
      p *= a2;
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!(scale[j] > 0.0)) throw GramNotPositive("monomial norm not positive");
    scale[j] = 1.0 / std::sqrt(scale[j]);
  }

  const auto gram = [&](const std::vector<WeightedNode>& rule) {
    std::vector<cplx> G(std::size_t(n) * n, cplx(0.0, 0.0));
    std::vector<cplx> pw(n);
    for (const WeightedNode& node : rule) {
      pw[0] = scale[0];
      for (int j = 1; j < n; ++j) pw[j] = pw[j - 1] * node.z * (scale[j] / scale[j - 1]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          G[std::size_t(i) * n + j] += node.w * pw[i] * std::conj(pw[j]);
    }
    return G;
  };
  std::vector<cplx> G_big = gram(big);
  std::vector<cplx> G_small = gram(small);

  // Cholesky G_big = L L^H.
  std::vector<cplx> L(std::size_t(n) * n, cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      cplx s = G_big[std::size_t(i) * n + j];
      for (int k = 0; k < j; ++k)
        s -= L[std::size_t(i) * n + k] * std::conj(L[std::size_t(j) * n + k]);
      if (i == j) {
        const double d = s.real();
        if (!(d > 0.0))
          throw GramNotPositive("disc Gram matrix is not positive definite");
        L[std::size_t(i) * n + j] = std::sqrt(d);
      } else {
        L[std::size_t(i) * n + j] = s / L[std::size_t(j) * n + j].real();
      }
    }
  }

  // B = L^{-1} G_small L^{-H}, assembled column by column.
  std::vector<cplx> B(std::size_t(n) * n);
  {
    std::vector<cplx> col(n);
    // X = L^{-1} G_small.
    std::vector<cplx> X(std::size_t(n) * n);
    for (int c = 0; c < n; ++c) {
      for (int i = 0; i < n; ++i) col[i] = G_small[std::size_t(i) * n + c];
      solve_lower(L, n, col);
      for (int i = 0; i < n; ++i) X[std::size_t(i) * n + c] = col[i];
    }
    // B^H = L^{-1} X^H, i.e. solve along the rows of X.
    for (int r = 0; r < n; ++r) {
      for (int i = 0; i < n; ++i) col[i] = std::conj(X[std::size_t(r) * n + i]);
      solve_lower(L, n, col);
      for (int i = 0; i < n; ++i) B[std::size_t(r) * n + i] = std::conj(col[i]);
    }
    // Enforce Hermitian symmetry lost to roundoff.
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const cplx m = 0.5 * (B[std::size_t(i) * n + j] +
                              std::conj(B[std::size_t(j) * n + i]));
        B[std::size_t(i) * n + j] = m;
        B[std::size_t(j) * n + i] = std::conj(m);
      }
  }

  std::vector<double> mu;
  std::vector<cplx> W;
  hermitian_jacobi(B, n, mu, W);

  // Back-transform eigenvectors to scaled-monomial coordinates and fix the
  // normalisation v^H G_big v = 1 and a deterministic phase.
  std::vector<std::vector<cplx>> vecs(n, std::vector<cplx>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<cplx> v(n);
    for (int i = 0; i < n; ++i) v[i] = W[std::size_t(i) * n + k];
    solve_lower_adjoint(L, n, v);

    cplx norm2{0.0, 0.0};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        norm2 += std::conj(v[i]) * G_big[std::size_t(i) * n + j] * v[j];
    const double nrm = std::sqrt(norm2.real());
    double peak = 0.0;
    for (const cplx& c : v) peak = std::max(peak, std::abs(c));
    cplx phase{1.0, 0.0};
    for (int i = 0; i < n; ++i) {
      if (std::abs(v[i]) > 1e-8 * peak) {
        phase = std::conj(v[i]) / std::abs(v[i]);
        break;
      }
    }
    for (cplx& c : v) c = c * phase / nrm;
    vecs[k] = std::move(v);
  }

  // Order by eigenvalue, descending; break near-ties by the dominant degree.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto dominant = [&](int k) {
    int best = 0;
    double bestmag = 0.0;
    for (int j = 0; j < n; ++j) {
      const double m = std::abs(vecs[k][j]);
      if (m > bestmag) {
        bestmag = m;
        best = j;
      }
    }
    return best;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(mu[a] - mu[b]) > 1e-12 * std::max(std::abs(mu[a]), std::abs(mu[b])))
      return mu[a] > mu[b];
    return dominant(a) < dominant(b);
  });

  NumericBasis out;
  out.omega_radius = omega_radius;
  out.test_radius = test_radius;
  out.n_max = n;
  out.mono_scale = scale;
  out.lambda.resize(n);
  out.coef.resize(n);
  for (int k = 0; k < n; ++k) {
    out.lambda[k] = mu[order[k]];
    out.coef[k] = std::move(vecs[order[k]]);
  }
  return out;
}

}  // namespace cauchylens
