#include <cmath>
#include <random>

#include "cauchylens/basis.hpp"
#include "cauchylens/quadrature.hpp"
#include "doctest.h"

using namespace cauchylens;

TEST_CASE("analytic basis: closed-form values") {
  const AnalyticBasis basis = make_analytic_basis(1.0, 0.5, 8);

  // b_1 is the constant 1/sqrt(pi).
  CHECK(basis.eval(1, cplx(0.37, -0.9)).real() ==
        doctest::Approx(0.5641895835477563).epsilon(1e-14));
  CHECK(basis.eval(1, cplx(0.37, -0.9)).imag() == doctest::Approx(0.0));

  // lambda_nu = (r/R)^{2 nu}; at nu = 3 and r = 0.5 this is 0.5^6.
  CHECK(basis.lambda(3) == doctest::Approx(0.015625).epsilon(1e-15));
  CHECK(basis.lambda(1) == doctest::Approx(0.25).epsilon(1e-15));

  // eval_all agrees with eval.
  const cplx z(0.3, 0.55);
  const auto all = basis.eval_all(z);
  REQUIRE(all.size() == 8);
  for (int nu = 1; nu <= 8; ++nu)
    CHECK(std::abs(all[nu - 1] - basis.eval(nu, z)) < 1e-14);

  // Norm of z^{nu-1} over the unit disc.
  CHECK(monomial_ball_norm_squared(1.0, 3) == doctest::Approx(pi / 3.0).epsilon(1e-15));
}

TEST_CASE("analytic basis is doubly orthogonal under quadrature") {
  const double r = 0.5;
  const AnalyticBasis basis = make_analytic_basis(1.0, r, 8);
  const auto big = disc_quadrature(cplx(0, 0), 1.0, 16, 64);
  const auto small = disc_quadrature(cplx(0, 0), r, 16, 64);

  for (int i = 1; i <= 8; ++i) {
    for (int j = 1; j <= 8; ++j) {
      cplx gb{0, 0}, gs{0, 0};
      for (const WeightedNode& n : big)
        gb += n.w * basis.eval(i, n.z) * std::conj(basis.eval(j, n.z));
      for (const WeightedNode& n : small)
        gs += n.w * basis.eval(i, n.z) * std::conj(basis.eval(j, n.z));
      if (i == j) {
        CHECK(gb.real() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(gs.real() == doctest::Approx(basis.lambda(i)).epsilon(1e-13));
      } else {
        CHECK(std::abs(gb) < 1e-14);
        CHECK(std::abs(gs) < 1e-14);
      }
    }
  }
}

TEST_CASE("harmonic dimension counting") {
  // Plane: 1, then 2 for every positive degree.
  CHECK(harmonic_dimension(2, 0) == 1);
  for (int nu = 1; nu <= 40; ++nu) CHECK(harmonic_dimension(2, nu) == 2);

  // Four real dimensions: (nu + 1)^2.
  for (int nu = 0; nu <= 20; ++nu)
    CHECK(harmonic_dimension(4, nu) == std::uint64_t(nu + 1) * (nu + 1));

  // Independent cross-check: C(d+nu-1, nu) - C(d+nu-3, nu-2).
  const auto binom = [](std::uint64_t m, std::uint64_t k) {
    std::uint64_t b = 1;
    for (std::uint64_t i = 1; i <= k; ++i) b = b * (m - k + i) / i;
    return b;
  };
  for (int d : {2, 4, 6, 8}) {
    for (int nu = 0; nu <= 20; ++nu) {
      const std::uint64_t expect =
          binom(d + nu - 1, nu) - (nu >= 2 ? binom(d + nu - 3, nu - 2) : 0);
      CHECK(harmonic_dimension(d, nu) == expect);
    }
  }

  CHECK_THROWS_AS(harmonic_dimension(3, 2), OddDimension);
  CHECK_THROWS_AS(harmonic_dimension(0, 2), OddDimension);
}

TEST_CASE("jacobi eigensolver on a fixed hermitian matrix") {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
  std::vector<cplx> A{cplx(2, 0), cplx(0, 1), cplx(0, -1), cplx(2, 0)};
  std::vector<double> ev;
  std::vector<cplx> V;
  hermitian_jacobi(A, 2, ev, V);
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("jacobi eigensolver on a random hermitian matrix") {
  const int n = 12;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<cplx> A(n * n);
  for (int i = 0; i < n; ++i) {
    A[i * n + i] = dist(rng);
    for (int j = i + 1; j < n; ++j) {
      const cplx v(dist(rng), dist(rng));
      A[i * n + j] = v;
      A[j * n + i] = std::conj(v);
    }
  }
  const std::vector<cplx> A0 = A;

  std::vector<double> ev;
  std::vector<cplx> V;
  hermitian_jacobi(A, n, ev, V);

  // Columns are eigenvectors: || A v - lambda v || small; V unitary.
  for (int k = 0; k < n; ++k) {
    double resid = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx row{0, 0};
      for (int j = 0; j < n; ++j) row += A0[i * n + j] * V[j * n + k];
      resid += std::norm(row - ev[k] * V[i * n + k]);
    }
    CHECK(std::sqrt(resid) < 1e-12);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      cplx dot{0, 0};
      for (int i = 0; i < n; ++i) dot += std::conj(V[i * n + a]) * V[i * n + b];
      CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-13);
    }
  }
}

TEST_CASE("numeric basis reproduces the analytic eigenvalues to relative accuracy") {
  // r/R = 0.3: lambda_16 = 0.3^32 ~ 1.85e-17 sits far below the unit-scale
  // entries, so only a grading-respecting solve can get it relatively right.
  const NumericBasis num = build_numeric_basis(1.0, 0.3, 16);
  const AnalyticBasis ana = make_analytic_basis(1.0, 0.3, 16);
  REQUIRE(num.lambda.size() == 16);
  for (int k = 0; k < 16; ++k) {
    const double exact = ana.lambda(k + 1);
    CHECK(std::abs(num.lambda[k] - exact) / exact < 1e-9);
  }
  CHECK(num.lambda[15] == doctest::Approx(1.853020188851839e-17).epsilon(1e-9));
}

TEST_CASE("numeric basis at depth 33 keeps relative accuracy") {
  const NumericBasis num = build_numeric_basis(1.0, 0.5, 33);
  const AnalyticBasis ana = make_analytic_basis(1.0, 0.5, 33);
  for (int k = 0; k < 33; ++k) {
    const double exact = ana.lambda(k + 1);
    CHECK(std::abs(num.lambda[k] - exact) / exact < 1e-8);
  }
  CHECK(num.lambda[32] == doctest::Approx(1.3552527156068805e-20).epsilon(1e-8));
}

TEST_CASE("numeric eigenfunctions match the monomial basis") {
  const NumericBasis num = build_numeric_basis(1.0, 0.4, 12);
  const AnalyticBasis ana = make_analytic_basis(1.0, 0.4, 12);
  for (int k = 0; k < 12; ++k) {
    for (cplx z : {cplx(0.3, 0.1), cplx(-0.2, 0.6), cplx(0.05, -0.85)}) {
      const cplx got = num.eval(k, z);
      const cplx want = ana.eval(k + 1, z);
      CHECK(std::abs(got - want) < 1e-8 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("basis input validation") {
  CHECK_THROWS_AS(make_analytic_basis(1.0, 0.5, 0), BasisTooSmall);
  CHECK_THROWS_AS(build_numeric_basis(1.0, 0.5, 0), BasisTooSmall);
  CHECK_THROWS_AS(make_analytic_basis(1.0, 1.5, 4), ConfigError);
  CHECK_THROWS_AS(build_numeric_basis(1.0, -0.1, 4), ConfigError);
}
