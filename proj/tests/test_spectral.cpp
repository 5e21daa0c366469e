#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"
#include "rauzy/error.h"
#include "rauzy/spectral.h"
#include "rauzy/transform.h"

using namespace rauzy;
using doctest::Approx;

TEST_CASE("classify the base substitution") {
  const Classification c = classify(fx::base);
  const double oracle_beta = oracle::bisect_root({1, -1, -1, -1}, 1.0, 2.0);
  CHECK(std::abs(c.beta - oracle_beta) < 1e-12);
  CHECK(c.beta == Approx(1.839287).epsilon(1e-6));
  CHECK(c.degree == 3);
  CHECK(c.real_conjugates == 0);
  CHECK(c.complex_pairs == 1);
  CHECK(c.pisot);
  CHECK(c.irreducible);
  CHECK(c.unit);
  REQUIRE(c.conjugates.size() == 1);
  CHECK(c.conjugates[0].imag() > 0);
  CHECK(std::abs(c.conjugates[0]) == Approx(0.7374).epsilon(1e-4));
}

TEST_CASE("classify the split tau: same beta, reducible") {
  const Classification c = classify(fx::split_tau);
  CHECK(c.beta == Approx(std::pow(classify(fx::base).beta, 3)).epsilon(1e-12));
  CHECK(c.degree == 3);
  CHECK(c.pisot);
  CHECK_FALSE(c.irreducible);
  CHECK(c.unit);
}

TEST_CASE("classify Quadribonacci") {
  const Classification c = classify(fx::quadribonacci);
  CHECK(std::abs(c.beta - oracle::bisect_root({1, -1, -1, -1, -1}, 1.0, 2.0)) < 1e-12);
  CHECK(c.beta == Approx(1.927562).epsilon(1e-6));
  CHECK(c.degree == 4);
  CHECK(c.real_conjugates == 1);
  CHECK(c.complex_pairs == 1);
  CHECK(c.pisot);
}

TEST_CASE("classify rejects non-primitive input and reports non-Pisot") {
  CHECK_THROWS_AS(classify(fx::subst({"1", "2"})), PreconditionFailed);
  // x^2 - 4x + 2: roots 2 +- sqrt 2
  CHECK(classify(fx::subst({"1112", "21"})).pisot);
  // (x - 2)(x + 1): beta = 2 is rational, the root -1 lies in the other factor
  CHECK(classify(fx::subst({"122", "1"})).degree == 1);
  CHECK(classify(fx::subst({"122", "1"})).pisot);
  // x^2 - x - 4: conjugate -1.56
  CHECK_FALSE(classify(fx::subst({"12222", "1"})).pisot);
}

TEST_CASE("polynomial roots agree with evaluation") {
  for (const std::vector<std::int64_t>& p :
       {std::vector<std::int64_t>{1, -1, -1, -1}, {1, -1, -1, -1, -1}, {1, 0, -2}, {1, -6, 11, -6}}) {
    const auto roots = polynomial_roots(p);
    CHECK(roots.size() == p.size() - 1);
    for (const Complex& z : roots) CHECK(std::abs(evaluate_polynomial(p, z)) < 1e-12);
  }
}

TEST_CASE("base eigenvectors satisfy v M = lambda v") {
  for (const Substitution& s : {fx::base, fx::tribonacci, fx::quadribonacci, fx::base_cubed}) {
    const SpectralData sd = base_eigenvectors(s);
    CHECK(eigen_residual(sd, incidence_matrix(s)) < 1e-9);
    CHECK(sd.convention == Convention::Solved);
    CHECK(sd.beta_vector(sd.normalization_index) == Approx(1.0));
    CHECK(sd.dimension() == sd.degree - 1);
  }
  const SpectralData q = base_eigenvectors(fx::quadribonacci);
  CHECK(q.beta_vector.size() == 4);
  CHECK(q.dimension() == 3);
}

TEST_CASE("projection is linear and commutes with the incidence matrix") {
  for (const Substitution& s : {fx::tribonacci, fx::quadribonacci}) {
    const SpectralData sd = base_eigenvectors(s);
    const Projection pi = projection_of(sd);
    const Contraction h = contraction_of(sd);
    const int n = s.alphabet();
    CHECK(pi(AbelianVector(n, 0)).norm() == 0.0);

    const Word u = fx::word("1213"), v = fx::word("3121");
    const Eigen::VectorXd lhs = pi(abelianize(concat(u, v), n));
    CHECK((lhs - pi(abelianize(u, n)) - pi(abelianize(v, n))).norm() < 1e-12);

    const IntMatrix m = incidence_matrix(s);
    for (int e = 0; e < n; ++e) {
      AbelianVector col(n);
      for (int r = 0; r < n; ++r) col[r] = m(r, e);
      AbelianVector basis(n, 0);
      basis[e] = 1;
      const Eigen::VectorXd diff = pi(col) - h.matrix() * pi(basis);
      CHECK(diff.cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("contraction") {
  const SpectralData sd = base_eigenvectors(fx::tribonacci);
  const Contraction h = contraction_of(sd);
  REQUIRE(h.multipliers().size() == 1);
  CHECK(std::abs(h.multipliers()[0]) == Approx(1.0 / std::sqrt(sd.beta)).epsilon(1e-12));
  CHECK((h.matrix() * Eigen::VectorXd::Zero(2)).norm() == 0.0);

  const SpectralData w = split_spectral(base_eigenvectors(fx::base_cubed), 1);
  const Contraction hw = contraction_of(w);
  const Contraction hv = contraction_of(base_eigenvectors(fx::base_cubed));
  CHECK(hw.multipliers() == hv.multipliers());
}

TEST_CASE("property: h contracts by the largest conjugate modulus") {
  std::mt19937 rng(31);
  std::normal_distribution<double> g;
  for (const Substitution& s : {fx::tribonacci, fx::quadribonacci, fx::base}) {
    const SpectralData sd = base_eigenvectors(s);
    const Contraction h = contraction_of(sd);
    const double q = sd.contraction_ratio();
    CHECK(q < 1.0);
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd x(h.dimension());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
      CHECK((h.matrix() * x).norm() <= q * x.norm() + 1e-12);
    }
  }
}

TEST_CASE("property: beta of a power is the power of beta") {
  for (const Substitution& s : {fx::tribonacci, fx::base, fx::quadribonacci})
    for (int N = 2; N <= 5; ++N) {
      const double b = classify(s).beta;
      CHECK(classify(power(s, N)).beta == Approx(std::pow(b, N)).epsilon(1e-9));
      const SpectralData pw = power_spectral(base_eigenvectors(s), N);
      CHECK(eigen_residual(pw, incidence_matrix(power(s, N))) < 1e-9);
      CHECK(pw.convention == Convention::PowerDerived);
    }
}
