#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gcbound/cover.hpp"
#include "gcbound/dist.hpp"
#include "gcbound/errors.hpp"
#include "oracles.hpp"

using namespace gcbound;

TEST_CASE("greedy trace on a line") {
  Dataset x(3, 1);
  x << 0.0, 0.5, 1.0;
  const CoverResult c = greedy_cover(x, 0.6);
  CHECK(c.n_centers == 2);
  CHECK(c.center_indices == std::vector<std::size_t>{0, 2});
  CHECK(c.centers(1, 0) == 1.0);
  CHECK(greedy_cover(Dataset::Ones(5, 2), 0.1).n_centers == 1);
  CHECK(greedy_cover(x, 1.5).n_centers == 1);
  CHECK_THROWS_AS(greedy_cover(x, 0.0), ParameterError);
  CHECK_THROWS_AS(greedy_cover(Dataset(0, 2), 1.0), ParameterError);
}

TEST_CASE("greedy covers are valid packings") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Dataset x = sample(standard_gaussian(2), 150, seed);
    for (double eps : {0.1, 0.4, 1.0}) {
      const CoverResult c = greedy_cover(x, eps);
      CHECK(is_valid_cover(x, c.centers, eps));
      CHECK(static_cast<int>(c.n_centers) == oracle::greedy_count(x, eps));
      for (std::size_t i = 0; i < c.n_centers; ++i) {
        for (std::size_t j = i + 1; j < c.n_centers; ++j) CHECK((c.centers.row(i) - c.centers.row(j)).norm() > eps);
      }
    }
  }
}

TEST_CASE("sandwich against exhaustive covering numbers") {
  Rng rng(17);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 8;
    Dataset x(n, 2);
    for (int i = 0; i < n; ++i) x.row(i) = Eigen::RowVector2d(u(rng), u(rng));
    const double eps = 0.2 + 0.1 * (t % 7);
    const int exact = oracle::min_internal_cover(x, eps);
    CHECK(greedy_cover(x, 2 * eps).n_centers <= static_cast<std::size_t>(exact));
    CHECK(static_cast<std::size_t>(exact) <= greedy_cover(x, eps).n_centers);
  }
}

TEST_CASE("lemma bounds") {
  CHECK(lemma1_bound(1, 0, 1, 0.25, 0.5) == 4.0);
  CHECK(lemma1_bound(4, 1, 1, 0.25, 5.0) == 1.0);
  CHECK(lemma1_bound(1, 0, 1, 0.25, 1.0) == 0.5 * lemma1_bound(1, 0, 1, 0.25, 0.5));
  CHECK(lemma2_bound(1, 0, 1, 0.25, 1.0, 2) == doctest::Approx(36.0).epsilon(1e-15));
  CHECK(lemma2_bound(1, 0, 1, 0.25, 0.5, 1) == doctest::Approx(3.0 * lemma1_bound(1, 0, 1, 0.25, 0.5)));
  CHECK(lemma2_bound(4, 1, 1, 0.25, 15.0, 3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lemma1_bound(1, 0, 1, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(lemma2_bound(1, 0, 1, 0.5, 1.0, 0), ParameterError);
}

TEST_CASE("erf approximation error") {
  for (int i = -400; i <= 400; ++i) {
    const double x = i / 100.0;
    CHECK(std::abs(erf_rational(x) - std::erf(x)) <= 1.5e-7);
  }
}

TEST_CASE("dudley evaluation") {
  const DudleyEval d = dudley_eval(2.0, 0.5);
  // 30-digit references: sqrt(pi) - 0.5 sqrt(ln 4) and the integral itself.
  CHECK(d.upper_bound == doctest::Approx(1.18374883964777868).epsilon(1e-14));
  CHECK(std::abs(d.quadrature - 1.01378652566906157) <= 1e-10);
  CHECK(std::abs(d.exact_integral - d.quadrature) <= 1e-6);
  CHECK(d.quadrature <= d.upper_bound);
  CHECK(dudley_eval(3.0, 3.0).exact_integral == 0.0);
  CHECK(dudley_eval(3.0, 3.0).quadrature == 0.0);
  CHECK_THROWS_AS(dudley_eval(1.0, 2.0), ParameterError);
  CHECK_THROWS_AS(dudley_eval(1.0, 0.0), ParameterError);
  // Far-out lower limit; reference from the same 30-digit evaluation.
  CHECK(std::abs(dudley_eval(5.0, 0.01).quadrature - 4.40433260720132308) <= 1e-10);
}

TEST_CASE("adaptive quadrature on smooth integrands") {
  CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("rademacher upper bounds") {
  // 30 sqrt(pi)/100 and 18*5*sqrt(4 pi)/100.
  CHECK(rademacher_upper(5, 100, 1) == doctest::Approx(0.53173615527165481).epsilon(1e-14));
  CHECK(rademacher_upper(5, 100, 4) == doctest::Approx(3.19041693162992885).epsilon(1e-14));
  CHECK(rademacher_upper(5, 100000000, 1) < 1e-6);
  CHECK_THROWS_AS(rademacher_upper(5, 0, 1), ParameterError);
}

TEST_CASE("rademacher estimates") {
  const Dataset x = sample(standard_gaussian(2), 4, 3);
  const Model zero = affine_model(Eigen::MatrixXd::Zero(1, 2), Eigen::VectorXd::Zero(1));
  CHECK(rademacher_empirical({zero}, x, 100, 1) == 0.0);

  const Model f = affine_model(Eigen::RowVector2d(1.0, -0.5), Eigen::VectorXd::Constant(1, 0.2));
  const Model g = affine_model(Eigen::RowVector2d(-0.3, 2.0), Eigen::VectorXd::Zero(1));
  Eigen::MatrixXd outputs(4, 2);
  for (int i = 0; i < 4; ++i) {
    outputs(i, 0) = f.forward(x.row(i).transpose())(0);
    outputs(i, 1) = g.forward(x.row(i).transpose())(0);
  }
  CHECK(rademacher_exhaustive(outputs) == doctest::Approx(oracle::rademacher_exhaustive(outputs)).epsilon(1e-15));
  CHECK(rademacher_empirical({f, f.scaled(-1.0)}, x, 500, 2) >= 0.0);

  // Monte Carlo mean converges to the exhaustive expectation (m = 10).
  const Dataset x10 = sample(standard_gaussian(2), 10, 4);
  Eigen::MatrixXd out10(10, 3);
  for (int i = 0; i < 10; ++i) {
    out10(i, 0) = f.forward(x10.row(i).transpose())(0);
    out10(i, 1) = g.forward(x10.row(i).transpose())(0);
    out10(i, 2) = -out10(i, 0);
  }
  const double exact = oracle::rademacher_exhaustive(out10);
  CHECK(rademacher_exhaustive(out10) == doctest::Approx(exact).epsilon(1e-14));
  const double mc = rademacher_empirical(out10, 200000, 5);
  // Each draw lies within max |f| of the mean, so 1e-2 is well beyond 4 SE.
  CHECK(std::abs(mc - exact) <= 1e-2);

  const Model two_out = affine_model(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d::Zero());
  CHECK_THROWS_AS(rademacher_empirical({two_out}, x, 10, 1), ShapeError);
  CHECK_THROWS_AS(rademacher_empirical(std::vector<Model>{}, x, 10, 1), ParameterError);
}
