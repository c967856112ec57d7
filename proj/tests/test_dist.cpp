#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gcbound/dist.hpp"
#include "gcbound/errors.hpp"
#include "gcbound/net.hpp"

using namespace gcbound;

namespace {

UniformBox box1(double lo, double hi) { return {Eigen::VectorXd::Constant(1, lo), Eigen::VectorXd::Constant(1, hi)}; }

DistributionSpec two_intervals() { return disconnected_uniform(box1(0, 1), box1(2, 3)); }

}  // namespace

TEST_CASE("known constants") {
  CHECK(*standard_gaussian(3).rho == 1.0);
  CHECK(*uniform_box(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 2)).rho ==
        doctest::Approx(4.0 / (std::numbers::pi * std::numbers::pi)));
  CHECK(*diagonal_gaussian(Eigen::Vector2d(0, 1), Eigen::Vector2d(0.5, 2.0)).rho == 2.0);
  CHECK_FALSE(separated_mixture(2, 2, 3.0).rho.has_value());
  CHECK_FALSE(two_intervals().rho.has_value());
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(standard_gaussian(0), SpecError);
  CHECK_THROWS_AS(uniform_box(Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 1)), SpecError);
  CHECK_THROWS_AS(diagonal_gaussian(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, -1)), SpecError);
  CHECK_THROWS_AS(disconnected_uniform(box1(0, 2), box1(1, 3)), SpecError);
  CHECK_THROWS_AS(gaussian_mixture({DiagonalGaussian{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1)}}, {0.5}), SpecError);
  CHECK(box_gap(box1(0, 1), box1(2, 3)) == 1.0);
  CHECK(dimension(separated_mixture(4, 3, 2.0)) == 4);
}

TEST_CASE("gaussian sample mean concentrates") {
  const std::size_t m = 100000;
  const Dataset x = sample(standard_gaussian(2), m, 5);
  const Eigen::VectorXd mean = x.colwise().mean();
  CHECK(std::abs(mean(0)) <= 4.0 / std::sqrt(double(m)));
  CHECK(std::abs(mean(1)) <= 4.0 / std::sqrt(double(m)));
}

TEST_CASE("uniform support containment and determinism") {
  const Dataset x = sample(uniform_box(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)), 5000, 1);
  CHECK(x.minCoeff() >= 0.0);
  CHECK(x.maxCoeff() <= 1.0);
  for (const DistributionSpec& spec :
       {standard_gaussian(3), two_intervals(), separated_mixture(2, 3, 3.0),
        diagonal_gaussian(Eigen::Vector2d(1, 2), Eigen::Vector2d(1, 4))}) {
    CHECK(sample(spec, 100, 9) == sample(spec, 100, 9));
    CHECK(sample(spec, 100, 9) != sample(spec, 100, 10));
  }
  CHECK_THROWS_AS(sample(standard_gaussian(1), 0, 1), ParameterError);
}

TEST_CASE("disconnected uniform draws both pieces") {
  std::vector<int> comps;
  const Dataset x = sample_with_components(two_intervals(), 4000, 3, comps);
  int second = 0;
  for (int i = 0; i < x.rows(); ++i) {
    if (comps[i] == 0) {
      CHECK((x(i, 0) >= 0.0 && x(i, 0) <= 1.0));
    } else {
      CHECK((x(i, 0) >= 2.0 && x(i, 0) <= 3.0));
      ++second;
    }
  }
  // Binomial(4000, 1/2) within 4 sigma.
  CHECK(std::abs(second - 2000) <= 4 * std::sqrt(1000.0));
}

TEST_CASE("mixture components follow their means") {
  std::vector<int> comps;
  const Dataset x = sample_with_components(separated_mixture(2, 2, 3.0), 2000, 4, comps);
  double m0 = 0, m1 = 0;
  int n0 = 0, n1 = 0;
  for (int i = 0; i < x.rows(); ++i) {
    (comps[i] == 0 ? m0 : m1) += x(i, 0);
    ++(comps[i] == 0 ? n0 : n1);
  }
  CHECK(std::abs(std::abs(m0 / n0) - 3.0) < 0.2);
  CHECK(std::abs(std::abs(m1 / n1) - 3.0) < 0.2);
  CHECK((m0 / n0) * (m1 / n1) < 0.0);
}

TEST_CASE("linear function attains Gaussian equality") {
  const PoincareCheck c = poincare_check(standard_gaussian(1), linear_function(Eigen::VectorXd::Ones(1)), 100000, 2);
  CHECK(c.grad_energy_hat == 1.0);
  CHECK(c.var_hat == doctest::Approx(1.0).epsilon(0.02));
  CHECK(c.ratio == doctest::Approx(1.0).epsilon(0.02));
  CHECK(c.passed);
  CHECK(c.rho_used == 1.0);
}

TEST_CASE("constant function passes everywhere") {
  for (const DistributionSpec& spec :
       {standard_gaussian(2), uniform_box(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2))}) {
    const PoincareCheck c = poincare_check(spec, constant_function(2, 3.0), 1000, 1);
    CHECK(c.var_hat == 0.0);
    CHECK(c.passed);
  }
  const PoincareCheck c = poincare_check(two_intervals(), constant_function(1, 1.0), 1000, 1, 0.5);
  CHECK(c.passed);
}

TEST_CASE("bump violates the inequality on a disconnected support") {
  const ScalarFunction bump = build_bump({box1(0, 1), box1(2, 3)}, {0.0, 1.0});
  CHECK(bump.value(Eigen::VectorXd::Constant(1, 0.5)) == 0.0);
  CHECK(bump.value(Eigen::VectorXd::Constant(1, 2.5)) == 1.0);
  CHECK(bump.gradient(Eigen::VectorXd::Constant(1, 0.5))(0) == 0.0);
  CHECK(bump.gradient(Eigen::VectorXd::Constant(1, 2.5))(0) == 0.0);
  const double mid = bump.value(Eigen::VectorXd::Constant(1, 1.5));
  CHECK((mid >= 0.0 && mid <= 1.0));
  const PoincareCheck c = poincare_check(two_intervals(), bump, 100000, 7, 10.0);
  CHECK(c.grad_energy_hat == 0.0);
  CHECK(std::abs(c.var_hat - 0.25) <= 3 * c.se_var);
  CHECK_FALSE(c.passed);

  // A two-valued function near p = 1/2: the variance SE cannot drop below its
  // exact value 0.25 sqrt(2 / (n (n - 1))) at p = 1/2.
  const double n = 100000;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PoincareCheck s = poincare_check(two_intervals(), bump, 100000, seed, 10.0);
    CHECK(s.se_var >= 0.25 * std::sqrt(2.0 / (n * (n - 1))) * (1 - 1e-9));
    CHECK(std::abs(s.var_hat - 0.25) <= 3 * s.se_var);
  }
}

TEST_CASE("bump transition is monotone and smooth") {
  const ScalarFunction bump = build_bump({box1(0, 1), box1(2, 3)}, {0.0, 1.0});
  double prev = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const double t = i / 100.0;
    const double v = bump.value(Eigen::VectorXd::Constant(1, t));
    CHECK(v >= prev - 1e-15);
    prev = v;
    const double h = 1e-6;
    const double fd = (bump.value(Eigen::VectorXd::Constant(1, t + h)) - bump.value(Eigen::VectorXd::Constant(1, t - h))) /
                      (2 * h);
    CHECK(std::abs(fd - bump.gradient(Eigen::VectorXd::Constant(1, t))(0)) <= 1e-5);
  }
  const ScalarFunction single = build_bump({box1(0, 1)}, {2.5});
  CHECK(single.value(Eigen::VectorXd::Constant(1, 0.3)) == 2.5);
  CHECK_THROWS_AS(build_bump({box1(0, 2), box1(1, 3)}, {0.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(build_bump({box1(0, 1)}, {0.0, 1.0}), ParameterError);
}

TEST_CASE("random tanh nets satisfy the Gaussian inequality") {
  for (int t = 0; t < 10; ++t) {
    const std::vector<LayerSpec> spec = {{3, 8, Activation::tanh}, {8, 1, Activation::identity}};
    const Model net = init_params(spec, 500 + t, 2.0);
    CHECK(poincare_check(standard_gaussian(3), as_scalar_function(net), 20000, t).passed);
  }
}

TEST_CASE("rho estimates") {
  std::vector<ScalarFunction> proj;
  for (int j = 0; j < 3; ++j) proj.push_back(linear_function(Eigen::VectorXd::Unit(3, j)));
  CHECK(estimate_rho_lower(standard_gaussian(3), proj, 100000, 1) == doctest::Approx(1.0).epsilon(0.03));

  const DistributionSpec unit = uniform_box(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1));
  const double rho = estimate_rho_lower(unit, {cosine_function(1, 0)}, 100000, 2);
  CHECK(rho == doctest::Approx(1.0 / (std::numbers::pi * std::numbers::pi)).epsilon(0.05));

  CHECK_THROWS_AS(estimate_rho_lower(unit, {constant_function(1, 1.0)}, 1000, 1), ParameterError);
  CHECK_THROWS_AS(estimate_rho_lower(unit, {}, 1000, 1), ParameterError);
  CHECK_THROWS_AS(poincare_check(two_intervals(), linear_function(Eigen::VectorXd::Ones(1)), 100, 1),
                  ParameterError);
}

TEST_CASE("default family never exceeds a known constant beyond MC error") {
  for (const DistributionSpec& spec :
       {standard_gaussian(2), uniform_box(Eigen::VectorXd::Zero(2), Eigen::Vector2d(1, 3)),
        diagonal_gaussian(Eigen::Vector2d(0, 0), Eigen::Vector2d(0.5, 2.0))}) {
    const Dataset x = sample(spec, 50000, 3);
    for (const ScalarFunction& u : default_rho_family(2)) {
      CHECK(poincare_check_on(x, u, *spec.rho).passed);
    }
  }
  CHECK(resolve_rho(standard_gaussian(2), 10, 1) == 1.0);
  const double est = resolve_rho(separated_mixture(2, 2, 3.0), 20000, 1);
  CHECK(est > 1.0);
}
