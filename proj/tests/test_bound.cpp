#include <cmath>

#include "doctest.h"
#include "gcbound/bound.hpp"
#include "gcbound/errors.hpp"
#include "gcbound/gc.hpp"
#include "gcbound/harness.hpp"
#include "gcbound/margin.hpp"

using namespace gcbound;

namespace {

// 30-digit evaluations of the bound expressions at m = 2000, gamma = 1,
// delta = 0.2, C = 5.
constexpr double kConfidence = 0.0719778886828212181;
constexpr double kComplexityBinary = 0.0531736155271654808;
constexpr double kComplexityK4 = 0.319041693162992885;
constexpr double kTotalBinary = 0.225151504209986704;
constexpr double kTotalK4 = 0.491019581845814103;
constexpr double kConfidenceHalf = 0.0558494611658855120;  // delta = 0.5

// 2000 points; margin 2 for 1800 of them and 0.5 for the other 200, so the
// indicator loss at gamma = 1 is 0.1.
LabeledSet tenth_below_one() {
  LabeledSet s;
  s.x = Dataset::Zero(2000, 1);
  s.y.assign(2000, 1);
  for (int i = 0; i < 2000; ++i) s.x(i, 0) = i < 200 ? 0.5 : 2.0;
  return s;
}

}  // namespace

TEST_CASE("c_tilde") {
  CHECK(c_tilde(4, 1, 1, 0.25) == 5.0);
  CHECK(c_tilde(0, 2.5, 3, 0.1) == 2.5);
  CHECK(c_tilde(1, 1, 1, 0.1) > c_tilde(1, 1, 1, 0.2));
  CHECK_THROWS_AS(c_tilde(1, 1, 1, 0.0), ParameterError);
  CHECK_THROWS_AS(c_tilde(-1, 1, 1, 0.5), ParameterError);
}

TEST_CASE("frozen bound arithmetic") {
  CHECK(confidence_term(2000, 0.2) == doctest::Approx(kConfidence).epsilon(1e-14));
  CHECK(confidence_term(2000, 0.5) == doctest::Approx(kConfidenceHalf).epsilon(1e-14));
  CHECK(complexity_term(5, 1, 2000, 1) == doctest::Approx(kComplexityBinary).epsilon(1e-14));
  CHECK(complexity_term(5, 1, 2000, 4) == doctest::Approx(kComplexityK4).epsilon(1e-14));
  // C = 5 via a1 = 0, a2 = 5.
  const BoundReport b = assemble_bound(1, 2000, 1.0, 0.2, 1.0, 0.0, 5.0, 0.1);
  CHECK(std::abs(b.total - kTotalBinary) <= 1e-12);
  const BoundReport m = assemble_bound(4, 2000, 1.0, 0.2, 1.0, 0.0, 5.0, 0.1);
  CHECK(std::abs(m.total - kTotalK4) <= 1e-12);
  // The k = 1 and k > 1 constants differ by a factor 3 at k = 1.
  CHECK(36.0 * 5.0 * std::sqrt(std::numbers::pi) / 2000.0 == doctest::Approx(3.0 * complexity_term(5, 1, 2000, 1)));
}

TEST_CASE("bound_binary on a model") {
  const Model f = affine_model(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1));
  const LabeledSet s = tenth_below_one();
  const BoundReport r = bound_binary(f, s, 1.0, 0.2, 1.0, 0.0, 5.0);
  CHECK(r.empirical_margin_loss == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(std::abs(r.total - kTotalBinary) <= 1e-12);
  CHECK(r.total == r.empirical_margin_loss + r.complexity_term + r.confidence_term);
  CHECK(r.k == 1);
  CHECK(r.m == 2000);

  const BoundReport z = bound_binary(f, s, 1.0, 0.2, 1.0, 0.0, 0.0);
  CHECK(z.complexity_term == 0.0);
  CHECK(z.total == z.empirical_margin_loss + z.confidence_term);

  const BoundReport wide = bound_binary(f, s, 1e9, 0.2, 1.0, 1.0, 1.0);
  CHECK(wide.empirical_margin_loss == 1.0);
  CHECK(wide.complexity_term < 1e-9);
  CHECK_THROWS_AS(bound_multiclass(f, s, 1.0, 0.2, 1.0, 0.0, 5.0), ShapeError);
}

TEST_CASE("bound_multiclass on a model") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 1);
  a(0, 0) = 1.0;  // class 1 logit x, the rest 0, so the margin is x
  const Model f = affine_model(a, Eigen::VectorXd::Zero(4));
  const LabeledSet s = tenth_below_one();
  const BoundReport r = bound_multiclass(f, s, 1.0, 0.2, 1.0, 0.0, 5.0);
  CHECK(r.k == 4);
  CHECK(std::abs(r.total - kTotalK4) <= 1e-12);
  CHECK(r.complexity_term >= 0.0);
  CHECK(r.confidence_term >= 0.0);
}

TEST_CASE("monotonicity on grids") {
  auto total = [](std::size_t m, double gamma, double delta, double rho, double a1, double a2) {
    return assemble_bound(2, m, gamma, delta, rho, a1, a2, 0.05).total;
  };
  for (std::size_t m : {100, 1000, 10000}) {
    CHECK(total(m, 1, 0.2, 1, 1, 1) >= total(2 * m, 1, 0.2, 1, 1, 1));
  }
  for (double g : {0.1, 0.5, 2.0}) {
    CHECK(complexity_term(3.0, g, 500, 2) >= complexity_term(3.0, 2 * g, 500, 2));
  }
  for (double v : {0.1, 1.0, 5.0}) {
    CHECK(total(500, 1, 0.2, 1, v, 1) < total(500, 1, 0.2, 1, 2 * v, 1));
    CHECK(total(500, 1, 0.2, 1, 1, v) < total(500, 1, 0.2, 1, 1, 2 * v));
    CHECK(total(500, 1, 0.2, v, 1, 1) < total(500, 1, 0.2, 2 * v, 1, 1));
  }
  for (double d : {0.05, 0.2, 0.4}) CHECK(total(500, 1, d, 1, 1, 1) > total(500, 1, 2 * d, 1, 1, 1));
  CHECK_THROWS_AS(assemble_bound(1, 10, 1.0, 0.2, 1.0, 1.0, 1.0, 1.5), ParameterError);
  CHECK_THROWS_AS(complexity_term(1.0, 0.0, 10, 1), ParameterError);
}

TEST_CASE("certified budgets") {
  Eigen::MatrixXd a(1, 2);
  a << 1.0, 2.0;
  const Model lin = affine_model(a, Eigen::VectorXd::Constant(1, 0.5));
  const Dataset x = sample(standard_gaussian(2), 200, 1);
  const Budgets b = certify_budgets(lin, standard_gaussian(2), x, 0.2);
  CHECK(b.a1 == 5.0 + prop1_slack(std::sqrt(5.0), 200, 0.2));
  CHECK(b.a2 >= b.mean_norm);
  CHECK(b.a2 == b.mean_norm + b.a2_slack);
  CHECK_FALSE(b.a1_provenance.empty());
  CHECK_FALSE(b.a2_provenance.empty());

  const Model zero = affine_model(Eigen::MatrixXd::Zero(1, 2), Eigen::VectorXd::Zero(1));
  const Budgets z = certify_budgets(zero, standard_gaussian(2), x, 0.2);
  CHECK(z.a1 == 0.0);
  CHECK(z.a2 == z.a2_slack);
}

TEST_CASE("certified a1 covers the population GC") {
  const std::vector<LayerSpec> spec = {{2, 6, Activation::tanh}, {6, 1, Activation::identity}};
  const Model f = init_params(spec, 3, 2.0);
  const double reference = gc_theoretical_mc(f, standard_gaussian(2), 200000, 99).value;
  int covered = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Dataset x = sample(standard_gaussian(2), 100, 1000 + t);
    if (certify_budgets(f, standard_gaussian(2), x, 0.2).a1 >= reference) ++covered;
  }
  CHECK(covered >= 180);  // 1 - delta/2 of 200
}

TEST_CASE("bound_check") {
  TrainConfig config;
  config.dim = 2;
  config.k = 1;
  config.hidden = {8};
  config.n_train = 200;
  config.n_test = 500;
  config.batch_size = 50;
  config.steps = 200;
  config.eval_every = 100;
  config.gc_mc_samples = 100;
  Model model = initial_model(config);
  train_sgd(config, model);
  const Task task = make_task(config);
  const double gamma = median_positive_margin(compute_margins(model, task.train));
  const BoundCheck c = bound_check(model, config.distribution(), task.train, task.test, gamma, 0.2, 1);
  CHECK(c.report.observed_test_error.has_value());
  CHECK(c.holds == (*c.report.observed_test_error <= c.report.total));
  if (c.report.total >= 1.0) CHECK(c.holds);

  config.label_mode = LabelMode::random;
  Model noisy = initial_model(config);
  train_sgd(config, noisy);
  const Task random_task = make_task(config);
  const BoundCheck r = bound_check(noisy, config.distribution(), random_task.train, random_task.test, 1e-6, 0.2, 2);
  CHECK(r.report.empirical_margin_loss >= 0.3);
  CHECK(r.holds);
}
