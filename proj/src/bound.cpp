#include "gcbound/bound.hpp"

#include <cmath>
#include <numbers>

#include "gcbound/errors.hpp"
#include "gcbound/gc.hpp"

namespace gcbound {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
}

}  // namespace

double c_tilde(double a1, double a2, double rho, double delta) {
  check_delta(delta);
  if (!(a1 >= 0.0) || !(a2 >= 0.0)) throw ParameterError("budgets a1, a2 must be non-negative");
  if (!(rho > 0.0)) throw ParameterError("rho must be positive");
  return a2 + std::sqrt(a1 * rho / delta);
}

double confidence_term(std::size_t m, double delta) {
  check_delta(delta);
  if (m < 1) throw ParameterError("m must be at least 1");
  return 3.0 * std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(m)));
}

double complexity_term(double c_tilde_value, double gamma, std::size_t m, int k) {
  if (!(gamma > 0.0)) throw ParameterError("margin gamma must be positive");
  if (m < 1) throw ParameterError("m must be at least 1");
  if (k < 1) throw ParameterError("k must be at least 1");
  const double denom = gamma * static_cast<double>(m);
  if (k == 1) return 12.0 * c_tilde_value * std::sqrt(std::numbers::pi) / denom;
  return 36.0 * c_tilde_value * std::sqrt(k * std::numbers::pi) / denom;
}

BoundReport assemble_bound(int k, std::size_t m, double gamma, double delta, double rho, double a1, double a2,
                           double empirical_margin_loss, MarginLossVariant variant) {
  if (!(empirical_margin_loss >= 0.0 && empirical_margin_loss <= 1.0)) {
    throw ParameterError("empirical margin loss must lie in [0, 1]");
  }
  BoundReport r;
  r.k = k;
  r.m = m;
  r.gamma = gamma;
  r.delta = delta;
  r.a1 = a1;
  r.a2 = a2;
  r.rho = rho;
  r.variant = variant;
  r.c_tilde = c_tilde(a1, a2, rho, delta);
  r.empirical_margin_loss = empirical_margin_loss;
  r.complexity_term = complexity_term(r.c_tilde, gamma, m, k);
  r.confidence_term = confidence_term(m, delta);
  r.total = r.empirical_margin_loss + r.complexity_term + r.confidence_term;
  return r;
}

BoundReport bound_binary(const Model& model, const LabeledSet& s, double gamma, double delta, double rho, double a1,
                         double a2, MarginLossVariant variant) {
  if (model.output_dim() != 1) throw ShapeError("binary bound needs a scalar-output model");
  const double loss = empirical_margin_loss(model, s, gamma, variant);
  return assemble_bound(1, s.size(), gamma, delta, rho, a1, a2, loss, variant);
}

BoundReport bound_multiclass(const Model& model, const LabeledSet& s, double gamma, double delta, double rho,
                             double a1, double a2, MarginLossVariant variant) {
  if (model.output_dim() < 2) throw ShapeError("multiclass bound needs k >= 2 logits");
  const double loss = empirical_margin_loss(model, s, gamma, variant);
  return assemble_bound(model.output_dim(), s.size(), gamma, delta, rho, a1, a2, loss, variant);
}

Budgets certify_budgets(const Model& model, const DistributionSpec& spec, const Dataset& train_x, double delta,
                        std::optional<double> rho) {
  check_delta(delta);
  if (train_x.rows() == 0) throw ParameterError("empty training set");
  const auto m = static_cast<std::size_t>(train_x.rows());
  Budgets b;
  const GcEstimate gc = gc_empirical(model, train_x);
  b.gc_empirical = gc.value;
  b.jacobian_bound = jacobian_norm_bound(model);
  b.a1 = prop1_bound(gc, b.jacobian_bound, m, delta);
  b.a1_provenance = "gc_empirical + L^2 sqrt(log(2/delta)/(2m)), L = |W_last|_F prod |W_l|_2";

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(model.output_dim());
  for (Eigen::Index i = 0; i < train_x.rows(); ++i) {
    mean += (model.forward(train_x.row(i).transpose()) - mean) / static_cast<double>(i + 1);
  }
  b.mean_norm = mean.norm();

  const auto& layers = model.layers();
  const double root = std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(m)));
  if (layers.size() >= 2 && layers[layers.size() - 2].spec.activation == Activation::tanh) {
    const Layer& last = layers.back();
    const double bound = spectral_norm(last.weight) * std::sqrt(static_cast<double>(last.spec.input_dim)) +
                         last.bias.norm();
    b.a2_slack = 2.0 * bound * root;
    b.a2_provenance = "mean norm + 2B sqrt(log(2/delta)/(2m)), B = |W_last|_2 sqrt(h) + |b_last|";
  } else {
    const double r = rho ? *rho : resolve_rho(spec, 20000, derive_seed(model.seed(), 7));
    b.a2_slack = std::sqrt(2.0 * r * b.a1 / (static_cast<double>(m) * delta));
    b.a2_provenance = "mean norm + sqrt(2 rho a1 / (m delta)) (Chebyshev + Poincare)";
  }
  b.a2 = b.mean_norm + b.a2_slack;
  return b;
}

BoundCheck bound_check(const Model& model, const DistributionSpec& spec, const LabeledSet& train,
                       const LabeledSet& test, double gamma, double delta, std::uint64_t seed,
                       MarginLossVariant variant, std::size_t rho_samples) {
  if (test.size() == 0) throw ParameterError("empty test set");
  const double rho = resolve_rho(spec, rho_samples, derive_seed(seed, 1));
  BoundCheck out;
  out.budgets = certify_budgets(model, spec, train.x, delta, rho);
  out.report = model.output_dim() == 1
                   ? bound_binary(model, train, gamma, delta, rho, out.budgets.a1, out.budgets.a2, variant)
                   : bound_multiclass(model, train, gamma, delta, rho, out.budgets.a1, out.budgets.a2, variant);
  const double observed = misclassification_rate(model, test);
  out.report.observed_test_error = observed;
  out.holds = observed <= out.report.total;
  return out;
}

}  // namespace gcbound
