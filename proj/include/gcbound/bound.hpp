#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gcbound/dist.hpp"
#include "gcbound/margin.hpp"
#include "gcbound/net.hpp"
#include "gcbound/types.hpp"

namespace gcbound {

/// Every input and the three additive terms of the margin bound.
/// k = 1 denotes the binary ({-1, +1}) case.
struct BoundReport {
  int k = 1;
  std::size_t m = 0;
  double gamma = 0.0;
  double delta = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double rho = 0.0;
  double c_tilde = 0.0;
  MarginLossVariant variant = MarginLossVariant::indicator;
  double empirical_margin_loss = 0.0;
  double complexity_term = 0.0;
  double confidence_term = 0.0;
  double total = 0.0;
  std::optional<double> observed_test_error;
};

// a2 + sqrt(a1 rho / delta)
double c_tilde(double a1, double a2, double rho, double delta);

// 3 sqrt(log(2/delta) / (2m))
double confidence_term(std::size_t m, double delta);

// k = 1: 12 C sqrt(pi) / (gamma m); k > 1: 36 C sqrt(k pi) / (gamma m).
double complexity_term(double c_tilde_value, double gamma, std::size_t m, int k);

// Builds the report from an already computed empirical margin loss.
BoundReport assemble_bound(int k, std::size_t m, double gamma, double delta, double rho, double a1, double a2,
                           double empirical_margin_loss,
                           MarginLossVariant variant = MarginLossVariant::indicator);

BoundReport bound_binary(const Model& model, const LabeledSet& s, double gamma, double delta, double rho, double a1,
                         double a2, MarginLossVariant variant = MarginLossVariant::indicator);

BoundReport bound_multiclass(const Model& model, const LabeledSet& s, double gamma, double delta, double rho,
                             double a1, double a2, MarginLossVariant variant = MarginLossVariant::indicator);

struct Budgets {
  double a1 = 0.0;
  double a2 = 0.0;
  double gc_empirical = 0.0;
  double jacobian_bound = 0.0;  // L in the GC concentration slack
  double mean_norm = 0.0;       // |sample mean of f|
  double a2_slack = 0.0;
  std::string a1_provenance;
  std::string a2_provenance;
};

// Data-driven certificates for GC(f, mu) <= a1 and |E f| <= a2, each holding
// with probability at least 1 - delta/2.
//
// a1 is the GC concentration bound with L = jacobian_norm_bound(model).
// a2 adds to the sample-mean norm either a McDiarmid slack (when the last
// hidden layer is tanh, outputs are bounded by B = |W|_2 sqrt(h) + |b| and
// the slack is 2B sqrt(log(2/delta)/(2m))) or, for unbounded outputs, the
// Chebyshev slack sqrt(2 rho a1 / (m delta)) from the Poincaré inequality.
Budgets certify_budgets(const Model& model, const DistributionSpec& spec, const Dataset& train_x, double delta,
                        std::optional<double> rho = std::nullopt);

struct BoundCheck {
  BoundReport report;
  Budgets budgets;
  bool holds = false;
};

// Certifies budgets on the training inputs, evaluates the bound at gamma and
// compares it with the observed test misclassification rate. When the
// distribution has no known rho it is estimated from `rho_samples` draws.
BoundCheck bound_check(const Model& model, const DistributionSpec& spec, const LabeledSet& train,
                       const LabeledSet& test, double gamma, double delta, std::uint64_t seed = 0,
                       MarginLossVariant variant = MarginLossVariant::indicator, std::size_t rho_samples = 20000);

}  // namespace gcbound
