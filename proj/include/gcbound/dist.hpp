#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gcbound/types.hpp"

namespace gcbound {

class Model;

struct StandardGaussian {
  int dim = 1;
};

struct DiagonalGaussian {
  Eigen::VectorXd mean;
  Eigen::VectorXd variances;
};

struct UniformBox {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

struct GaussianMixture {
  std::vector<DiagonalGaussian> components;
  std::vector<double> weights;
};

// Uniform on the union of two disjoint boxes, each drawn with probability 1/2.
struct DisconnectedUniform {
  UniformBox first;
  UniformBox second;
};

using DistributionShape =
    std::variant<StandardGaussian, DiagonalGaussian, UniformBox, GaussianMixture, DisconnectedUniform>;

/// Input distribution together with its Poincaré constant, when known.
struct DistributionSpec {
  DistributionShape shape;
  std::optional<double> rho;
};

// Catalogue constructors. Known constants: standard Gaussian 1, diagonal
// Gaussian max variance, box (longest side / pi)^2. Mixtures and disconnected
// supports are left unknown.
DistributionSpec standard_gaussian(int dim);
DistributionSpec diagonal_gaussian(Eigen::VectorXd mean, Eigen::VectorXd variances);
DistributionSpec uniform_box(Eigen::VectorXd lo, Eigen::VectorXd hi);
DistributionSpec gaussian_mixture(std::vector<DiagonalGaussian> components, std::vector<double> weights);
DistributionSpec disconnected_uniform(UniformBox first, UniformBox second);

// Two unit-variance components at -separation*e_1 and +separation*e_1 (and
// more components spread on a circle in the first two coordinates when
// k > 2), equal weights.
DistributionSpec separated_mixture(int dim, int k, double separation, double variance = 1.0);

int dimension(const DistributionSpec& spec);
std::string describe(const DistributionSpec& spec);

// Throws SpecError when an invariant is broken.
void validate(const DistributionSpec& spec);

// Euclidean distance between two axis-aligned boxes (0 when they touch).
double box_gap(const UniformBox& a, const UniformBox& b);

Dataset sample(const DistributionSpec& spec, std::size_t m, std::uint64_t seed);

// Like sample(), also returning the mixture component index (0-based) of each
// draw. Non-mixture shapes report component 0, DisconnectedUniform 0 or 1.
Dataset sample_with_components(const DistributionSpec& spec, std::size_t m, std::uint64_t seed,
                               std::vector<int>& components);

/// Real-valued test function with its gradient.
struct ScalarFunction {
  std::function<double(VecRef)> value;
  std::function<Eigen::VectorXd(VecRef)> gradient;
};

// Wraps a scalar-output model (its logit).
ScalarFunction as_scalar_function(const Model& model);

// u(x) = w . x
ScalarFunction linear_function(Eigen::VectorXd w);

// u(x) = cos(pi * x_coord)
ScalarFunction cosine_function(int dim, int coord, double frequency = 3.141592653589793);

ScalarFunction constant_function(int dim, double c);

struct PoincareCheck {
  double var_hat = 0.0;          // unbiased sample variance of u
  double grad_energy_hat = 0.0;  // sample mean of |grad u|^2
  double rho_used = 0.0;
  double ratio = 0.0;  // var_hat / (rho_used * grad_energy_hat)
  std::size_t n = 0;
  double se_var = 0.0;
  double se_energy = 0.0;
  bool passed = false;

  // sqrt(se_var^2 + (rho_used * se_energy)^2)
  double combined_se() const;
};

// Monte-Carlo check of Var(u) <= rho * E|grad u|^2; passes when the
// violation is within 3 combined standard errors. rho defaults to spec.rho.
PoincareCheck poincare_check(const DistributionSpec& spec, const ScalarFunction& u, std::size_t m,
                             std::uint64_t seed, std::optional<double> rho = std::nullopt);

// Same statistics on an already drawn sample.
PoincareCheck poincare_check_on(const Dataset& x, const ScalarFunction& u, double rho);

// max over the family of var_hat / grad_energy_hat on one shared sample.
double estimate_rho_lower(const DistributionSpec& spec, const std::vector<ScalarFunction>& family,
                          std::size_t m, std::uint64_t seed);

// Projections onto each coordinate plus tanh(s * x_j) at a few scales; used
// when a distribution carries no known constant.
std::vector<ScalarFunction> default_rho_family(int dim);

// The distribution's known rho, otherwise estimate_rho_lower with the default family.
double resolve_rho(const DistributionSpec& spec, std::size_t m, std::uint64_t seed);

// Smooth function equal to values[i] on a neighbourhood of components[i],
// with 6t^5 - 15t^4 + 10t^3 transitions confined to the gaps between them.
ScalarFunction build_bump(const std::vector<UniformBox>& components, const std::vector<double>& values);

}  // namespace gcbound
