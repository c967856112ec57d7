#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "gcbound/dist.hpp"
#include "gcbound/net.hpp"
#include "gcbound/types.hpp"

namespace gcbound {

enum class GcKind { empirical, theoretical_mc, closed_form };

std::string to_string(GcKind kind);

/// Geometric complexity: mean squared Frobenius norm of the logit Jacobian.
struct GcEstimate {
  double value = 0.0;
  std::size_t n = 0;
  double std_error = 0.0;  // 0 for closed_form
  GcKind kind = GcKind::empirical;
};

// Mean of |J(x)|_F^2 over the rows of the dataset. Running (Welford) mean, so
// a constant integrand is reproduced exactly.
GcEstimate gc_empirical(const Model& model, const Dataset& dataset);

// gc_empirical on a fresh n-point sample from the distribution.
GcEstimate gc_theoretical_mc(const Model& model, const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

// |A|_F^2
double gc_linear_closed_form(const Eigen::MatrixXd& a);
GcEstimate gc_closed_form(const Eigen::MatrixXd& a);

struct UnbiasednessResult {
  double mean_of_empirical = 0.0;
  double theoretical_ref = 0.0;
  double z_score = 0.0;
  double se_mean = 0.0;
  double se_ref = 0.0;
};

// Averages gc_empirical over `trials` independent m-point datasets and
// compares it with a 100*m-point theoretical reference.
UnbiasednessResult unbiasedness_check(const Model& model, const DistributionSpec& spec, std::size_t m,
                                      std::size_t trials, std::uint64_t seed);

// Concentration slack L^2 * sqrt(log(2/delta) / (2m)). The squared constant
// follows from the bounded difference |GC(f,D) - GC(f,D')| <= L^2/m that
// feeds McDiarmid's inequality.
double prop1_slack(double lipschitz, std::size_t m, double delta);

// gc_emp.value + prop1_slack(L, m, delta); holds for GC(f, mu) with
// probability at least 1 - delta/2.
double prop1_bound(const GcEstimate& gc_emp, double lipschitz, std::size_t m, double delta);

// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& a);

// Product of per-layer spectral norms (relu and tanh are 1-Lipschitz).
double lipschitz_upper(const Model& model);

// |W_last|_F times the spectral norms of the other layers; bounds
// sup_x |J(x)|_F, the quantity the concentration argument needs.
double jacobian_norm_bound(const Model& model);

}  // namespace gcbound
