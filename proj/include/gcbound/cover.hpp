#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "gcbound/net.hpp"
#include "gcbound/types.hpp"

namespace gcbound {

struct CoverResult {
  double epsilon = 0.0;
  Dataset centers;  // one center per row, taken from the input points
  std::vector<std::size_t> center_indices;
  std::size_t n_centers = 0;
};

// Scan-order greedy cover: a point becomes a center iff it is farther than
// epsilon (Euclidean) from every center chosen so far. The centers are
// pairwise more than epsilon apart, so the result is also an epsilon-packing.
CoverResult greedy_cover(const Dataset& points, double epsilon);

// True when every point lies within epsilon of some center.
bool is_valid_cover(const Dataset& points, const Dataset& centers, double epsilon);

// (1/epsilon) * (a2 + sqrt(a1 rho / delta)): covering bound for scalar
// function values.
double lemma1_bound(double a1, double a2, double rho, double delta, double epsilon);

// (3/epsilon)^k * (a2 + sqrt(a1 rho / delta))^k: covering bound in R^k.
double lemma2_bound(double a1, double a2, double rho, double delta, double epsilon, int k);

// Abramowitz-Stegun 7.1.26; absolute error below 1.5e-7.
double erf_rational(double x);

struct DudleyEval {
  double c_tilde = 0.0;
  double alpha = 0.0;
  double exact_integral = 0.0;  // closed-form antiderivative
  double upper_bound = 0.0;     // c_tilde sqrt(pi)/2 - alpha sqrt(log(c_tilde/alpha))
  double quadrature = 0.0;      // adaptive Gauss-Kronrod
};

// Integral of sqrt(log(c_tilde / eps)) over [alpha, c_tilde], three ways.
DudleyEval dudley_eval(double c_tilde, double alpha, int max_subintervals = 2000);

// Adaptive 15-point Gauss-Kronrod integration with global bisection of the
// worst interval.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-13,
                          int max_subintervals = 2000);

// k = 1: 6 C sqrt(pi) / m; k > 1: 18 C sqrt(k pi) / m.
double rademacher_upper(double c_tilde, std::size_t m, int k);

// Mean over `draws` random sign vectors of max over models of
// (1/m) sum_i sigma_i f(x_i). Models must have scalar output.
double rademacher_empirical(const std::vector<Model>& models, const Dataset& sx, std::size_t draws,
                            std::uint64_t seed);

// Same estimator on precomputed outputs (m rows, one column per model).
double rademacher_empirical(const Eigen::MatrixXd& outputs, std::size_t draws, std::uint64_t seed);

// Exact expectation over all 2^m sign vectors (m <= 24).
double rademacher_exhaustive(const Eigen::MatrixXd& outputs);

}  // namespace gcbound
