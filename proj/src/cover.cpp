#include "gcbound/cover.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include "gcbound/errors.hpp"

namespace gcbound {

namespace {

void check_budget_args(double a1, double a2, double rho, double delta, double epsilon) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  if (!(a1 >= 0.0) || !(a2 >= 0.0)) throw ParameterError("budgets a1, a2 must be non-negative");
  if (!(rho > 0.0)) throw ParameterError("rho must be positive");
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
}

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = kKronrodWeights[7] * f(center);
  double gauss = kGaussWeights[3] * f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

CoverResult greedy_cover(const Dataset& points, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (points.rows() == 0) throw ParameterError("cannot cover an empty point set");
  CoverResult out;
  out.epsilon = epsilon;
  const double eps2 = epsilon * epsilon;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    bool covered = false;
    for (std::size_t c : out.center_indices) {
      if ((points.row(i) - points.row(static_cast<Eigen::Index>(c))).squaredNorm() <= eps2) {
        covered = true;
        break;
      }
    }
    if (!covered) out.center_indices.push_back(static_cast<std::size_t>(i));
  }
  out.n_centers = out.center_indices.size();
  out.centers.resize(static_cast<Eigen::Index>(out.n_centers), points.cols());
  for (std::size_t c = 0; c < out.n_centers; ++c) {
    out.centers.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(out.center_indices[c]));
  }
  return out;
}

bool is_valid_cover(const Dataset& points, const Dataset& centers, double epsilon) {
  const double eps2 = epsilon * epsilon;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    bool covered = false;
    for (Eigen::Index c = 0; c < centers.rows() && !covered; ++c) {
      covered = (points.row(i) - centers.row(c)).squaredNorm() <= eps2;
    }
    if (!covered) return false;
  }
  return true;
}

double lemma1_bound(double a1, double a2, double rho, double delta, double epsilon) {
  check_budget_args(a1, a2, rho, delta, epsilon);
  return (a2 + std::sqrt(a1 * rho / delta)) / epsilon;
}

double lemma2_bound(double a1, double a2, double rho, double delta, double epsilon, int k) {
  check_budget_args(a1, a2, rho, delta, epsilon);
  if (k < 1) throw ParameterError("output dimension k must be at least 1");
  return std::pow(3.0 * (a2 + std::sqrt(a1 * rho / delta)) / epsilon, k);
}

double erf_rational(double x) {
  constexpr double p = 0.3275911;
  constexpr double a1 = 0.254829592;
  constexpr double a2 = -0.284496736;
  constexpr double a3 = 1.421413741;
  constexpr double a4 = -1.453152027;
  constexpr double a5 = 1.061405429;
  const double ax = std::abs(x);
  const double t = 1.0 / (1.0 + p * ax);
  const double poly = t * (a1 + t * (a2 + t * (a3 + t * (a4 + t * a5))));
  const double y = 1.0 - poly * std::exp(-ax * ax);
  return x < 0.0 ? -y : y;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                          int max_subintervals) {
  if (a == b) return 0.0;
  std::priority_queue<Segment> heap;
  Segment first = kronrod15(f, a, b);
  double error = first.error;
  heap.push(first);
  int intervals = 1;
  while (error > abs_tol && intervals < max_subintervals) {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Sum the leaves left to right so the result does not depend on heap order.
  double sum = 0.0;
  std::vector<Segment> leaves;
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  for (const Segment& s : leaves) sum += s.value;
  return sum;
}

DudleyEval dudley_eval(double c_tilde, double alpha, int max_subintervals) {
  if (!(c_tilde > 0.0) || !std::isfinite(c_tilde)) throw ParameterError("c_tilde must be positive");
  if (!(alpha > 0.0 && alpha <= c_tilde)) throw ParameterError("alpha must lie in (0, c_tilde]");
  if (max_subintervals < 1) throw ParameterError("quadrature needs at least one subinterval");
  DudleyEval out;
  out.c_tilde = c_tilde;
  out.alpha = alpha;
  const double log_ratio = std::log(c_tilde / alpha);
  const double root = std::sqrt(log_ratio);
  const double half_sqrt_pi = 0.5 * std::sqrt(std::numbers::pi);
  // [eps sqrt(log(C/eps)) - (C sqrt(pi)/2) erf(sqrt(log(C/eps)))] from alpha to C.
  out.exact_integral = alpha == c_tilde ? 0.0 : c_tilde * half_sqrt_pi * erf_rational(root) - alpha * root;
  out.upper_bound = c_tilde * half_sqrt_pi - alpha * root;
  out.quadrature = integrate_adaptive(
      [c_tilde](double eps) { return std::sqrt(std::max(0.0, std::log(c_tilde / eps))); }, alpha, c_tilde, 1e-13,
      max_subintervals);
  return out;
}

double rademacher_upper(double c_tilde, std::size_t m, int k) {
  if (!(c_tilde >= 0.0)) throw ParameterError("c_tilde must be non-negative");
  if (m < 1) throw ParameterError("m must be at least 1");
  if (k < 1) throw ParameterError("k must be at least 1");
  const double dm = static_cast<double>(m);
  if (k == 1) return 6.0 * c_tilde * std::sqrt(std::numbers::pi) / dm;
  return 18.0 * c_tilde * std::sqrt(k * std::numbers::pi) / dm;
}

double rademacher_empirical(const Eigen::MatrixXd& outputs, std::size_t draws, std::uint64_t seed) {
  if (outputs.cols() == 0) throw ParameterError("model list is empty");
  if (outputs.rows() == 0) throw ParameterError("sample is empty");
  if (draws < 1) throw ParameterError("need at least one sign draw");
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);
  const auto m = outputs.rows();
  Eigen::VectorXd sigma(m);
  double total = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    for (Eigen::Index i = 0; i < m; ++i) sigma(i) = coin(rng) ? 1.0 : -1.0;
    const Eigen::VectorXd corr = outputs.transpose() * sigma / static_cast<double>(m);
    total += corr.maxCoeff();
  }
  return total / static_cast<double>(draws);
}

double rademacher_exhaustive(const Eigen::MatrixXd& outputs) {
  if (outputs.cols() == 0) throw ParameterError("model list is empty");
  if (outputs.rows() == 0) throw ParameterError("sample is empty");
  if (outputs.rows() > 24) throw ParameterError("exhaustive enumeration limited to m <= 24");
  const auto m = outputs.rows();
  const std::uint64_t count = std::uint64_t{1} << m;
  Eigen::VectorXd sigma(m);
  double total = 0.0;
  for (std::uint64_t s = 0; s < count; ++s) {
    for (Eigen::Index i = 0; i < m; ++i) sigma(i) = (s >> i) & 1u ? 1.0 : -1.0;
    const Eigen::VectorXd corr = outputs.transpose() * sigma / static_cast<double>(m);
    total += corr.maxCoeff();
  }
  return total / static_cast<double>(count);
}

double rademacher_empirical(const std::vector<Model>& models, const Dataset& sx, std::size_t draws,
                            std::uint64_t seed) {
  if (models.empty()) throw ParameterError("model list is empty");
  Eigen::MatrixXd outputs(sx.rows(), static_cast<Eigen::Index>(models.size()));
  for (std::size_t j = 0; j < models.size(); ++j) {
    if (models[j].output_dim() != 1) throw ShapeError("rademacher estimate needs scalar-output models");
    for (Eigen::Index i = 0; i < sx.rows(); ++i) {
      outputs(i, static_cast<Eigen::Index>(j)) = models[j].forward(sx.row(i).transpose())(0);
    }
  }
  return rademacher_empirical(outputs, draws, seed);
}

}  // namespace gcbound
