#include "gcbound/gc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcbound/errors.hpp"

namespace gcbound {

std::string to_string(GcKind kind) {
  switch (kind) {
    case GcKind::empirical:
      return "empirical";
    case GcKind::theoretical_mc:
      return "theoretical_mc";
    case GcKind::closed_form:
      return "closed_form";
  }
  return "empirical";
}

GcEstimate gc_empirical(const Model& model, const Dataset& dataset) {
  if (dataset.rows() == 0) throw ParameterError("empty dataset");
  if (dataset.cols() != model.input_dim()) throw ShapeError("dataset dimension does not match model");
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < dataset.rows(); ++i) {
    const double v = model.jacobian_sq_norm(dataset.row(i).transpose());
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }
  GcEstimate out;
  out.value = mean;
  out.n = count;
  out.kind = GcKind::empirical;
  if (count > 1) {
    const double n = static_cast<double>(count);
    out.std_error = std::sqrt(std::max(0.0, m2) / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

GcEstimate gc_theoretical_mc(const Model& model, const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("theoretical GC estimate needs n >= 2");
  GcEstimate out = gc_empirical(model, sample(spec, n, seed));
  out.kind = GcKind::theoretical_mc;
  return out;
}

double gc_linear_closed_form(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) throw DomainError("matrix has non-finite entries");
  return a.squaredNorm();
}

GcEstimate gc_closed_form(const Eigen::MatrixXd& a) { return {gc_linear_closed_form(a), 0, 0.0, GcKind::closed_form}; }

UnbiasednessResult unbiasedness_check(const Model& model, const DistributionSpec& spec, std::size_t m,
                                      std::size_t trials, std::uint64_t seed) {
  if (trials < 30) throw ParameterError("unbiasedness check needs at least 30 trials");
  if (m < 1) throw ParameterError("dataset size must be at least 1");
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double v = gc_empirical(model, sample(spec, m, derive_seed(seed, t))).value;
    const double delta = v - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (v - mean);
  }
  const GcEstimate ref = gc_theoretical_mc(model, spec, 100 * m, derive_seed(seed, trials));
  UnbiasednessResult out;
  out.mean_of_empirical = mean;
  out.theoretical_ref = ref.value;
  const double nt = static_cast<double>(trials);
  out.se_mean = std::sqrt(std::max(0.0, m2) / (nt - 1.0)) / std::sqrt(nt);
  out.se_ref = ref.std_error;
  const double diff = out.mean_of_empirical - out.theoretical_ref;
  const double se = std::hypot(out.se_mean, out.se_ref);
  if (diff == 0.0) {
    out.z_score = 0.0;
  } else {
    out.z_score = se > 0.0 ? diff / se : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return out;
}

double prop1_slack(double lipschitz, std::size_t m, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) throw ParameterError("Lipschitz constant must be non-negative");
  if (m < 1) throw ParameterError("m must be at least 1");
  return lipschitz * lipschitz * std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(m)));
}

double prop1_bound(const GcEstimate& gc_emp, double lipschitz, std::size_t m, double delta) {
  if (gc_emp.kind != GcKind::empirical || gc_emp.n != m) {
    throw ParameterError("prop1_bound needs an empirical estimate over exactly m points");
  }
  return gc_emp.value + prop1_slack(lipschitz, m, delta);
}

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

double lipschitz_upper(const Model& model) {
  double p = 1.0;
  for (const Layer& layer : model.layers()) p *= spectral_norm(layer.weight);
  return p;
}

double jacobian_norm_bound(const Model& model) {
  const auto& layers = model.layers();
  double p = layers.back().weight.norm();
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) p *= spectral_norm(layers[l].weight);
  return p;
}

}  // namespace gcbound
