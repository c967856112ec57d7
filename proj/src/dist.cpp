#include "gcbound/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gcbound/errors.hpp"
#include "gcbound/net.hpp"

namespace gcbound {

namespace {

void validate_box(const UniformBox& box) {
  if (box.lo.size() < 1 || box.lo.size() != box.hi.size()) throw SpecError("box bounds differ in dimension");
  if (!box.lo.allFinite() || !box.hi.allFinite()) throw SpecError("box bounds must be finite");
  for (Eigen::Index i = 0; i < box.lo.size(); ++i) {
    if (!(box.lo(i) < box.hi(i))) throw SpecError("box needs lo < hi in every coordinate");
  }
}

void validate_gaussian(const DiagonalGaussian& g) {
  if (g.mean.size() < 1 || g.mean.size() != g.variances.size()) {
    throw SpecError("gaussian mean and variances differ in dimension");
  }
  if (!g.mean.allFinite() || !g.variances.allFinite() || (g.variances.array() <= 0.0).any()) {
    throw SpecError("gaussian variances must be positive and finite");
  }
}

int box_dim(const UniformBox& b) { return static_cast<int>(b.lo.size()); }

void fill_box(const UniformBox& box, Rng& rng, Eigen::Ref<Eigen::RowVectorXd> row) {
  for (Eigen::Index j = 0; j < box.lo.size(); ++j) {
    std::uniform_real_distribution<double> u(box.lo(j), box.hi(j));
    row(j) = u(rng);
  }
}

void fill_gaussian(const DiagonalGaussian& g, Rng& rng, Eigen::Ref<Eigen::RowVectorXd> row) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index j = 0; j < g.mean.size(); ++j) row(j) = g.mean(j) + std::sqrt(g.variances(j)) * normal(rng);
}

// Distance from x to the box and its gradient (zero inside the box).
double box_distance(const UniformBox& box, VecRef x, Eigen::VectorXd* grad) {
  Eigen::VectorXd diff = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) < box.lo(j)) diff(j) = x(j) - box.lo(j);
    if (x(j) > box.hi(j)) diff(j) = x(j) - box.hi(j);
  }
  const double d = diff.norm();
  if (grad != nullptr) *grad = d > 0.0 ? Eigen::VectorXd(diff / d) : Eigen::VectorXd::Zero(x.size());
  return d;
}

double smoothstep(double t) { return t * t * t * (t * (6.0 * t - 15.0) + 10.0); }
double smoothstep_deriv(double t) { return 30.0 * t * t * (t - 1.0) * (t - 1.0); }

}  // namespace

DistributionSpec standard_gaussian(int dim) {
  DistributionSpec spec{StandardGaussian{dim}, 1.0};
  validate(spec);
  return spec;
}

DistributionSpec diagonal_gaussian(Eigen::VectorXd mean, Eigen::VectorXd variances) {
  DistributionSpec spec{DiagonalGaussian{std::move(mean), std::move(variances)}, std::nullopt};
  validate(spec);
  spec.rho = std::get<DiagonalGaussian>(spec.shape).variances.maxCoeff();
  return spec;
}

DistributionSpec uniform_box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  DistributionSpec spec{UniformBox{std::move(lo), std::move(hi)}, std::nullopt};
  validate(spec);
  const auto& box = std::get<UniformBox>(spec.shape);
  const double side = (box.hi - box.lo).maxCoeff();
  spec.rho = (side / std::numbers::pi) * (side / std::numbers::pi);
  return spec;
}

DistributionSpec gaussian_mixture(std::vector<DiagonalGaussian> components, std::vector<double> weights) {
  DistributionSpec spec{GaussianMixture{std::move(components), std::move(weights)}, std::nullopt};
  validate(spec);
  return spec;
}

DistributionSpec disconnected_uniform(UniformBox first, UniformBox second) {
  DistributionSpec spec{DisconnectedUniform{std::move(first), std::move(second)}, std::nullopt};
  validate(spec);
  return spec;
}

DistributionSpec separated_mixture(int dim, int k, double separation, double variance) {
  if (k < 2) throw SpecError("a separated mixture needs at least two components");
  if (dim < 1 || (k > 2 && dim < 2)) throw SpecError("mixture dimension too small for its layout");
  std::vector<DiagonalGaussian> comps;
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    if (k == 2) {
      mean(0) = c == 0 ? separation : -separation;
    } else {
      const double angle = 2.0 * std::numbers::pi * c / k;
      mean(0) = separation * std::cos(angle);
      mean(1) = separation * std::sin(angle);
    }
    comps.push_back({mean, Eigen::VectorXd::Constant(dim, variance)});
  }
  return gaussian_mixture(std::move(comps), std::vector<double>(k, 1.0 / k));
}

int dimension(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StandardGaussian>) {
          return s.dim;
        } else if constexpr (std::is_same_v<T, DiagonalGaussian>) {
          return static_cast<int>(s.mean.size());
        } else if constexpr (std::is_same_v<T, UniformBox>) {
          return box_dim(s);
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          return s.components.empty() ? 0 : static_cast<int>(s.components.front().mean.size());
        } else {
          return box_dim(s.first);
        }
      },
      spec.shape);
}

std::string describe(const DistributionSpec& spec) {
  std::ostringstream out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StandardGaussian>) {
          out << "standard_gaussian(" << s.dim << ")";
        } else if constexpr (std::is_same_v<T, DiagonalGaussian>) {
          out << "diagonal_gaussian(" << s.mean.size() << ")";
        } else if constexpr (std::is_same_v<T, UniformBox>) {
          out << "uniform_box(" << s.lo.size() << ")";
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          out << "gaussian_mixture(" << s.components.size() << " components)";
        } else {
          out << "disconnected_uniform";
        }
      },
      spec.shape);
  return out.str();
}

double box_gap(const UniformBox& a, const UniformBox& b) {
  double sq = 0.0;
  for (Eigen::Index j = 0; j < a.lo.size(); ++j) {
    const double g = std::max({0.0, b.lo(j) - a.hi(j), a.lo(j) - b.hi(j)});
    sq += g * g;
  }
  return std::sqrt(sq);
}

void validate(const DistributionSpec& spec) {
  if (spec.rho && !(*spec.rho > 0.0 && std::isfinite(*spec.rho))) throw SpecError("known rho must be positive");
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StandardGaussian>) {
          if (s.dim < 1) throw SpecError("gaussian dimension must be positive");
        } else if constexpr (std::is_same_v<T, DiagonalGaussian>) {
          validate_gaussian(s);
        } else if constexpr (std::is_same_v<T, UniformBox>) {
          validate_box(s);
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          if (s.components.empty() || s.components.size() != s.weights.size()) {
            throw SpecError("mixture needs one weight per component");
          }
          double total = 0.0;
          for (double w : s.weights) {
            if (!(w > 0.0)) throw SpecError("mixture weights must be positive");
            total += w;
          }
          if (std::abs(total - 1.0) > 1e-12) throw SpecError("mixture weights must sum to 1");
          for (const auto& c : s.components) {
            validate_gaussian(c);
            if (c.mean.size() != s.components.front().mean.size()) {
              throw SpecError("mixture components differ in dimension");
            }
          }
        } else {
          validate_box(s.first);
          validate_box(s.second);
          if (s.first.lo.size() != s.second.lo.size()) throw SpecError("boxes differ in dimension");
          if (!(box_gap(s.first, s.second) > 0.0)) throw SpecError("disconnected boxes must be disjoint");
        }
      },
      spec.shape);
}

Dataset sample_with_components(const DistributionSpec& spec, std::size_t m, std::uint64_t seed,
                               std::vector<int>& components) {
  if (m < 1) throw ParameterError("sample size must be at least 1");
  validate(spec);
  const int d = dimension(spec);
  Dataset x(static_cast<Eigen::Index>(m), d);
  components.assign(m, 0);
  Rng rng(seed);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        for (std::size_t i = 0; i < m; ++i) {
          auto row = x.row(static_cast<Eigen::Index>(i));
          if constexpr (std::is_same_v<T, StandardGaussian>) {
            std::normal_distribution<double> normal(0.0, 1.0);
            for (int j = 0; j < d; ++j) row(j) = normal(rng);
          } else if constexpr (std::is_same_v<T, DiagonalGaussian>) {
            fill_gaussian(s, rng, row);
          } else if constexpr (std::is_same_v<T, UniformBox>) {
            fill_box(s, rng, row);
          } else if constexpr (std::is_same_v<T, GaussianMixture>) {
            std::discrete_distribution<int> pick(s.weights.begin(), s.weights.end());
            const int c = pick(rng);
            components[i] = c;
            fill_gaussian(s.components[c], rng, row);
          } else {
            std::bernoulli_distribution coin(0.5);
            const int c = coin(rng) ? 1 : 0;
            components[i] = c;
            fill_box(c == 0 ? s.first : s.second, rng, row);
          }
        }
      },
      spec.shape);
  return x;
}

Dataset sample(const DistributionSpec& spec, std::size_t m, std::uint64_t seed) {
  std::vector<int> unused;
  return sample_with_components(spec, m, seed, unused);
}

ScalarFunction as_scalar_function(const Model& model) {
  if (model.output_dim() != 1) throw ShapeError("scalar test function needs a one-output model");
  return {[model](VecRef x) { return model.forward(x)(0); },
          [model](VecRef x) -> Eigen::VectorXd { return model.jacobian(x).row(0).transpose(); }};
}

ScalarFunction linear_function(Eigen::VectorXd w) {
  return {[w](VecRef x) { return w.dot(x); }, [w](VecRef) -> Eigen::VectorXd { return w; }};
}

ScalarFunction cosine_function(int dim, int coord, double frequency) {
  return {[=](VecRef x) { return std::cos(frequency * x(coord)); },
          [=](VecRef x) -> Eigen::VectorXd {
            Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
            g(coord) = -frequency * std::sin(frequency * x(coord));
            return g;
          }};
}

ScalarFunction constant_function(int dim, double c) {
  return {[c](VecRef) { return c; }, [dim](VecRef) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(dim); }};
}

double PoincareCheck::combined_se() const {
  return std::sqrt(se_var * se_var + rho_used * rho_used * se_energy * se_energy);
}

PoincareCheck poincare_check_on(const Dataset& x, const ScalarFunction& u, double rho) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
  if (n < 2) throw ParameterError("poincare check needs at least two samples");
  if (!(rho > 0.0)) throw ParameterError("rho must be positive");
  std::vector<double> values(n);
  std::vector<double> energy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = x.row(static_cast<Eigen::Index>(i)).transpose();
    values[i] = u.value(xi);
    energy[i] = u.gradient(xi).squaredNorm();
  }
  const double dn = static_cast<double>(n);
  double mean = 0.0;
  double emean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean += values[i];
    emean += energy[i];
  }
  mean /= dn;
  emean /= dn;
  double m2 = 0.0;
  double m4 = 0.0;
  double esq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = values[i] - mean;
    m2 += c * c;
    m4 += c * c * c * c;
    esq += (energy[i] - emean) * (energy[i] - emean);
  }
  PoincareCheck out;
  out.n = n;
  out.rho_used = rho;
  out.var_hat = m2 / (dn - 1.0);
  out.grad_energy_hat = emean;
  // Var of the unbiased sample variance: (mu4 - sigma^4 (n-3)/(n-1)) / n.
  // Both moments are plug-in (1/n) estimates; mixing in the n-1 variance
  // cancels the whole expression for two-valued functions.
  const double mu4 = m4 / dn;
  const double s4 = (m2 / dn) * (m2 / dn);
  out.se_var = std::sqrt(std::max(0.0, (mu4 - s4 * (dn - 3.0) / (dn - 1.0)) / dn));
  out.se_energy = std::sqrt(esq / (dn - 1.0) / dn);
  const double denom = rho * out.grad_energy_hat;
  if (denom > 0.0) {
    out.ratio = out.var_hat / denom;
  } else {
    out.ratio = out.var_hat > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  out.passed = out.var_hat <= denom + 3.0 * out.combined_se();
  return out;
}

PoincareCheck poincare_check(const DistributionSpec& spec, const ScalarFunction& u, std::size_t m,
                             std::uint64_t seed, std::optional<double> rho) {
  if (m < 2) throw ParameterError("poincare check needs m >= 2");
  const std::optional<double> used = rho ? rho : spec.rho;
  if (!used) throw ParameterError("distribution has no known rho; supply one");
  return poincare_check_on(sample(spec, m, seed), u, *used);
}

double estimate_rho_lower(const DistributionSpec& spec, const std::vector<ScalarFunction>& family,
                          std::size_t m, std::uint64_t seed) {
  if (family.empty()) throw ParameterError("test-function family is empty");
  const Dataset x = sample(spec, m, seed);
  double best = 0.0;
  for (const ScalarFunction& u : family) {
    const PoincareCheck c = poincare_check_on(x, u, 1.0);
    if (!(c.grad_energy_hat > 0.0)) throw ParameterError("test function has zero gradient energy");
    best = std::max(best, c.var_hat / c.grad_energy_hat);
  }
  return best;
}

std::vector<ScalarFunction> default_rho_family(int dim) {
  std::vector<ScalarFunction> family;
  for (int j = 0; j < dim; ++j) {
    family.push_back(linear_function(Eigen::VectorXd::Unit(dim, j)));
    for (double s : {0.5, 1.0, 2.0}) {
      family.push_back({[=](VecRef x) { return std::tanh(s * x(j)); },
                        [=](VecRef x) -> Eigen::VectorXd {
                          const double t = std::tanh(s * x(j));
                          Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
                          g(j) = s * (1.0 - t * t);
                          return g;
                        }});
    }
  }
  return family;
}

double resolve_rho(const DistributionSpec& spec, std::size_t m, std::uint64_t seed) {
  if (spec.rho) return *spec.rho;
  return estimate_rho_lower(spec, default_rho_family(dimension(spec)), m, seed);
}

ScalarFunction build_bump(const std::vector<UniformBox>& components, const std::vector<double>& values) {
  if (components.empty() || components.size() != values.size()) {
    throw ParameterError("bump needs one value per component");
  }
  for (const auto& c : components) {
    try {
      validate_box(c);
    } catch (const SpecError& e) {
      throw ParameterError(e.what());
    }
    if (c.lo.size() != components.front().lo.size()) throw ParameterError("bump components differ in dimension");
  }
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < components.size(); ++a) {
    for (std::size_t b = a + 1; b < components.size(); ++b) {
      gap = std::min(gap, box_gap(components[a], components[b]));
    }
  }
  if (!(gap > 0.0)) throw ParameterError("bump components must be separated by a positive gap");
  if (!std::isfinite(gap)) gap = 1.0;
  // Plateau out to gap/4, transition over [gap/4, gap/2]; supports stay disjoint.
  const double width = gap / 4.0;
  const int dim = box_dim(components.front());

  auto value = [=](VecRef x) {
    double f = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
      const double d = box_distance(components[i], x, nullptr);
      if (d <= width) {
        f += values[i];
      } else if (d < 2.0 * width) {
        f += values[i] * (1.0 - smoothstep((d - width) / width));
      }
    }
    return f;
  };
  auto gradient = [=](VecRef x) -> Eigen::VectorXd {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd dd;
    for (std::size_t i = 0; i < components.size(); ++i) {
      const double d = box_distance(components[i], x, &dd);
      if (d > width && d < 2.0 * width) g -= values[i] * smoothstep_deriv((d - width) / width) / width * dd;
    }
    return g;
  };
  return {value, gradient};
}

}  // namespace gcbound
