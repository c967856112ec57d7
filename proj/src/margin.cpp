#include "gcbound/margin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gcbound/errors.hpp"

namespace gcbound {

double margin_operator(const Eigen::VectorXd& v, int y) {
  const auto k = static_cast<int>(v.size());
  if (k < 2) throw ShapeError("margin operator needs at least two logits");
  if (y < 1 || y > k) throw DataError("class label " + std::to_string(y) + " outside 1.." + std::to_string(k));
  double rival = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    if (i != y - 1) rival = std::max(rival, v(i));
  }
  return v(y - 1) - rival;
}

double ramp_loss(double r, double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("margin gamma must be positive");
  if (r < -gamma) return 0.0;
  if (r > 0.0) return 1.0;
  return 1.0 + r / gamma;
}

std::vector<double> compute_margins(const Model& model, const LabeledSet& s) {
  if (static_cast<std::size_t>(s.x.rows()) != s.y.size()) throw ShapeError("inputs and labels differ in length");
  std::vector<double> out(s.size());
  const bool binary = model.output_dim() == 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Eigen::VectorXd f = model.forward(s.x.row(static_cast<Eigen::Index>(i)).transpose());
    if (binary) {
      if (s.y[i] != 1 && s.y[i] != -1) throw DataError("binary label must be -1 or +1");
      out[i] = s.y[i] * f(0);
    } else {
      out[i] = margin_operator(f, s.y[i]);
    }
  }
  return out;
}

MarginRecord margin_record(const Model& model, const LabeledSet& s, std::vector<double> gamma_grid) {
  for (double g : gamma_grid) {
    if (!(g > 0.0)) throw ParameterError("margin gamma must be positive");
  }
  return {compute_margins(model, s), s.y, std::move(gamma_grid)};
}

double empirical_margin_loss(std::span<const double> margins, double gamma, MarginLossVariant variant) {
  if (margins.empty()) throw ParameterError("empty sample");
  if (!(gamma > 0.0)) throw ParameterError("margin gamma must be positive");
  double total = 0.0;
  for (double r : margins) {
    total += variant == MarginLossVariant::ramp ? ramp_loss(-r, gamma) : (r <= gamma ? 1.0 : 0.0);
  }
  return total / static_cast<double>(margins.size());
}

double empirical_margin_loss(const Model& model, const LabeledSet& s, double gamma, MarginLossVariant variant) {
  if (s.size() == 0) throw ParameterError("empty sample");
  return empirical_margin_loss(compute_margins(model, s), gamma, variant);
}

double misclassification_rate(std::span<const double> margins) {
  if (margins.empty()) throw ParameterError("empty sample");
  const auto errors = std::count_if(margins.begin(), margins.end(), [](double r) { return r <= 0.0; });
  return static_cast<double>(errors) / static_cast<double>(margins.size());
}

double misclassification_rate(const Model& model, const LabeledSet& s) {
  if (s.size() == 0) throw ParameterError("empty sample");
  return misclassification_rate(compute_margins(model, s));
}

double median_positive_margin(std::span<const double> margins) {
  std::vector<double> pos;
  for (double r : margins) {
    if (r > 0.0) pos.push_back(r);
  }
  if (pos.empty()) return 0.0;
  std::sort(pos.begin(), pos.end());
  const std::size_t n = pos.size();
  return n % 2 == 1 ? pos[n / 2] : 0.5 * (pos[n / 2 - 1] + pos[n / 2]);
}

}  // namespace gcbound
