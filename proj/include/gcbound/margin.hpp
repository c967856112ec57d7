#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gcbound/net.hpp"
#include "gcbound/types.hpp"

namespace gcbound {

enum class MarginLossVariant { ramp, indicator };

// v_y - max_{i != y} v_i with y 1-indexed; <= 0 means misclassified (ties
// count as errors).
double margin_operator(const Eigen::VectorXd& v, int y);

// 0 for r < -gamma, 1 + r/gamma on [-gamma, 0], 1 for r > 0.
double ramp_loss(double r, double gamma);

struct MarginRecord {
  std::vector<double> margins;
  std::vector<int> labels;
  std::vector<double> gamma_grid;
};

// Per-example margins: y f(x) for a scalar-output model with labels in
// {-1, +1}, the margin operator on the logits otherwise.
std::vector<double> compute_margins(const Model& model, const LabeledSet& s);

MarginRecord margin_record(const Model& model, const LabeledSet& s, std::vector<double> gamma_grid = {});

// Mean of ramp_loss(-margin) or of [margin <= gamma].
double empirical_margin_loss(std::span<const double> margins, double gamma, MarginLossVariant variant);
double empirical_margin_loss(const Model& model, const LabeledSet& s, double gamma,
                             MarginLossVariant variant = MarginLossVariant::indicator);

// Fraction of margins <= 0.
double misclassification_rate(std::span<const double> margins);
double misclassification_rate(const Model& model, const LabeledSet& s);

// Median of the strictly positive margins; 0 when there are none.
double median_positive_margin(std::span<const double> margins);

}  // namespace gcbound
