#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcbound/dist.hpp"
#include "gcbound/net.hpp"
#include "gcbound/types.hpp"

namespace gcbound {

enum class LabelMode { original, random };

std::string to_string(LabelMode mode);
LabelMode parse_label_mode(const std::string& name);

/// Desk-scale SGD run on a Gaussian-mixture classification task.
/// k = 1 means binary classification with {-1, +1} labels on a
/// two-component mixture; k >= 2 uses one mixture component per class.
struct TrainConfig {
  int dim = 10;
  int k = 2;
  double separation = 3.0;
  double variance = 1.0;
  std::vector<int> hidden = {64, 64};
  Activation activation = Activation::tanh;
  double init_scale = 1.0;
  std::size_t n_train = 512;
  std::size_t n_test = 2048;
  double learning_rate = 0.05;
  std::size_t batch_size = 64;
  std::size_t steps = 5000;
  std::size_t eval_every = 250;
  std::size_t gc_mc_samples = 2048;
  std::uint64_t seed = 0;
  LabelMode label_mode = LabelMode::original;
  std::optional<double> fixed_gamma;  // unset: median positive train margin

  DistributionSpec distribution() const;
  std::vector<LayerSpec> layer_specs() const;
  void validate() const;
};

struct Task {
  LabeledSet train;
  LabeledSet test;
};

// Original mode labels each point by its generating component; random mode
// redraws the training labels uniformly (test labels stay original).
Task make_task(const DistributionSpec& spec, int k, std::size_t n_train, std::size_t n_test, LabelMode mode,
               std::uint64_t seed);
Task make_task(const TrainConfig& config);

struct EpochLog {
  std::size_t step = 0;
  double train_acc = 0.0;
  double test_acc = 0.0;
  double excess_risk = 0.0;  // test_acc - train_acc
  double gc_train = 0.0;
  double gc_mc = 0.0;
  double median_margin = 0.0;
  double gc_margin_norm = 0.0;      // gc_train / median_margin^2
  double gc_margin_norm_lin = 0.0;  // gc_train / median_margin
};

using EvalObserver = std::function<void(const EpochLog&, const Model&)>;

// Builds every EpochLog field for the model at `step`.
EpochLog evaluate(const Model& model, const Task& task, const TrainConfig& config, std::size_t step);

// Plain SGD (no momentum, no weight decay) on logistic / cross-entropy loss.
// Logs at step 0, every eval_every steps and at the final step.
std::vector<EpochLog> train_sgd(const TrainConfig& config, const EvalObserver& observer = {});

// Same, also returning the final model.
std::vector<EpochLog> train_sgd(const TrainConfig& config, Model& final_model, const EvalObserver& observer = {});

// Model initialized from the config's architecture and seed.
Model initial_model(const TrainConfig& config);

struct Fig1Row {
  std::string run;
  EpochLog log;
  double gc_scaled = 0.0;
};

extern const char* const kFig1Header;

// Runs both label modes; gc_scaled = (gc_train / G) * E where G and E are the
// final gc_train and excess_risk of the random-label run.
std::vector<Fig1Row> experiment_fig1(const TrainConfig& original, const TrainConfig& random);

std::string fig1_csv(const std::vector<Fig1Row>& rows);

// Nine significant digits.
std::string format_double(double v);

double pearson(const std::vector<double>& a, const std::vector<double>& b);

// Every field except label_mode must match (ConfigError otherwise).
void require_same_except_labels(const TrainConfig& a, const TrainConfig& b);

}  // namespace gcbound
