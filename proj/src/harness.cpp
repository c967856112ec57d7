#include "gcbound/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "gcbound/errors.hpp"
#include "gcbound/gc.hpp"
#include "gcbound/margin.hpp"

namespace gcbound {

namespace {

// Stream ids for derive_seed.
constexpr std::uint64_t kTrainStream = 0;
constexpr std::uint64_t kTestStream = 1;
constexpr std::uint64_t kRandomLabelStream = 2;
constexpr std::uint64_t kBatchStream = 3;
constexpr std::uint64_t kGcMcStream = 4;
constexpr std::uint64_t kInitStream = 5;

std::vector<int> component_labels(const std::vector<int>& components, int k) {
  std::vector<int> y(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    y[i] = k == 1 ? (components[i] == 0 ? 1 : -1) : components[i] + 1;
  }
  return y;
}

double ratio_or_inf(double num, double den) {
  if (den > 0.0) return num / den;
  return std::numeric_limits<double>::infinity();
}

}  // namespace

std::string to_string(LabelMode mode) { return mode == LabelMode::original ? "original" : "random"; }

LabelMode parse_label_mode(const std::string& name) {
  if (name == "original") return LabelMode::original;
  if (name == "random") return LabelMode::random;
  throw ConfigError("label_mode must be 'original' or 'random', got '" + name + "'");
}

DistributionSpec TrainConfig::distribution() const {
  return separated_mixture(dim, k == 1 ? 2 : k, separation, variance);
}

std::vector<LayerSpec> TrainConfig::layer_specs() const {
  std::vector<LayerSpec> specs;
  int in = dim;
  for (int width : hidden) {
    specs.push_back({in, width, activation});
    in = width;
  }
  specs.push_back({in, k == 1 ? 1 : k, Activation::identity});
  return specs;
}

void TrainConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be positive");
  if (k < 1) throw ConfigError("k must be at least 1");
  if (k > 2 && dim < 2) throw ConfigError("k > 2 needs dim >= 2");
  for (int w : hidden) {
    if (w < 1) throw ConfigError("hidden widths must be positive");
  }
  if (!(separation >= 0.0) || !(variance > 0.0)) throw ConfigError("mixture separation/variance out of range");
  if (!(init_scale > 0.0)) throw ConfigError("init_scale must be positive");
  if (n_train < 1 || n_test < 1) throw ConfigError("n_train and n_test must be positive");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (batch_size < 1 || batch_size > n_train) throw ConfigError("batch_size must lie in [1, n_train]");
  if (steps < 1) throw ConfigError("steps must be at least 1");
  if (eval_every < 1) throw ConfigError("eval_every must be at least 1");
  if (gc_mc_samples < 2) throw ConfigError("gc_mc_samples must be at least 2");
  if (fixed_gamma && !(*fixed_gamma > 0.0)) throw ConfigError("gamma must be positive");
}

Task make_task(const DistributionSpec& spec, int k, std::size_t n_train, std::size_t n_test, LabelMode mode,
               std::uint64_t seed) {
  const auto* mixture = std::get_if<GaussianMixture>(&spec.shape);
  if (mixture == nullptr) throw ConfigError("task distribution must be a Gaussian mixture");
  const std::size_t expected = k == 1 ? 2 : static_cast<std::size_t>(k);
  if (k < 1 || mixture->components.size() != expected) {
    throw ConfigError("mixture has " + std::to_string(mixture->components.size()) + " components, task needs " +
                      std::to_string(expected));
  }
  Task task;
  std::vector<int> comps;
  task.train.x = sample_with_components(spec, n_train, derive_seed(seed, kTrainStream), comps);
  task.train.y = component_labels(comps, k);
  task.test.x = sample_with_components(spec, n_test, derive_seed(seed, kTestStream), comps);
  task.test.y = component_labels(comps, k);
  if (mode == LabelMode::random) {
    Rng rng(derive_seed(seed, kRandomLabelStream));
    if (k == 1) {
      std::bernoulli_distribution coin(0.5);
      for (int& y : task.train.y) y = coin(rng) ? 1 : -1;
    } else {
      std::uniform_int_distribution<int> pick(1, k);
      for (int& y : task.train.y) y = pick(rng);
    }
  }
  return task;
}

Task make_task(const TrainConfig& config) {
  config.validate();
  return make_task(config.distribution(), config.k, config.n_train, config.n_test, config.label_mode, config.seed);
}

Model initial_model(const TrainConfig& config) {
  const auto specs = config.layer_specs();
  return init_params(specs, derive_seed(config.seed, kInitStream), config.init_scale);
}

EpochLog evaluate(const Model& model, const Task& task, const TrainConfig& config, std::size_t step) {
  EpochLog log;
  log.step = step;
  const std::vector<double> train_margins = compute_margins(model, task.train);
  log.train_acc = 1.0 - misclassification_rate(train_margins);
  log.test_acc = 1.0 - misclassification_rate(model, task.test);
  log.excess_risk = log.test_acc - log.train_acc;
  log.gc_train = gc_empirical(model, task.train.x).value;
  log.gc_mc =
      gc_theoretical_mc(model, config.distribution(), config.gc_mc_samples, derive_seed(config.seed, kGcMcStream))
          .value;
  log.median_margin = median_positive_margin(train_margins);
  log.gc_margin_norm = ratio_or_inf(log.gc_train, log.median_margin * log.median_margin);
  log.gc_margin_norm_lin = ratio_or_inf(log.gc_train, log.median_margin);
  return log;
}

std::vector<EpochLog> train_sgd(const TrainConfig& config, Model& final_model, const EvalObserver& observer) {
  config.validate();
  const Task task = make_task(config);
  Model model = initial_model(config);
  const Loss loss = config.k == 1 ? Loss::logistic_binary : Loss::cross_entropy;

  std::vector<EpochLog> logs;
  auto record = [&](std::size_t step) {
    logs.push_back(evaluate(model, task, config, step));
    if (observer) observer(logs.back(), model);
  };
  record(0);

  Rng rng(derive_seed(config.seed, kBatchStream));
  std::vector<std::size_t> order(config.n_train);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t cursor = config.n_train;  // forces a shuffle on the first step
  std::vector<std::size_t> batch(config.batch_size);
  for (std::size_t step = 1; step <= config.steps; ++step) {
    for (std::size_t b = 0; b < config.batch_size; ++b) {
      if (cursor == config.n_train) {
        std::shuffle(order.begin(), order.end(), rng);
        cursor = 0;
      }
      batch[b] = order[cursor++];
    }
    const ParamGrad grad = grad_params(model, task.train.x, task.train.y, loss, batch);
    for (std::size_t l = 0; l < grad.weight.size(); ++l) {
      if (!grad.weight[l].allFinite() || !grad.bias[l].allFinite()) {
        throw RunError("training diverged at step " + std::to_string(step));
      }
    }
    model.apply_gradient(grad, config.learning_rate);
    if (step % config.eval_every == 0 || step == config.steps) record(step);
  }
  final_model = std::move(model);
  return logs;
}

std::vector<EpochLog> train_sgd(const TrainConfig& config, const EvalObserver& observer) {
  Model final_model = initial_model(config);
  return train_sgd(config, final_model, observer);
}

void require_same_except_labels(const TrainConfig& a, const TrainConfig& b) {
  auto same = a.dim == b.dim && a.k == b.k && a.separation == b.separation && a.variance == b.variance &&
              a.hidden == b.hidden && a.activation == b.activation && a.init_scale == b.init_scale &&
              a.n_train == b.n_train && a.n_test == b.n_test && a.learning_rate == b.learning_rate &&
              a.batch_size == b.batch_size && a.steps == b.steps && a.eval_every == b.eval_every &&
              a.gc_mc_samples == b.gc_mc_samples && a.seed == b.seed && a.fixed_gamma == b.fixed_gamma;
  if (!same) throw ConfigError("fig1 configs may differ only in label_mode");
}

const char* const kFig1Header =
    "run,step,train_acc,test_acc,excess_risk,gc_train,gc_mc,median_margin,gc_margin_norm,gc_margin_norm_lin,"
    "gc_scaled";

std::vector<Fig1Row> experiment_fig1(const TrainConfig& original, const TrainConfig& random) {
  require_same_except_labels(original, random);
  if (original.label_mode != LabelMode::original || random.label_mode != LabelMode::random) {
    throw ConfigError("fig1 needs one original-label and one random-label config");
  }
  const std::vector<EpochLog> orig_logs = train_sgd(original);
  const std::vector<EpochLog> rand_logs = train_sgd(random);
  const double final_gc = rand_logs.back().gc_train;
  const double final_excess = rand_logs.back().excess_risk;
  auto scaled = [&](double gc) {
    if (final_gc == 0.0) return std::numeric_limits<double>::quiet_NaN();
    // gc / final_gc is exactly 1 on the random run's last row.
    return (gc / final_gc) * final_excess;
  };
  std::vector<Fig1Row> rows;
  for (const EpochLog& log : orig_logs) rows.push_back({"original", log, scaled(log.gc_train)});
  for (const EpochLog& log : rand_logs) rows.push_back({"random", log, scaled(log.gc_train)});
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fig1_csv(const std::vector<Fig1Row>& rows) {
  std::string out = kFig1Header;
  out += '\n';
  for (const Fig1Row& r : rows) {
    const EpochLog& l = r.log;
    out += r.run;
    out += ',' + std::to_string(l.step);
    for (double v : {l.train_acc, l.test_acc, l.excess_risk, l.gc_train, l.gc_mc, l.median_margin, l.gc_margin_norm,
                     l.gc_margin_norm_lin, r.gc_scaled}) {
      out += ',' + format_double(v);
    }
    out += '\n';
  }
  return out;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw ParameterError("pearson needs two equal-length series");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

}  // namespace gcbound
