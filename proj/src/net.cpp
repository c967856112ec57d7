#include "gcbound/net.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gcbound/errors.hpp"
#include "json.hpp"

namespace gcbound {

namespace {

double activate(Activation a, double z) {
  switch (a) {
    case Activation::identity:
      return z;
    case Activation::relu:
      return z > 0.0 ? z : 0.0;
    case Activation::tanh:
      return std::tanh(z);
  }
  return z;
}

double activate_deriv(Activation a, double z) {
  switch (a) {
    case Activation::identity:
      return 1.0;
    case Activation::relu:
      return z > 0.0 ? 1.0 : 0.0;
    case Activation::tanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
  }
  return 1.0;
}

// Pre-activations z_l and post-activations a_l of every layer; a_0 = x.
struct Trace {
  std::vector<Eigen::VectorXd> pre;
  std::vector<Eigen::VectorXd> post;
};

Trace run_forward(const std::vector<Layer>& layers, VecRef x) {
  Trace t;
  t.pre.reserve(layers.size());
  t.post.reserve(layers.size() + 1);
  t.post.emplace_back(x);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    Eigen::VectorXd z = layer.weight * t.post.back() + layer.bias;
    if (l + 1 < layers.size()) {
      Eigen::VectorXd a = z.unaryExpr([&](double v) { return activate(layer.spec.activation, v); });
      t.pre.push_back(std::move(z));
      t.post.push_back(std::move(a));
    } else {
      t.pre.push_back(std::move(z));
    }
  }
  return t;
}

void check_label(Loss loss, int label, int k) {
  if (loss == Loss::logistic_binary) {
    if (label != 1 && label != -1) {
      throw DataError("binary label must be -1 or +1, got " + std::to_string(label));
    }
  } else if (label < 1 || label > k) {
    throw DataError("class label " + std::to_string(label) + " outside 1.." + std::to_string(k));
  }
}

void check_loss_shape(const Model& model, Loss loss) {
  if (loss == Loss::logistic_binary && model.output_dim() != 1) {
    throw ShapeError("logistic loss needs a scalar-output model");
  }
  if (loss == Loss::cross_entropy && model.output_dim() < 2) {
    throw ShapeError("cross-entropy needs at least two logits");
  }
}

// Loss value and dL/dz at the logits.
double loss_and_delta(Loss loss, const Eigen::VectorXd& logits, int label, Eigen::VectorXd& delta) {
  if (loss == Loss::logistic_binary) {
    const double t = label * logits(0);
    // log(1 + exp(-t)) evaluated without overflow.
    const double value = t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
    const double s = 1.0 / (1.0 + std::exp(t));  // sigmoid(-t)
    delta.resize(1);
    delta(0) = -label * s;
    return value;
  }
  const double top = logits.maxCoeff();
  Eigen::VectorXd e = (logits.array() - top).exp();
  const double total = e.sum();
  delta = e / total;
  delta(label - 1) -= 1.0;
  return std::log(total) + top - logits(label - 1);
}

template <typename F>
void for_each_index(std::size_t rows, std::span<const std::size_t> indices, F&& f) {
  if (indices.empty()) {
    for (std::size_t i = 0; i < rows; ++i) f(i);
  } else {
    for (std::size_t i : indices) {
      if (i >= rows) throw ShapeError("batch index out of range");
      f(i);
    }
  }
}

void check_batch(const Model& model, const Dataset& x, std::span<const int> y, Loss loss) {
  if (x.rows() == 0) throw ParameterError("empty batch");
  if (static_cast<std::size_t>(x.rows()) != y.size()) {
    throw ShapeError("inputs and labels differ in length");
  }
  if (x.cols() != model.input_dim()) throw ShapeError("input dimension does not match model");
  check_loss_shape(model, loss);
}

}  // namespace

std::string to_string(Activation a) {
  switch (a) {
    case Activation::identity:
      return "identity";
    case Activation::relu:
      return "relu";
    case Activation::tanh:
      return "tanh";
  }
  return "identity";
}

Activation parse_activation(const std::string& name) {
  if (name == "identity") return Activation::identity;
  if (name == "relu") return Activation::relu;
  if (name == "tanh") return Activation::tanh;
  throw ParameterError("unknown activation '" + name + "'");
}

Model::Model(std::vector<Layer> layers, std::uint64_t seed) : layers_(std::move(layers)), seed_(seed) {
  if (layers_.empty()) throw ParameterError("model needs at least one layer");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    if (layer.spec.input_dim < 1 || layer.spec.output_dim < 1) {
      throw ParameterError("layer dimensions must be positive");
    }
    if (layer.weight.rows() != layer.spec.output_dim || layer.weight.cols() != layer.spec.input_dim ||
        layer.bias.size() != layer.spec.output_dim) {
      throw ShapeError("layer " + std::to_string(l) + " parameters do not match its spec");
    }
    if (l > 0 && layers_[l - 1].spec.output_dim != layer.spec.input_dim) {
      throw ShapeError("layer " + std::to_string(l) + " input does not match previous output");
    }
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) {
      throw DomainError("layer " + std::to_string(l) + " has non-finite parameters");
    }
  }
}

void Model::check_input(VecRef x) const {
  if (x.size() != input_dim()) {
    throw ShapeError("input has dimension " + std::to_string(x.size()) + ", model expects " +
                     std::to_string(input_dim()));
  }
  if (!x.allFinite()) throw DomainError("input has non-finite entries");
}

Eigen::VectorXd Model::forward(VecRef x) const {
  check_input(x);
  Eigen::VectorXd a = x;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    Eigen::VectorXd z = layer.weight * a + layer.bias;
    if (l + 1 == layers_.size()) return z;
    a = z.unaryExpr([&](double v) { return activate(layer.spec.activation, v); });
  }
  return a;
}

Eigen::MatrixXd Model::jacobian(VecRef x) const {
  check_input(x);
  Eigen::VectorXd a = x;
  Eigen::MatrixXd jac = layers_.front().weight;
  for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    const Eigen::VectorXd z = layer.weight * a + layer.bias;
    const Eigen::VectorXd slope = z.unaryExpr([&](double v) { return activate_deriv(layer.spec.activation, v); });
    a = z.unaryExpr([&](double v) { return activate(layer.spec.activation, v); });
    jac = layers_[l + 1].weight * (slope.asDiagonal() * jac);
  }
  return jac;
}

double Model::jacobian_sq_norm(VecRef x) const { return jacobian(x).squaredNorm(); }

void Model::apply_gradient(const ParamGrad& grad, double learning_rate) {
  if (grad.weight.size() != layers_.size() || grad.bias.size() != layers_.size()) {
    throw ShapeError("gradient does not match model depth");
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    layers_[l].weight -= learning_rate * grad.weight[l];
    layers_[l].bias -= learning_rate * grad.bias[l];
  }
}

Model Model::scaled(double c) const {
  std::vector<Layer> layers = layers_;
  layers.back().weight *= c;
  layers.back().bias *= c;
  return Model(std::move(layers), seed_);
}

Model init_params(std::span<const LayerSpec> spec, std::uint64_t seed, double scale) {
  if (spec.empty()) throw ParameterError("empty layer spec list");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("init scale must be positive");
  Rng rng(seed);
  std::vector<Layer> layers;
  layers.reserve(spec.size());
  for (const LayerSpec& s : spec) {
    if (s.input_dim < 1 || s.output_dim < 1) throw ParameterError("layer dimensions must be positive");
    const double bound = scale / std::sqrt(static_cast<double>(s.input_dim));
    std::uniform_real_distribution<double> uniform(-bound, bound);
    Layer layer{s, Eigen::MatrixXd(s.output_dim, s.input_dim), Eigen::VectorXd::Zero(s.output_dim)};
    for (int i = 0; i < s.output_dim; ++i) {
      for (int j = 0; j < s.input_dim; ++j) layer.weight(i, j) = uniform(rng);
    }
    layers.push_back(std::move(layer));
  }
  return Model(std::move(layers), seed);
}

Model affine_model(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  LayerSpec spec{static_cast<int>(a.cols()), static_cast<int>(a.rows()), Activation::identity};
  return Model({Layer{spec, a, b}});
}

Eigen::MatrixXd jacobian_fd(const Model& model, VecRef x, double h) {
  if (!(h > 0.0)) throw ParameterError("finite-difference step must be positive");
  Eigen::MatrixXd jac(model.output_dim(), model.input_dim());
  Eigen::VectorXd probe = x;
  for (int j = 0; j < model.input_dim(); ++j) {
    probe(j) = x(j) + h;
    const Eigen::VectorXd up = model.forward(probe);
    probe(j) = x(j) - h;
    const Eigen::VectorXd down = model.forward(probe);
    probe(j) = x(j);
    jac.col(j) = (up - down) / (2.0 * h);
  }
  return jac;
}

double batch_loss(const Model& model, const Dataset& x, std::span<const int> y, Loss loss,
                  std::span<const std::size_t> indices) {
  check_batch(model, x, y, loss);
  double total = 0.0;
  std::size_t count = 0;
  Eigen::VectorXd delta;
  for_each_index(static_cast<std::size_t>(x.rows()), indices, [&](std::size_t i) {
    check_label(loss, y[i], model.output_dim());
    total += loss_and_delta(loss, model.forward(x.row(i).transpose()), y[i], delta);
    ++count;
  });
  return total / static_cast<double>(count);
}

ParamGrad grad_params(const Model& model, const Dataset& x, std::span<const int> y, Loss loss,
                      std::span<const std::size_t> indices) {
  check_batch(model, x, y, loss);
  const auto& layers = model.layers();
  ParamGrad grad;
  for (const Layer& layer : layers) {
    grad.weight.push_back(Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols()));
    grad.bias.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
  }
  std::size_t count = 0;
  Eigen::VectorXd delta;
  for_each_index(static_cast<std::size_t>(x.rows()), indices, [&](std::size_t i) {
    check_label(loss, y[i], model.output_dim());
    const Trace t = run_forward(layers, x.row(i).transpose());
    loss_and_delta(loss, t.pre.back(), y[i], delta);
    for (std::size_t l = layers.size(); l-- > 0;) {
      grad.weight[l].noalias() += delta * t.post[l].transpose();
      grad.bias[l] += delta;
      if (l == 0) break;
      const Layer& below = layers[l - 1];
      Eigen::VectorXd back = layers[l].weight.transpose() * delta;
      for (Eigen::Index j = 0; j < back.size(); ++j) {
        back(j) *= activate_deriv(below.spec.activation, t.pre[l - 1](j));
      }
      delta = std::move(back);
    }
    ++count;
  });
  const double inv = 1.0 / static_cast<double>(count);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    grad.weight[l] *= inv;
    grad.bias[l] *= inv;
  }
  return grad;
}

std::string model_to_json(const Model& model) {
  nlohmann::json doc;
  doc["seed"] = model.seed();
  doc["layers"] = nlohmann::json::array();
  for (const Layer& layer : model.layers()) {
    nlohmann::json l;
    l["input_dim"] = layer.spec.input_dim;
    l["output_dim"] = layer.spec.output_dim;
    l["activation"] = to_string(layer.spec.activation);
    std::vector<double> w;
    for (int i = 0; i < layer.weight.rows(); ++i) {
      for (int j = 0; j < layer.weight.cols(); ++j) w.push_back(layer.weight(i, j));
    }
    l["weight"] = w;
    l["bias"] = std::vector<double>(layer.bias.data(), layer.bias.data() + layer.bias.size());
    doc["layers"].push_back(std::move(l));
  }
  return doc.dump();
}

Model model_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model checkpoint: ") + e.what());
  }
  try {
    std::vector<Layer> layers;
    for (const auto& l : doc.at("layers")) {
      LayerSpec spec{l.at("input_dim").get<int>(), l.at("output_dim").get<int>(),
                     parse_activation(l.at("activation").get<std::string>())};
      const auto w = l.at("weight").get<std::vector<double>>();
      const auto b = l.at("bias").get<std::vector<double>>();
      if (w.size() != static_cast<std::size_t>(spec.input_dim) * spec.output_dim ||
          b.size() != static_cast<std::size_t>(spec.output_dim)) {
        throw ShapeError("checkpoint layer has wrong parameter count");
      }
      Layer layer{spec, Eigen::MatrixXd(spec.output_dim, spec.input_dim), Eigen::VectorXd(spec.output_dim)};
      for (int i = 0; i < spec.output_dim; ++i) {
        for (int j = 0; j < spec.input_dim; ++j) layer.weight(i, j) = w[i * spec.input_dim + j];
        layer.bias(i) = b[i];
      }
      layers.push_back(std::move(layer));
    }
    return Model(std::move(layers), doc.at("seed").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid model checkpoint: ") + e.what());
  }
}

void save_checkpoint(const Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw RunError("cannot write checkpoint " + path);
  out << model_to_json(model) << '\n';
}

Model load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open checkpoint " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace gcbound
