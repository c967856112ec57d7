#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gcbound/types.hpp"

namespace gcbound {

enum class Activation { identity, relu, tanh };

std::string to_string(Activation a);
Activation parse_activation(const std::string& name);

struct LayerSpec {
  int input_dim = 1;
  int output_dim = 1;
  Activation activation = Activation::identity;
};

struct Layer {
  LayerSpec spec;
  Eigen::MatrixXd weight;  // output_dim x input_dim
  Eigen::VectorXd bias;    // output_dim
};

// Parameter-shaped container, one entry per layer.
struct ParamGrad {
  std::vector<Eigen::MatrixXd> weight;
  std::vector<Eigen::VectorXd> bias;
};

enum class Loss { logistic_binary, cross_entropy };

/// Feed-forward logit network.
///
/// Every layer computes z = W a + b and applies its activation, except the
/// last one: its activation is recorded (it is the network's output
/// nonlinearity) but forward() and jacobian() return the pre-activation
/// logits. All geometric-complexity quantities are defined on that map.
class Model {
 public:
  explicit Model(std::vector<Layer> layers, std::uint64_t seed = 0);

  int input_dim() const { return layers_.front().spec.input_dim; }
  int output_dim() const { return layers_.back().spec.output_dim; }
  std::size_t num_layers() const { return layers_.size(); }
  const std::vector<Layer>& layers() const { return layers_; }
  std::uint64_t seed() const { return seed_; }

  Eigen::VectorXd forward(VecRef x) const;

  // Chain-rule product of the per-layer Jacobians. relu'(0) is taken as 0.
  Eigen::MatrixXd jacobian(VecRef x) const;

  // Squared Frobenius norm of jacobian(x).
  double jacobian_sq_norm(VecRef x) const;

  // W -= learning_rate * g.
  void apply_gradient(const ParamGrad& grad, double learning_rate);

  // Multiplies the last layer by c, hence every logit by c.
  Model scaled(double c) const;

 private:
  void check_input(VecRef x) const;

  std::vector<Layer> layers_;
  std::uint64_t seed_;
};

// Weights i.i.d. uniform on [-scale/sqrt(fan_in), scale/sqrt(fan_in)], zero
// biases.
Model init_params(std::span<const LayerSpec> spec, std::uint64_t seed, double scale = 1.0);

// Single identity layer f(x) = A x + b.
Model affine_model(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

// Central differences; column j is (f(x + h e_j) - f(x - h e_j)) / 2h.
Eigen::MatrixXd jacobian_fd(const Model& model, VecRef x, double h = 1e-4);

// Mean loss over the rows selected by `indices` (all rows when empty).
double batch_loss(const Model& model, const Dataset& x, std::span<const int> y, Loss loss,
                  std::span<const std::size_t> indices = {});

// Mean gradient of batch_loss with respect to every weight and bias.
ParamGrad grad_params(const Model& model, const Dataset& x, std::span<const int> y, Loss loss,
                      std::span<const std::size_t> indices = {});

// Checkpoints are JSON documents; doubles round-trip exactly.
void save_checkpoint(const Model& model, const std::string& path);
Model load_checkpoint(const std::string& path);
std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);

}  // namespace gcbound
