#pragma once

#include <cstdint>
#include <string_view>

#include "fedgolab/numerics/mlp.hpp"

namespace fedgo::numerics {

enum class OptimizerKind { Sgd, Adam, RmsProp };

std::string_view optimizer_kind_name(OptimizerKind kind);
OptimizerKind optimizer_kind_from_name(std::string_view name);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Sgd;
  double lr = 0.01;
  double momentum = 0.0; // sgd only
  double beta1 = 0.9;    // adam
  double beta2 = 0.999;  // adam
  double epsilon = 1e-8; // adam, rmsprop
  double rms_decay = 0.99;

  void validate() const;

  static OptimizerConfig sgd(double lr, double momentum = 0.0);
  static OptimizerConfig adam(double lr, double beta1 = 0.9, double beta2 = 0.999);
  static OptimizerConfig rmsprop(double lr, double decay = 0.99);
};

/// Per-parameter accumulators mirroring the model's parameter shapes.
struct OptimizerState {
  OptimizerConfig config;
  std::uint64_t steps = 0;
  GradSet first_moment;  // sgd momentum / adam m
  GradSet second_moment; // adam v / rmsprop square average

  static OptimizerState create(const OptimizerConfig& config, const MlpModel& shape);
};

/// One update in place. Plain SGD is exactly params - lr * grads; Adam uses
/// the standard bias-corrected recursion; RMSprop divides by the root of the
/// decayed square average.
void optimizer_step(OptimizerState& state, MlpModel& model, const GradSet& grads);

} // namespace fedgo::numerics
