#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "fedgolab/numerics/loss.hpp"
#include "fedgolab/numerics/matrix.hpp"
#include "fedgolab/numerics/rng.hpp"

namespace fedgo::numerics {

enum class Activation { ReLU, Sigmoid, Identity };

std::string_view activation_name(Activation a);
Activation activation_from_name(std::string_view name);

struct LayerParams {
  DenseMatrix weight;       // fan_in x fan_out
  std::vector<double> bias; // fan_out
};

/// Fully-connected network: layer_dims = {input, hidden..., output}, one
/// activation per weight layer. Serves as classifier, discriminator body and
/// generator body.
struct MlpModel {
  std::vector<std::size_t> layer_dims;
  std::vector<Activation> activations;
  std::vector<LayerParams> params;

  std::size_t input_dim() const { return layer_dims.front(); }
  std::size_t output_dim() const { return layer_dims.back(); }
  std::size_t layer_count() const { return params.size(); }

  /// Checks dims/activations/params are mutually consistent.
  void validate() const;

  /// Glorot-uniform weights, zero biases, drawn from the given stream.
  static MlpModel create(std::vector<std::size_t> dims, std::vector<Activation> acts,
                         RngStream& rng);

  /// Convenience: input -> hidden... (ReLU) -> output (Identity).
  static MlpModel create_relu_tower(std::size_t input, const std::vector<std::size_t>& hidden,
                                    std::size_t output, RngStream& rng);
};

using GradSet = std::vector<LayerParams>;

GradSet zero_grads_like(const MlpModel& model);
void accumulate_grads(GradSet& into, const GradSet& from, double scale);

/// Logits for a batch (one row per input row).
DenseMatrix mlp_forward(const MlpModel& model, const DenseMatrix& batch);

/// Forward pass with cached pre-activations for backprop.
struct ForwardTrace {
  std::vector<DenseMatrix> pre_acts; // per layer, before activation
  std::vector<DenseMatrix> acts;     // acts[0] = input, acts.back() = output
  const DenseMatrix& output() const { return acts.back(); }
};

ForwardTrace mlp_forward_trace(const MlpModel& model, const DenseMatrix& batch);

struct BackwardResult {
  GradSet grads;
  DenseMatrix input_grad; // filled only when requested
};

/// Backprop from d(loss)/d(output). `want_input_grad` additionally returns
/// d(loss)/d(input), needed when a generator is trained through a
/// discriminator.
BackwardResult mlp_backward(const MlpModel& model, const ForwardTrace& trace,
                            const DenseMatrix& doutput, bool want_input_grad = false);

/// Loss and parameter gradients for a batch under the given loss kind.
std::pair<double, GradSet> mlp_grad(const MlpModel& model, const DenseMatrix& batch,
                                    const DenseMatrix& targets, LossKind loss);

/// Coordinate-wise weighted mean of parameter sets; weights are normalized
/// internally. All models must share one architecture.
MlpModel weighted_average_params(const std::vector<const MlpModel*>& models,
                                 const std::vector<double>& weights);

bool params_bitwise_equal(const MlpModel& a, const MlpModel& b);

} // namespace fedgo::numerics
