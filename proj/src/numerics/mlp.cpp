#include "fedgolab/numerics/mlp.hpp"

#include <cmath>
#include <sstream>

#include "fedgolab/common/errors.hpp"

namespace fedgo::numerics {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void apply_activation(Activation act, DenseMatrix& m) {
  switch (act) {
    case Activation::ReLU:
      for (double& v : m.data) v = v > 0.0 ? v : 0.0;
      break;
    case Activation::Sigmoid:
      for (double& v : m.data) v = sigmoid(v);
      break;
    case Activation::Identity:
      break;
  }
}

// d(act)/d(pre) given pre-activation value.
double activation_derivative(Activation act, double pre) {
  switch (act) {
    case Activation::ReLU:
      return pre > 0.0 ? 1.0 : 0.0;
    case Activation::Sigmoid: {
      const double s = sigmoid(pre);
      return s * (1.0 - s);
    }
    case Activation::Identity:
      return 1.0;
  }
  return 0.0;
}

} // namespace

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::ReLU: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Identity: return "identity";
  }
  return "unknown";
}

Activation activation_from_name(std::string_view name) {
  if (name == "relu") return Activation::ReLU;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "identity") return Activation::Identity;
  throw config_error("unknown activation: " + std::string(name));
}

void MlpModel::validate() const {
  if (layer_dims.size() < 2) throw config_error("mlp needs at least input and output dims");
  if (activations.size() != layer_dims.size() - 1) {
    std::ostringstream msg;
    msg << "mlp has " << layer_dims.size() - 1 << " weight layers but " << activations.size()
        << " activations";
    throw config_error(msg.str());
  }
  if (params.size() != layer_dims.size() - 1) {
    std::ostringstream msg;
    msg << "mlp has " << layer_dims.size() - 1 << " weight layers but " << params.size()
        << " parameter blocks";
    throw config_error(msg.str());
  }
  for (std::size_t l = 0; l < params.size(); ++l) {
    require_shape(params[l].weight, layer_dims[l], layer_dims[l + 1], "mlp weight");
    if (params[l].bias.size() != layer_dims[l + 1]) {
      std::ostringstream msg;
      msg << "mlp bias " << l << ": expected length " << layer_dims[l + 1] << ", got "
          << params[l].bias.size();
      throw config_error(msg.str());
    }
  }
}

MlpModel MlpModel::create(std::vector<std::size_t> dims, std::vector<Activation> acts,
                          RngStream& rng) {
  MlpModel model;
  model.layer_dims = std::move(dims);
  model.activations = std::move(acts);
  for (std::size_t l = 0; l + 1 < model.layer_dims.size(); ++l) {
    const std::size_t fan_in = model.layer_dims[l];
    const std::size_t fan_out = model.layer_dims[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    LayerParams layer;
    layer.weight = DenseMatrix(fan_in, fan_out);
    for (double& w : layer.weight.data) w = rng.uniform(-limit, limit);
    layer.bias.assign(fan_out, 0.0);
    model.params.push_back(std::move(layer));
  }
  model.validate();
  return model;
}

MlpModel MlpModel::create_relu_tower(std::size_t input, const std::vector<std::size_t>& hidden,
                                     std::size_t output, RngStream& rng) {
  std::vector<std::size_t> dims;
  dims.push_back(input);
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(output);
  std::vector<Activation> acts(hidden.size(), Activation::ReLU);
  acts.push_back(Activation::Identity);
  return create(std::move(dims), std::move(acts), rng);
}

GradSet zero_grads_like(const MlpModel& model) {
  GradSet grads;
  grads.reserve(model.params.size());
  for (const auto& layer : model.params) {
    LayerParams g;
    g.weight = DenseMatrix(layer.weight.rows, layer.weight.cols);
    g.bias.assign(layer.bias.size(), 0.0);
    grads.push_back(std::move(g));
  }
  return grads;
}

void accumulate_grads(GradSet& into, const GradSet& from, double scale) {
  if (into.size() != from.size()) throw config_error("accumulate_grads: layer count mismatch");
  for (std::size_t l = 0; l < into.size(); ++l) {
    for (std::size_t i = 0; i < into[l].weight.data.size(); ++i) {
      into[l].weight.data[i] += scale * from[l].weight.data[i];
    }
    for (std::size_t i = 0; i < into[l].bias.size(); ++i) {
      into[l].bias[i] += scale * from[l].bias[i];
    }
  }
}

ForwardTrace mlp_forward_trace(const MlpModel& model, const DenseMatrix& batch) {
  if (batch.cols != model.input_dim()) {
    std::ostringstream msg;
    msg << "batch has " << batch.cols << " columns, model input dim is " << model.input_dim();
    throw config_error(msg.str());
  }
  ForwardTrace trace;
  trace.acts.push_back(batch);
  for (std::size_t l = 0; l < model.params.size(); ++l) {
    DenseMatrix pre = matmul(trace.acts.back(), model.params[l].weight);
    add_row_inplace(pre, model.params[l].bias);
    trace.pre_acts.push_back(pre);
    apply_activation(model.activations[l], pre);
    trace.acts.push_back(std::move(pre));
  }
  return trace;
}

DenseMatrix mlp_forward(const MlpModel& model, const DenseMatrix& batch) {
  ForwardTrace trace = mlp_forward_trace(model, batch);
  DenseMatrix out = std::move(trace.acts.back());
  out.ensure_finite("mlp_forward output");
  return out;
}

BackwardResult mlp_backward(const MlpModel& model, const ForwardTrace& trace,
                            const DenseMatrix& doutput, bool want_input_grad) {
  const std::size_t layers = model.params.size();
  require_shape(doutput, trace.output().rows, trace.output().cols, "mlp_backward doutput");

  BackwardResult result;
  result.grads.resize(layers);

  // d(loss)/d(pre-activation) of the current layer, walking backwards.
  DenseMatrix delta = doutput;
  for (std::size_t l = layers; l-- > 0;) {
    const DenseMatrix& pre = trace.pre_acts[l];
    for (std::size_t i = 0; i < delta.data.size(); ++i) {
      delta.data[i] *= activation_derivative(model.activations[l], pre.data[i]);
    }
    result.grads[l].weight = matmul_transpose_a(trace.acts[l], delta);
    result.grads[l].bias = column_sums(delta);
    if (l > 0 || want_input_grad) {
      delta = matmul_transpose_b(delta, model.params[l].weight);
    }
  }
  if (want_input_grad) result.input_grad = std::move(delta);
  return result;
}

std::pair<double, GradSet> mlp_grad(const MlpModel& model, const DenseMatrix& batch,
                                    const DenseMatrix& targets, LossKind loss) {
  ForwardTrace trace = mlp_forward_trace(model, batch);
  LossGrad lg = loss_grad_from_logits(loss, trace.output(), targets);
  BackwardResult back = mlp_backward(model, trace, lg.dlogits);
  for (const auto& g : back.grads) g.weight.ensure_finite("mlp_grad weight gradient");
  return {lg.loss, std::move(back.grads)};
}

MlpModel weighted_average_params(const std::vector<const MlpModel*>& models,
                                 const std::vector<double>& weights) {
  if (models.empty()) throw config_error("weighted_average_params: empty model list");
  if (models.size() != weights.size()) {
    throw config_error("weighted_average_params: model/weight count mismatch");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw config_error("weighted_average_params: negative weight");
    total += w;
  }
  if (total <= 0.0) throw config_error("weighted_average_params: weights sum to zero");

  MlpModel out = *models.front();
  for (auto& layer : out.params) {
    std::fill(layer.weight.data.begin(), layer.weight.data.end(), 0.0);
    std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
  }
  for (std::size_t m = 0; m < models.size(); ++m) {
    const MlpModel& src = *models[m];
    if (src.layer_dims != out.layer_dims) {
      throw config_error("weighted_average_params: architecture mismatch");
    }
    const double w = weights[m] / total;
    for (std::size_t l = 0; l < out.params.size(); ++l) {
      for (std::size_t i = 0; i < out.params[l].weight.data.size(); ++i) {
        out.params[l].weight.data[i] += w * src.params[l].weight.data[i];
      }
      for (std::size_t i = 0; i < out.params[l].bias.size(); ++i) {
        out.params[l].bias[i] += w * src.params[l].bias[i];
      }
    }
  }
  return out;
}

bool params_bitwise_equal(const MlpModel& a, const MlpModel& b) {
  if (a.layer_dims != b.layer_dims) return false;
  for (std::size_t l = 0; l < a.params.size(); ++l) {
    if (!bitwise_equal(a.params[l].weight, b.params[l].weight)) return false;
    if (a.params[l].bias != b.params[l].bias) return false;
  }
  return true;
}

} // namespace fedgo::numerics
