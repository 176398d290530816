#include "fedgolab/numerics/optimizer.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fedgolab/common/errors.hpp"

namespace fedgo::numerics {

std::string_view optimizer_kind_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::Sgd: return "sgd";
    case OptimizerKind::Adam: return "adam";
    case OptimizerKind::RmsProp: return "rmsprop";
  }
  return "unknown";
}

OptimizerKind optimizer_kind_from_name(std::string_view name) {
  if (name == "sgd") return OptimizerKind::Sgd;
  if (name == "adam") return OptimizerKind::Adam;
  if (name == "rmsprop") return OptimizerKind::RmsProp;
  throw config_error("unknown optimizer: " + std::string(name));
}

void OptimizerConfig::validate() const {
  if (!(lr > 0.0)) throw config_error("optimizer lr must be positive");
  if (momentum < 0.0 || momentum >= 1.0) throw config_error("momentum must be in [0, 1)");
  if (beta1 < 0.0 || beta1 >= 1.0) throw config_error("beta1 must be in [0, 1)");
  if (beta2 < 0.0 || beta2 >= 1.0) throw config_error("beta2 must be in [0, 1)");
  if (rms_decay < 0.0 || rms_decay >= 1.0) throw config_error("rms_decay must be in [0, 1)");
  if (!(epsilon > 0.0)) throw config_error("epsilon must be positive");
}

OptimizerConfig OptimizerConfig::sgd(double lr, double momentum) {
  OptimizerConfig c;
  c.kind = OptimizerKind::Sgd;
  c.lr = lr;
  c.momentum = momentum;
  return c;
}

OptimizerConfig OptimizerConfig::adam(double lr, double beta1, double beta2) {
  OptimizerConfig c;
  c.kind = OptimizerKind::Adam;
  c.lr = lr;
  c.beta1 = beta1;
  c.beta2 = beta2;
  return c;
}

OptimizerConfig OptimizerConfig::rmsprop(double lr, double decay) {
  OptimizerConfig c;
  c.kind = OptimizerKind::RmsProp;
  c.lr = lr;
  c.rms_decay = decay;
  return c;
}

OptimizerState OptimizerState::create(const OptimizerConfig& config, const MlpModel& shape) {
  config.validate();
  OptimizerState state;
  state.config = config;
  switch (config.kind) {
    case OptimizerKind::Sgd:
      if (config.momentum > 0.0) state.first_moment = zero_grads_like(shape);
      break;
    case OptimizerKind::Adam:
      state.first_moment = zero_grads_like(shape);
      state.second_moment = zero_grads_like(shape);
      break;
    case OptimizerKind::RmsProp:
      state.second_moment = zero_grads_like(shape);
      break;
  }
  return state;
}

namespace {

void require_matching_shapes(const MlpModel& model, const GradSet& grads) {
  if (grads.size() != model.params.size()) {
    std::ostringstream msg;
    msg << "optimizer_step: " << grads.size() << " gradient blocks for "
        << model.params.size() << " parameter blocks";
    throw config_error(msg.str());
  }
  for (std::size_t l = 0; l < grads.size(); ++l) {
    require_shape(grads[l].weight, model.params[l].weight.rows, model.params[l].weight.cols,
                  "optimizer_step gradient");
    if (grads[l].bias.size() != model.params[l].bias.size()) {
      throw config_error("optimizer_step: bias gradient length mismatch");
    }
  }
}

template <typename Update>
void for_each_coordinate(MlpModel& model, const GradSet& grads, OptimizerState& state,
                         bool use_first, bool use_second, Update&& update) {
  for (std::size_t l = 0; l < model.params.size(); ++l) {
    auto& w = model.params[l].weight.data;
    const auto& gw = grads[l].weight.data;
    double* m = use_first ? state.first_moment[l].weight.data.data() : nullptr;
    double* v = use_second ? state.second_moment[l].weight.data.data() : nullptr;
    for (std::size_t i = 0; i < w.size(); ++i) {
      update(w[i], gw[i], m ? m + i : nullptr, v ? v + i : nullptr);
    }
    auto& b = model.params[l].bias;
    const auto& gb = grads[l].bias;
    double* mb = use_first ? state.first_moment[l].bias.data() : nullptr;
    double* vb = use_second ? state.second_moment[l].bias.data() : nullptr;
    for (std::size_t i = 0; i < b.size(); ++i) {
      update(b[i], gb[i], mb ? mb + i : nullptr, vb ? vb + i : nullptr);
    }
  }
}

} // namespace

void optimizer_step(OptimizerState& state, MlpModel& model, const GradSet& grads) {
  require_matching_shapes(model, grads);
  const OptimizerConfig& cfg = state.config;
  state.steps += 1;

  switch (cfg.kind) {
    case OptimizerKind::Sgd: {
      if (cfg.momentum == 0.0) {
        for_each_coordinate(model, grads, state, false, false,
                            [&](double& p, double g, double*, double*) { p -= cfg.lr * g; });
      } else {
        for_each_coordinate(model, grads, state, true, false,
                            [&](double& p, double g, double* m, double*) {
                              *m = cfg.momentum * *m + g;
                              p -= cfg.lr * *m;
                            });
      }
      break;
    }
    case OptimizerKind::Adam: {
      const double t = static_cast<double>(state.steps);
      const double bias1 = 1.0 - std::pow(cfg.beta1, t);
      const double bias2 = 1.0 - std::pow(cfg.beta2, t);
      for_each_coordinate(model, grads, state, true, true,
                          [&](double& p, double g, double* m, double* v) {
                            *m = cfg.beta1 * *m + (1.0 - cfg.beta1) * g;
                            *v = cfg.beta2 * *v + (1.0 - cfg.beta2) * g * g;
                            const double m_hat = *m / bias1;
                            const double v_hat = *v / bias2;
                            p -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
                          });
      break;
    }
    case OptimizerKind::RmsProp: {
      for_each_coordinate(model, grads, state, false, true,
                          [&](double& p, double g, double*, double* v) {
                            *v = cfg.rms_decay * *v + (1.0 - cfg.rms_decay) * g * g;
                            p -= cfg.lr * g / (std::sqrt(*v) + cfg.epsilon);
                          });
      break;
    }
  }
  for (const auto& layer : model.params) {
    layer.weight.ensure_finite("optimizer_step parameters");
  }
}

} // namespace fedgo::numerics
