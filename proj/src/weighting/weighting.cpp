#include "fedgolab/weighting/weighting.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fedgolab/common/errors.hpp"
#include "fedgolab/ganforge/discriminator.hpp"
#include "fedgolab/numerics/loss.hpp"

namespace fedgo::weighting {

WeightingMethod WeightingMethod::from_string(std::string_view name, double tau) {
  WeightingMethod method;
  method.tau = tau;
  if (name == "uniform") {
    method.kind = Kind::Uniform;
  } else if (name == "variance") {
    method.kind = Kind::Variance;
  } else if (name == "entropy") {
    method.kind = Kind::Entropy;
  } else if (name == "domain_aware") {
    method.kind = Kind::DomainAware;
  } else if (name == "fedgo") {
    method.kind = Kind::FedGo;
  } else {
    throw config_error("unknown weighting method: " + std::string(name));
  }
  if (!(method.tau > 0.0)) throw config_error("entropy tau must be positive");
  return method;
}

std::string_view WeightingMethod::name() const {
  switch (kind) {
    case Kind::Uniform: return "uniform";
    case Kind::Variance: return "variance";
    case Kind::Entropy: return "entropy";
    case Kind::DomainAware: return "domain_aware";
    case Kind::FedGo: return "fedgo";
  }
  return "unknown";
}

void WeightVector::validate() const {
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) {
      std::ostringstream msg;
      msg << "weight " << w << " is negative";
      throw validation_error(msg.str());
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "weights sum to " << sum << ", expected 1 +- 1e-9";
    throw validation_error(msg.str());
  }
}

namespace {

WeightVector normalized(std::vector<double> scores) {
  double total = 0.0;
  for (double s : scores) total += s;
  if (total <= 0.0) {
    // Degenerate scores: fall back to uniform.
    const double u = 1.0 / static_cast<double>(scores.size());
    for (double& s : scores) s = u;
  } else {
    for (double& s : scores) s /= total;
  }
  WeightVector out{std::move(scores)};
  out.validate();
  return out;
}

double logit_variance(std::span<const double> logits) {
  const double n = static_cast<double>(logits.size());
  double mean = 0.0;
  for (double z : logits) mean += z;
  mean /= n;
  double var = 0.0;
  for (double z : logits) var += (z - mean) * (z - mean);
  return var / n;
}

} // namespace

WeightVector compute_weights(const WeightingMethod& method,
                             const std::vector<std::span<const double>>& client_logits,
                             const std::optional<std::vector<double>>& disc_values,
                             std::span<const double> sizes) {
  const std::size_t count = client_logits.size();
  if (count == 0) throw config_error("compute_weights: no clients");
  if (sizes.size() != count) throw config_error("compute_weights: one size per client required");
  if (method.needs_discriminators()) {
    if (!disc_values.has_value()) {
      throw config_error(std::string(method.name()) + " weighting requires discriminators");
    }
    if (disc_values->size() != count) {
      throw config_error("compute_weights: one discriminator value per client required");
    }
  }

  std::vector<double> scores(count, 0.0);
  switch (method.kind) {
    case WeightingMethod::Kind::Uniform:
      for (double& s : scores) s = 1.0;
      break;
    case WeightingMethod::Kind::Variance:
      for (std::size_t k = 0; k < count; ++k) scores[k] = logit_variance(client_logits[k]);
      break;
    case WeightingMethod::Kind::Entropy:
      for (std::size_t k = 0; k < count; ++k) {
        const auto probs = numerics::softmax_stable(client_logits[k]);
        scores[k] = std::exp(-numerics::entropy_nat(probs) / method.tau);
      }
      break;
    case WeightingMethod::Kind::DomainAware:
      scores = *disc_values;
      break;
    case WeightingMethod::Kind::FedGo:
      for (std::size_t k = 0; k < count; ++k) {
        scores[k] = sizes[k] * ganforge::odds_of((*disc_values)[k]).phi;
      }
      break;
  }
  return normalized(std::move(scores));
}

WeightVector analytic_optimal_weights(std::span<const double> densities,
                                      std::span<const double> sizes) {
  if (densities.empty()) throw config_error("analytic_optimal_weights: no clients");
  if (densities.size() != sizes.size()) {
    throw config_error("analytic_optimal_weights: one size per density required");
  }
  std::vector<double> scores(densities.size());
  double total = 0.0;
  for (std::size_t k = 0; k < densities.size(); ++k) {
    if (densities[k] < 0.0) throw config_error("analytic_optimal_weights: negative density");
    if (!(sizes[k] > 0.0)) throw config_error("analytic_optimal_weights: sizes must be positive");
    scores[k] = sizes[k] * densities[k];
    total += scores[k];
  }
  if (total <= 0.0) {
    throw config_error("analytic_optimal_weights: undefined where all densities vanish");
  }
  for (double& s : scores) s /= total;
  WeightVector out{std::move(scores)};
  out.validate();
  return out;
}

} // namespace fedgo::weighting
