#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fedgo::weighting {

/// Per-point client weight rule used when pseudo-labeling.
///   Uniform:     1/K each
///   Variance:    proportional to the population variance of the client's
///                logit coordinates; all-zero variances fall back to Uniform
///   Entropy:     proportional to exp(-H(softmax(logits)) / tau)
///   DomainAware: proportional to the discriminator output D_k(x)
///   FedGo:       proportional to n_k * odds(D_k(x))
struct WeightingMethod {
  enum class Kind { Uniform, Variance, Entropy, DomainAware, FedGo };

  Kind kind = Kind::Uniform;
  double tau = 1.0; // Entropy temperature

  bool needs_discriminators() const {
    return kind == Kind::DomainAware || kind == Kind::FedGo;
  }

  static WeightingMethod from_string(std::string_view name, double tau = 1.0);
  std::string_view name() const;
};

/// Nonnegative weights over the participating clients, summing to 1.
struct WeightVector {
  std::vector<double> weights;

  /// Throws unless entries are >= 0 and sum to 1 within 1e-9.
  void validate() const;
};

/// Weights for one data point. client_logits holds each client's logit row at
/// the point; disc_values holds each client's discriminator output there and
/// is required for DomainAware and FedGo.
WeightVector compute_weights(const WeightingMethod& method,
                             const std::vector<std::span<const double>>& client_logits,
                             const std::optional<std::vector<double>>& disc_values,
                             std::span<const double> sizes);

/// Density-ratio weights from known densities: n_k p_k(x) / sum_i n_i p_i(x).
WeightVector analytic_optimal_weights(std::span<const double> densities,
                                      std::span<const double> sizes);

} // namespace fedgo::weighting
