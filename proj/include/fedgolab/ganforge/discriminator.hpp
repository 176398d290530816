#pragma once

#include <string_view>
#include <vector>

#include "fedgolab/numerics/mlp.hpp"

namespace fedgo::ganforge {

/// Output head on top of a single raw score.
///   SingleSigmoid: sigmoid clamped into [eps, 1-eps]; odds can express any
///                  density ratio up to ~1/eps.
///   DoubleSigmoid: sigmoid(sigmoid(raw)), output in (0.5, e/(1+e)), which
///                  pins the odds into (1, e) and stops any one client from
///                  dominating the weights.
enum class HeadKind { SingleSigmoid, DoubleSigmoid };

std::string_view head_kind_name(HeadKind head);
HeadKind head_kind_from_name(std::string_view name);

constexpr double kSingleSigmoidClamp = 1e-6;

double head_value(HeadKind head, double raw_score);
double head_max(HeadKind head);

/// Odds of a probability: phi / (1 - phi), defined on (0, 1).
struct OddsValue {
  double phi = 1.0;
};

OddsValue odds_of(double d);

/// Optimal fixed-generator discriminator output from known densities:
/// p_data / (p_data + p_g).
double analytic_optimal_discriminator(double p_data_density, double p_g_density);

/// MLP body producing one raw score, plus a head. A byzantine discriminator
/// ignores its body and emits the head's maximum value everywhere.
struct Discriminator {
  numerics::MlpModel body;
  HeadKind head = HeadKind::DoubleSigmoid;
  bool byzantine = false;

  void validate() const;

  /// Head outputs for a batch, one value per row.
  std::vector<double> values(const numerics::DenseMatrix& batch) const;
  double value(std::span<const double> point) const;
  std::vector<double> odds(const numerics::DenseMatrix& batch) const;
};

} // namespace fedgo::ganforge
