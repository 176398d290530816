#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fedgolab/numerics/mlp.hpp"
#include "fedgolab/synthdata/dataset.hpp"
#include "fedgolab/synthdata/discrete.hpp"
#include "fedgolab/theorylab/threshold.hpp"

namespace fedgo::theorylab {

/// Slack tolerance used wherever an exact mathematical inequality is asserted
/// on floating-point arithmetic.
constexpr double kInequalitySlack = 1e-9;

struct BoundReport {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0; // rhs - lhs
  bool holds = false; // slack >= -1e-9
  nlohmann::json metadata;

  static BoundReport make(std::string check, double lhs, double rhs, nlohmann::json metadata = {});
  std::string to_json_line() const;
};

/// Exact check of the convex-ensemble inequality on a finite-support
/// instance: the density-ratio weighted ensemble of arbitrary client models
/// never loses to the size-weighted average of per-client losses.
/// Models are single-output (sigmoid-squashed) for L1Binary and multi-output
/// logit models for CrossEntropy; other loss kinds are rejected.
BoundReport check_ensemble_inequality(const synthdata::DiscreteInstance& instance,
                                      const std::vector<numerics::MlpModel>& models,
                                      numerics::LossKind loss);

/// Exact check that the weighted ensemble of per-client exact minimizers is
/// at least as good as the best single hypothesis in the finite class.
BoundReport verify_theorem2_optimality(const synthdata::DiscreteInstance& instance,
                                       const ThresholdClass& cls);

/// Symmetric-difference divergence over a finite class, by exhaustive pair
/// enumeration: 2 * max_{h,h'} |Pr_q[h != h'] - Pr_q'[h != h']|. Refuses when
/// the pair count exceeds 1e7. Over a surrogate class this is a lower bound
/// of the divergence over any larger class.
double estimate_h_delta_h(const WeightedPoints& q, const WeightedPoints& q_prime,
                          const ThresholdClass& cls);

using BinaryModelFn = std::function<double(std::span<const double>)>; // output in [0, 1]

/// Empirical three-term decomposition of the distillation bound on binary
/// l1 semantics: loss(h on p) vs ensemble loss + cross term on p_s + half the
/// surrogate-class divergence. Reported, never asserted: sampling noise can
/// break the distribution-level inequality.
BoundReport theorem1_bound_terms(const BinaryModelFn& h, const BinaryModelFn& ensemble,
                                 const synthdata::LabeledDataset& p_samples,
                                 const synthdata::UnlabeledDataset& p_s_samples,
                                 const ThresholdClass& cls);

struct GeneralizationCheckParams {
  std::size_t samples_per_client = 50; // n_k
  double delta = 0.1;
  std::size_t trials = 200;
  std::size_t clients = 2;
  std::size_t support_size = 20;
  std::uint64_t seed = 0;
};

struct GeneralizationCheckResult {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double violation_rate = 0.0;
  double median_slack = 0.0;
  std::vector<BoundReport> reports;
};

/// Monte Carlo check of the sampling bound: empirical minimizers per client,
/// exact population loss of the weighted ensemble, growth-function slack term
/// with tau(m) = m + 1 for the one-polarity threshold class.
GeneralizationCheckResult generalization_bound_check(const GeneralizationCheckParams& params);

} // namespace fedgo::theorylab
