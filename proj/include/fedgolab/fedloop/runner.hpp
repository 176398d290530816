#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fedgolab/fedloop/config.hpp"
#include "fedgolab/ganforge/gan_train.hpp"
#include "fedgolab/synthdata/dataset.hpp"

namespace fedgo::fedloop {

/// Participating client indices for one round: floor(C*K) drawn uniformly
/// without replacement, returned in ascending order. Deterministic in the
/// round seed.
std::vector<std::size_t> sample_clients(std::size_t clients, double participation,
                                        std::uint64_t round_seed);

/// Local training: the client copies the server parameters and runs the given
/// epochs of shuffled minibatch cross-entropy. An empty dataset returns
/// nullopt, the signal to exclude the client from this round's aggregation.
std::optional<numerics::MlpModel> client_update(const numerics::MlpModel& server_model,
                                                const synthdata::LabeledDataset& data,
                                                std::size_t epochs, std::size_t class_count,
                                                const numerics::OptimizerConfig& optimizer,
                                                std::size_t batch_size, std::uint64_t seed);

/// Coordinate-wise dataset-size weighted parameter mean.
numerics::MlpModel fedavg_aggregate(const std::vector<numerics::MlpModel>& models,
                                    const std::vector<double>& sizes);

/// Per-row client weights for a batch. disc_values may be null for methods
/// that do not use discriminators.
std::vector<weighting::WeightVector> batch_weights(
    const weighting::WeightingMethod& method,
    const std::vector<numerics::DenseMatrix>& client_logits,
    const std::vector<std::vector<double>>* disc_values, const std::vector<double>& sizes);

/// Row-wise weighted sum of client logit matrices.
numerics::DenseMatrix weighted_logit_sum(const std::vector<numerics::DenseMatrix>& client_logits,
                                         const std::vector<weighting::WeightVector>& row_weights);

/// Soft targets: softmax of the weighted client logit sum.
numerics::DenseMatrix pseudo_label(const std::vector<numerics::DenseMatrix>& client_logits,
                                   const std::vector<weighting::WeightVector>& row_weights);

using PseudoLabeler = std::function<numerics::DenseMatrix(const numerics::DenseMatrix&)>;

/// Server-side ensemble distillation: `epochs` passes over shuffled
/// minibatches of the distillation set, pseudo-labels recomputed per batch,
/// one KL gradient step each. Silently a no-op for epochs = 0.
void distill_server(numerics::MlpModel& server_model,
                    const synthdata::UnlabeledDataset& distill_set, const PseudoLabeler& labeler,
                    std::size_t epochs, const numerics::OptimizerConfig& optimizer,
                    std::size_t batch_size, std::uint64_t seed);

/// Mean KL(pseudo-label || server softmax) over the whole set.
double mean_distill_kl(const numerics::MlpModel& server_model,
                       const synthdata::UnlabeledDataset& distill_set,
                       const PseudoLabeler& labeler, std::size_t batch_size);

struct EvalResult {
  double accuracy = 0.0;
  double mean_loss = 0.0;
};

using LogitsFn = std::function<numerics::DenseMatrix(const numerics::DenseMatrix&)>;

/// Argmax accuracy (ties to the lowest class index) and mean cross-entropy of
/// the softmax outputs.
EvalResult evaluate(const LogitsFn& model, const synthdata::LabeledDataset& test);

/// Data environment for one experiment. gan_pool feeds the generator policy
/// (fake pool or generator training data); distill_pool is the D1
/// distillation set and may be empty when distilling on generated samples.
struct ExperimentEnv {
  std::vector<synthdata::LabeledDataset> clients;
  synthdata::UnlabeledDataset gan_pool;
  synthdata::UnlabeledDataset distill_pool;
  synthdata::LabeledDataset test;
};

struct ExperimentResult {
  std::vector<RoundMetrics> metrics;
  std::vector<BoundDiagnostic> bound_diagnostics;
  std::vector<std::string> warnings;
  numerics::MlpModel server_model;
  ganforge::Generator generator;
  std::vector<ganforge::Discriminator> discriminators;
  std::vector<std::size_t> last_round_participants;
  std::vector<numerics::MlpModel> last_round_models;
};

using RoundCallback = std::function<void(const RoundMetrics&)>;

/// Full run: generator preparation, one discriminator per client, then
/// `rounds` iterations of sample / local train / average / distill / score.
/// Deterministic in (env, config, seed) regardless of config.threads.
ExperimentResult run_experiment(const ExperimentEnv& env, const FederationConfig& config,
                                std::uint64_t seed, const RoundCallback& on_round = nullptr);

} // namespace fedgo::fedloop
