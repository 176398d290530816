#pragma once

#include <cstddef>
#include <vector>

#include "fedgolab/ganforge/discriminator.hpp"
#include "fedgolab/numerics/optimizer.hpp"
#include "fedgolab/weighting/weighting.hpp"

namespace fedgo::fedloop {

enum class LrSchedule { Constant, CosineToZeroAtT };

/// How the fake-sample source is obtained before the main rounds.
enum class GeneratorPolicy {
  FixedFromPool, // resample the provided pool directly
  TrainOnPool,   // fit an MLP generator to the pool with a local GAN loop
  Federated,     // train generator/discriminator pair over the clients
};

/// What the server distills on.
enum class DistillSource { Pool, Generated };

struct FederationConfig {
  std::size_t clients = 4;     // K
  double participation = 1.0;  // C, fraction per round
  std::size_t rounds = 1;      // T
  std::size_t client_epochs = 2;
  std::size_t server_epochs = 2; // E_s; 0 recovers plain parameter averaging
  std::size_t disc_epochs = 1;   // E_d
  std::size_t batch_size = 64;

  numerics::OptimizerConfig client_optimizer = numerics::OptimizerConfig::adam(1e-3);
  numerics::OptimizerConfig server_optimizer = numerics::OptimizerConfig::adam(1e-3);
  numerics::OptimizerConfig disc_optimizer = numerics::OptimizerConfig::rmsprop(5e-5);
  numerics::OptimizerConfig gan_optimizer = numerics::OptimizerConfig::adam(2e-4, 0.5, 0.999);

  LrSchedule lr_schedule = LrSchedule::Constant;
  weighting::WeightingMethod method;
  ganforge::HeadKind disc_head = ganforge::HeadKind::DoubleSigmoid;
  GeneratorPolicy generator_policy = GeneratorPolicy::FixedFromPool;
  DistillSource distill_source = DistillSource::Pool;
  std::vector<std::size_t> byzantine_clients;

  std::vector<std::size_t> classifier_hidden = {64, 64};
  std::vector<std::size_t> disc_hidden = {64, 64};
  std::size_t gen_noise_dim = 2;
  std::vector<std::size_t> gen_hidden = {64, 64};
  std::size_t gan_pretrain_steps = 2000; // TrainOnPool
  std::size_t gan_rounds = 5;            // T', Federated
  std::size_t gan_local_epochs = 3;
  std::size_t distill_samples = 1200; // DistillSource::Generated

  std::size_t threads = 1;
  bool record_bound_diagnostics = true;

  void validate() const;
};

struct RoundMetrics {
  std::size_t round = 0;
  double server_accuracy = 0.0;
  double ensemble_accuracy = 0.0;
  double ensemble_loss = 0.0;
  double distill_kl = 0.0;
  double wall_ms = 0.0;
};

/// Per-round decomposition of the distillation bound on the binary
/// restriction (class 0 vs rest). Diagnostic only; finite samples can break
/// the distribution-level inequality.
struct BoundDiagnostic {
  std::size_t round = 0;
  double server_loss = 0.0;
  double ensemble_loss = 0.0;
  double cross_term = 0.0;
  double half_divergence = 0.0;
  double slack = 0.0; // rhs - lhs
};

/// Cosine schedule is fixed within a round and reaches zero at the final
/// round; Constant keeps the base rate.
double scheduled_lr(LrSchedule schedule, double base_lr, std::size_t round,
                    std::size_t total_rounds);

} // namespace fedgo::fedloop
