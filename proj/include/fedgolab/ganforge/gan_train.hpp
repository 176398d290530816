#pragma once

#include <cstdint>
#include <vector>

#include "fedgolab/ganforge/discriminator.hpp"
#include "fedgolab/ganforge/generator.hpp"
#include "fedgolab/numerics/optimizer.hpp"
#include "fedgolab/synthdata/dataset.hpp"

namespace fedgo::ganforge {

struct DiscTrainConfig {
  std::size_t epochs = 1;
  std::size_t batch_size = 64;
  std::vector<std::size_t> hidden = {64, 64};
  numerics::OptimizerConfig optimizer = numerics::OptimizerConfig::adam(2e-4, 0.5, 0.999);
  HeadKind head = HeadKind::DoubleSigmoid;
};

/// Trains a fresh discriminator against a fixed generator: per minibatch of
/// real rows, an equal number of fake rows is drawn and one step is taken on
/// the batch mean of -[log D(x_real) + log(1 - D(x_fake))]. epochs = 0
/// returns the seeded initialization untouched.
Discriminator train_discriminator(const Generator& gen, const synthdata::LabeledDataset& real,
                                  const DiscTrainConfig& config, std::uint64_t seed);

/// Batch mean of the vanilla objective -[log D(real) + log(1 - D(fake))].
double gan_discriminator_loss(const Discriminator& disc, const numerics::DenseMatrix& real,
                              const numerics::DenseMatrix& fake);

struct GanRoundConfig {
  std::size_t local_epochs = 3;
  std::size_t batch_size = 64;
  numerics::OptimizerConfig gen_optimizer = numerics::OptimizerConfig::adam(2e-4, 0.5, 0.999);
  numerics::OptimizerConfig disc_optimizer = numerics::OptimizerConfig::adam(2e-4, 0.5, 0.999);
  std::size_t threads = 1;
};

struct PoolGanConfig {
  std::size_t noise_dim = 2;
  std::vector<std::size_t> gen_hidden = {64, 64};
  std::vector<std::size_t> disc_hidden = {64, 64};
  std::size_t steps = 2000;
  std::size_t batch_size = 64;
  numerics::OptimizerConfig gen_optimizer = numerics::OptimizerConfig::adam(2e-4, 0.5, 0.999);
  numerics::OptimizerConfig disc_optimizer = numerics::OptimizerConfig::adam(2e-4, 0.5, 0.999);
};

/// Fits an MLP generator to an unlabeled pool with alternating vanilla-GAN
/// steps (one discriminator step, one generator step per minibatch).
Generator train_generator_on_pool(const synthdata::UnlabeledDataset& pool,
                                  const PoolGanConfig& config, std::uint64_t seed);

/// One communication round of federated GAN training: every client copies the
/// global generator/discriminator, runs the configured local epochs of
/// alternating vanilla-GAN updates on its own data, and the globals are
/// replaced by the dataset-size weighted parameter average.
void federated_gan_round(Generator& global_gen, Discriminator& global_disc,
                         const std::vector<synthdata::LabeledDataset>& clients,
                         const GanRoundConfig& config, std::uint64_t seed);

} // namespace fedgo::ganforge
