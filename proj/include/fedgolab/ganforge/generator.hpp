#pragma once

#include <cstdint>

#include "fedgolab/numerics/mlp.hpp"
#include "fedgolab/synthdata/dataset.hpp"

namespace fedgo::ganforge {

/// Fake-sample source. Either an MLP mapping gaussian noise to data space, or
/// a fixed pool resampled uniformly with replacement (the benchmark setting
/// treats the server's unlabeled set as the fake source).
struct Generator {
  enum class Kind { MlpBody, FixedSampler };

  Kind kind = Kind::FixedSampler;
  std::size_t noise_dim = 0;        // MlpBody
  numerics::MlpModel body;          // MlpBody
  synthdata::UnlabeledDataset pool; // FixedSampler

  std::size_t data_dim() const;

  static Generator mlp(std::size_t noise_dim, numerics::MlpModel body);
  static Generator fixed_sampler(synthdata::UnlabeledDataset pool);
};

/// m generated rows; deterministic in (generator, m, seed).
synthdata::UnlabeledDataset sample_generator(const Generator& gen, std::size_t m,
                                             std::uint64_t seed);

/// Noise batch and its forward image; used when the generator itself is being
/// trained and the noise must be kept for backprop.
struct GeneratorBatch {
  numerics::DenseMatrix noise;
  numerics::DenseMatrix samples;
};

GeneratorBatch sample_generator_batch(const Generator& gen, std::size_t m,
                                      numerics::RngStream& rng);

} // namespace fedgo::ganforge
