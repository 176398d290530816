#pragma once

#include <cstdint>
#include <vector>

#include "fedgolab/numerics/optimizer.hpp"

namespace fedgo::weighting {

/// Harness for the discriminator-odds consistency claim: with clamped-sigmoid
/// discriminators trained on known Gaussian clients against a shared uniform
/// fake pool, the odds-based weights should approach the density-ratio
/// weights as discriminator training lengthens.
struct WeightConvergenceParams {
  std::vector<std::size_t> epoch_grid = {1, 5, 30};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::size_t samples_per_client = 1024;
  std::size_t fake_pool_size = 2048;
  std::size_t eval_points = 512;
  std::size_t batch_size = 64;
  double gaussian_spacing = 2.0; // client means at (+-spacing, 0)
  double box_half_extent = 6.0;  // uniform fake support
  numerics::OptimizerConfig optimizer = numerics::OptimizerConfig::adam(1e-3);
};

struct WeightConvergenceResult {
  /// Median over seeds of the mean (over fake-pool evaluation points) of
  /// max_k |w_k^odds(x) - w_k^*(x)|, one entry per epoch grid value.
  std::vector<double> median_errors;
  bool monotone_non_increasing = false;
  double final_median = 0.0;
};

WeightConvergenceResult weight_convergence_check(const WeightConvergenceParams& params,
                                                 std::uint64_t seed);

} // namespace fedgo::weighting
