#include "fedgolab/weighting/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fedgolab/common/errors.hpp"
#include "fedgolab/ganforge/gan_train.hpp"
#include "fedgolab/weighting/weighting.hpp"

namespace fedgo::weighting {

namespace {

double gaussian_density_2d(double x, double y, double mx, double my, double variance) {
  const double sq = (x - mx) * (x - mx) + (y - my) * (y - my);
  return std::exp(-sq / (2.0 * variance)) / (2.0 * std::numbers::pi * variance);
}

} // namespace

WeightConvergenceResult weight_convergence_check(const WeightConvergenceParams& params,
                                                 std::uint64_t seed) {
  if (params.epoch_grid.empty() || params.seeds.empty()) {
    throw config_error("weight convergence check needs epochs and seeds");
  }

  const double spacing = params.gaussian_spacing;
  const double extent = params.box_half_extent;
  const std::vector<std::array<double, 2>> means = {{-spacing, 0.0}, {spacing, 0.0}};
  const std::vector<double> sizes = {1.0, 1.0};

  // Per epoch-grid entry, errors across seeds.
  std::vector<std::vector<double>> errors(params.epoch_grid.size());

  for (std::uint64_t run_seed : params.seeds) {
    const std::uint64_t base = numerics::derive_seed(seed, "weight_convergence", run_seed);

    // Known client samples.
    std::vector<synthdata::LabeledDataset> clients(2);
    for (std::size_t k = 0; k < 2; ++k) {
      numerics::RngStream rng(numerics::derive_seed(base, "client", k));
      clients[k].points = numerics::DenseMatrix(params.samples_per_client, 2);
      for (std::size_t i = 0; i < params.samples_per_client; ++i) {
        clients[k].points.at(i, 0) = means[k][0] + rng.gaussian();
        clients[k].points.at(i, 1) = means[k][1] + rng.gaussian();
      }
      clients[k].labels.assign(params.samples_per_client, 0);
    }

    // Shared uniform fake pool and held-out evaluation points from it.
    numerics::RngStream pool_rng(numerics::derive_seed(base, "pool"));
    synthdata::UnlabeledDataset pool;
    pool.points = numerics::DenseMatrix(params.fake_pool_size, 2);
    for (double& v : pool.points.data) v = pool_rng.uniform(-extent, extent);
    const ganforge::Generator gen = ganforge::Generator::fixed_sampler(pool);

    numerics::DenseMatrix eval_points(params.eval_points, 2);
    numerics::RngStream eval_rng(numerics::derive_seed(base, "eval"));
    for (double& v : eval_points.data) v = eval_rng.uniform(-extent, extent);

    const double uniform_density = 1.0 / ((2.0 * extent) * (2.0 * extent));

    for (std::size_t e = 0; e < params.epoch_grid.size(); ++e) {
      ganforge::DiscTrainConfig disc_config;
      disc_config.epochs = params.epoch_grid[e];
      disc_config.batch_size = params.batch_size;
      disc_config.optimizer = params.optimizer;
      disc_config.head = ganforge::HeadKind::SingleSigmoid;

      std::vector<std::vector<double>> odds(2);
      for (std::size_t k = 0; k < 2; ++k) {
        const ganforge::Discriminator disc = ganforge::train_discriminator(
            gen, clients[k], disc_config, numerics::derive_seed(base, "disc", k));
        odds[k] = disc.odds(eval_points);
      }

      double total_error = 0.0;
      for (std::size_t i = 0; i < eval_points.rows; ++i) {
        const double x = eval_points.at(i, 0);
        const double y = eval_points.at(i, 1);
        std::vector<double> densities(2);
        for (std::size_t k = 0; k < 2; ++k) {
          densities[k] = gaussian_density_2d(x, y, means[k][0], means[k][1], 1.0);
        }
        // Keep the analytic weights well-defined far from both Gaussians.
        if (densities[0] + densities[1] < 1e-12 * uniform_density) continue;
        const WeightVector analytic = analytic_optimal_weights(densities, sizes);

        std::vector<double> scores = {sizes[0] * odds[0][i], sizes[1] * odds[1][i]};
        const double score_total = scores[0] + scores[1];
        double max_gap = 0.0;
        for (std::size_t k = 0; k < 2; ++k) {
          max_gap = std::max(max_gap,
                             std::abs(scores[k] / score_total - analytic.weights[k]));
        }
        total_error += max_gap;
      }
      errors[e].push_back(total_error / static_cast<double>(eval_points.rows));
    }
  }

  WeightConvergenceResult result;
  for (auto& per_seed : errors) {
    std::sort(per_seed.begin(), per_seed.end());
    result.median_errors.push_back(per_seed[per_seed.size() / 2]);
  }
  result.monotone_non_increasing = true;
  for (std::size_t e = 1; e < result.median_errors.size(); ++e) {
    if (result.median_errors[e] > result.median_errors[e - 1] + 1e-12) {
      result.monotone_non_increasing = false;
    }
  }
  result.final_median = result.median_errors.back();
  return result;
}

} // namespace fedgo::weighting
