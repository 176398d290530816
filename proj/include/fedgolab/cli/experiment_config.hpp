#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fedgolab/fedloop/runner.hpp"
#include "fedgolab/synthdata/mixture.hpp"

namespace fedgo::cli {

/// Full experiment description as read from a config file. Parsing is strict:
/// unknown keys are rejected, required fields are named in the error.
struct ExperimentConfig {
  std::string name = "experiment";
  std::string scenario;  // "toy" | "g1d1" | "g3d2"
  std::string weighting; // "uniform" | "variance" | "entropy" | "domain_aware" | "fedgo"
  double entropy_tau = 1.0;
  std::vector<std::uint64_t> seeds;

  std::size_t clients = 4;
  double participation = 1.0;
  std::size_t rounds = 1;
  std::size_t client_epochs = 2;
  std::size_t server_epochs = 2;
  std::size_t disc_epochs = 1;
  std::size_t batch_size = 64;

  double client_lr = 1e-3;
  double server_lr = 1e-3;
  std::string disc_optimizer = "rmsprop";
  double disc_lr = 5e-5;
  std::string lr_schedule = "constant"; // "constant" | "cosine"
  std::string disc_head = "double_sigmoid";
  std::vector<std::size_t> byzantine_clients;

  double dirichlet_alpha = 0.1;    // g1d1 / g3d2 client split
  std::size_t server_count = 300;  // g1d1 unlabeled pool size
  std::size_t distill_samples = 1200;
  std::size_t gan_rounds = 5;
  std::size_t gan_local_epochs = 3;
  std::size_t gan_pretrain_steps = 2000;

  std::string eval_kind = "grid"; // "grid" | "samples"
  std::size_t eval_grid_points = 100;
  double eval_half_extent = 12.0;
  std::size_t eval_samples = 1000;

  synthdata::GaussianMixtureSpec dataset; // defaults to the benchmark mixture

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  /// Maps onto the federation runner's config (threads set separately).
  fedloop::FederationConfig federation() const;

  /// Builds the data environment for one seed.
  fedloop::ExperimentEnv build_env(std::uint64_t seed) const;
};

ExperimentConfig load_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

} // namespace fedgo::cli
