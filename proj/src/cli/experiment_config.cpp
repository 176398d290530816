#include "fedgolab/cli/experiment_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fedgolab/common/errors.hpp"
#include "fedgolab/synthdata/partition.hpp"

namespace fedgo::cli {

namespace {

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw config_error("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T require_field(const nlohmann::json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) {
    throw config_error("missing required field '" + key + "' in " + where);
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw config_error("field '" + key + "' in " + where + " has the wrong type");
  }
}

template <typename T>
void read_optional(const nlohmann::json& j, const std::string& key, T& value,
                   const std::string& where) {
  if (!j.contains(key)) return;
  try {
    value = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw config_error("field '" + key + "' in " + where + " has the wrong type");
  }
}

synthdata::GaussianMixtureSpec parse_dataset(const nlohmann::json& j) {
  reject_unknown_keys(j, {"components"}, "dataset");
  synthdata::GaussianMixtureSpec spec;
  for (const auto& cj : j.at("components")) {
    reject_unknown_keys(cj, {"mean", "variance", "label", "count"}, "dataset.components[]");
    synthdata::GaussianMixtureSpec::Component c;
    c.mean = require_field<std::vector<double>>(cj, "mean", "dataset component");
    c.variance = require_field<double>(cj, "variance", "dataset component");
    c.label = require_field<int>(cj, "label", "dataset component");
    c.count = require_field<std::size_t>(cj, "count", "dataset component");
    spec.components.push_back(std::move(c));
  }
  spec.validate();
  return spec;
}

// Rescales component counts to a new total by largest remainder, keeping
// every component non-empty.
synthdata::GaussianMixtureSpec scale_mixture(const synthdata::GaussianMixtureSpec& spec,
                                             std::size_t total) {
  std::size_t current = 0;
  for (const auto& c : spec.components) current += c.count;
  synthdata::GaussianMixtureSpec scaled = spec;
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < scaled.components.size(); ++i) {
    const double exact = static_cast<double>(spec.components[i].count) *
                         static_cast<double>(total) / static_cast<double>(current);
    scaled.components[i].count = static_cast<std::size_t>(std::floor(exact));
    assigned += scaled.components[i].count;
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t r = 0; assigned < total; ++r, ++assigned) {
    scaled.components[remainders[r % remainders.size()].second].count += 1;
  }
  for (auto& c : scaled.components) {
    if (c.count == 0) c.count = 1;
  }
  return scaled;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw config_error("config root must be a JSON object");
  reject_unknown_keys(
      j,
      {"name",          "scenario",       "weighting",      "entropy_tau",
       "seeds",         "clients",        "participation",  "rounds",
       "client_epochs", "server_epochs",  "disc_epochs",    "batch_size",
       "client_lr",     "server_lr",      "disc_optimizer", "disc_lr",
       "lr_schedule",   "disc_head",      "byzantine_clients", "dirichlet_alpha",
       "server_count",  "distill_samples", "gan_rounds",    "gan_local_epochs",
       "gan_pretrain_steps", "eval",      "dataset"},
      "config");

  ExperimentConfig config;
  config.scenario = require_field<std::string>(j, "scenario", "config");
  if (config.scenario != "toy" && config.scenario != "g1d1" && config.scenario != "g3d2") {
    throw config_error("field 'scenario' must be one of: toy, g1d1, g3d2");
  }
  config.weighting = require_field<std::string>(j, "weighting", "config");
  config.seeds = require_field<std::vector<std::uint64_t>>(j, "seeds", "config");
  if (config.seeds.empty()) throw config_error("field 'seeds' must be a non-empty array");

  read_optional(j, "name", config.name, "config");
  read_optional(j, "entropy_tau", config.entropy_tau, "config");
  read_optional(j, "clients", config.clients, "config");
  read_optional(j, "participation", config.participation, "config");
  read_optional(j, "rounds", config.rounds, "config");
  read_optional(j, "client_epochs", config.client_epochs, "config");
  read_optional(j, "server_epochs", config.server_epochs, "config");
  read_optional(j, "disc_epochs", config.disc_epochs, "config");
  read_optional(j, "batch_size", config.batch_size, "config");
  read_optional(j, "client_lr", config.client_lr, "config");
  read_optional(j, "server_lr", config.server_lr, "config");
  read_optional(j, "disc_optimizer", config.disc_optimizer, "config");
  read_optional(j, "disc_lr", config.disc_lr, "config");
  read_optional(j, "lr_schedule", config.lr_schedule, "config");
  read_optional(j, "disc_head", config.disc_head, "config");
  read_optional(j, "byzantine_clients", config.byzantine_clients, "config");
  read_optional(j, "dirichlet_alpha", config.dirichlet_alpha, "config");
  read_optional(j, "server_count", config.server_count, "config");
  read_optional(j, "distill_samples", config.distill_samples, "config");
  read_optional(j, "gan_rounds", config.gan_rounds, "config");
  read_optional(j, "gan_local_epochs", config.gan_local_epochs, "config");
  read_optional(j, "gan_pretrain_steps", config.gan_pretrain_steps, "config");

  if (j.contains("eval")) {
    const auto& ej = j.at("eval");
    reject_unknown_keys(ej, {"type", "points_per_axis", "half_extent", "count"}, "eval");
    config.eval_kind = require_field<std::string>(ej, "type", "eval");
    if (config.eval_kind != "grid" && config.eval_kind != "samples") {
      throw config_error("eval.type must be 'grid' or 'samples'");
    }
    read_optional(ej, "points_per_axis", config.eval_grid_points, "eval");
    read_optional(ej, "half_extent", config.eval_half_extent, "eval");
    read_optional(ej, "count", config.eval_samples, "eval");
  }

  if (j.contains("dataset")) {
    config.dataset = parse_dataset(j.at("dataset"));
  } else {
    config.dataset = synthdata::toy_mixture_spec();
  }

  if (config.lr_schedule != "constant" && config.lr_schedule != "cosine") {
    throw config_error("field 'lr_schedule' must be 'constant' or 'cosine'");
  }
  // Fail fast on bad enumerations.
  weighting::WeightingMethod::from_string(config.weighting, config.entropy_tau);
  ganforge::head_kind_from_name(config.disc_head);
  numerics::optimizer_kind_from_name(config.disc_optimizer);
  if (config.scenario == "toy" && config.clients != synthdata::kToyClientCount) {
    throw config_error("the toy scenario is defined for exactly 4 clients");
  }
  config.federation().validate();
  return config;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["scenario"] = scenario;
  j["weighting"] = weighting;
  j["entropy_tau"] = entropy_tau;
  j["seeds"] = seeds;
  j["clients"] = clients;
  j["participation"] = participation;
  j["rounds"] = rounds;
  j["client_epochs"] = client_epochs;
  j["server_epochs"] = server_epochs;
  j["disc_epochs"] = disc_epochs;
  j["batch_size"] = batch_size;
  j["client_lr"] = client_lr;
  j["server_lr"] = server_lr;
  j["disc_optimizer"] = disc_optimizer;
  j["disc_lr"] = disc_lr;
  j["lr_schedule"] = lr_schedule;
  j["disc_head"] = disc_head;
  j["byzantine_clients"] = byzantine_clients;
  j["dirichlet_alpha"] = dirichlet_alpha;
  j["server_count"] = server_count;
  j["distill_samples"] = distill_samples;
  j["gan_rounds"] = gan_rounds;
  j["gan_local_epochs"] = gan_local_epochs;
  j["gan_pretrain_steps"] = gan_pretrain_steps;
  j["eval"] = {{"type", eval_kind},
               {"points_per_axis", eval_grid_points},
               {"half_extent", eval_half_extent},
               {"count", eval_samples}};
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : dataset.components) {
    components.push_back({{"mean", c.mean},
                          {"variance", c.variance},
                          {"label", c.label},
                          {"count", c.count}});
  }
  j["dataset"] = {{"components", std::move(components)}};
  return j;
}

fedloop::FederationConfig ExperimentConfig::federation() const {
  fedloop::FederationConfig fc;
  fc.clients = clients;
  fc.participation = participation;
  fc.rounds = rounds;
  fc.client_epochs = client_epochs;
  fc.server_epochs = server_epochs;
  fc.disc_epochs = disc_epochs;
  fc.batch_size = batch_size;
  fc.client_optimizer = numerics::OptimizerConfig::adam(client_lr, 0.9, 0.999);
  fc.server_optimizer = numerics::OptimizerConfig::adam(server_lr, 0.9, 0.999);
  switch (numerics::optimizer_kind_from_name(disc_optimizer)) {
    case numerics::OptimizerKind::Sgd:
      fc.disc_optimizer = numerics::OptimizerConfig::sgd(disc_lr);
      break;
    case numerics::OptimizerKind::Adam:
      fc.disc_optimizer = numerics::OptimizerConfig::adam(disc_lr, 0.5, 0.999);
      break;
    case numerics::OptimizerKind::RmsProp:
      fc.disc_optimizer = numerics::OptimizerConfig::rmsprop(disc_lr);
      break;
  }
  fc.lr_schedule = lr_schedule == "cosine" ? fedloop::LrSchedule::CosineToZeroAtT
                                           : fedloop::LrSchedule::Constant;
  fc.method = weighting::WeightingMethod::from_string(weighting, entropy_tau);
  fc.disc_head = ganforge::head_kind_from_name(disc_head);
  fc.byzantine_clients = byzantine_clients;
  fc.gan_rounds = gan_rounds;
  fc.gan_local_epochs = gan_local_epochs;
  fc.gan_pretrain_steps = gan_pretrain_steps;
  fc.distill_samples = distill_samples;
  if (scenario == "toy") {
    fc.generator_policy = fedloop::GeneratorPolicy::FixedFromPool;
    fc.distill_source = fedloop::DistillSource::Pool;
  } else if (scenario == "g1d1") {
    fc.generator_policy = fedloop::GeneratorPolicy::TrainOnPool;
    fc.distill_source = fedloop::DistillSource::Pool;
  } else {
    fc.generator_policy = fedloop::GeneratorPolicy::Federated;
    fc.distill_source = fedloop::DistillSource::Generated;
  }
  return fc;
}

fedloop::ExperimentEnv ExperimentConfig::build_env(std::uint64_t seed) const {
  fedloop::ExperimentEnv env;

  if (scenario == "toy") {
    synthdata::ToyData toy = synthdata::make_toy_mixture(seed);
    env.clients = std::move(toy.clients);
    env.gan_pool = toy.server;
    env.distill_pool = synthdata::strip_labels(toy.global);
  } else {
    numerics::RngStream data_rng(numerics::derive_seed(seed, "env/data"));
    const synthdata::LabeledDataset global = synthdata::sample_mixture(dataset, data_rng);
    env.clients = synthdata::dirichlet_partition(global, clients, dirichlet_alpha,
                                                 numerics::derive_seed(seed, "env/partition"));
    if (scenario == "g1d1") {
      numerics::RngStream server_rng(numerics::derive_seed(seed, "env/server"));
      const synthdata::LabeledDataset server_labeled =
          synthdata::sample_mixture(scale_mixture(dataset, server_count), server_rng);
      env.gan_pool = synthdata::strip_labels(server_labeled);
      env.distill_pool = env.gan_pool;
    }
  }

  if (eval_kind == "grid") {
    env.test = synthdata::toy_oracle_grid(eval_grid_points, eval_half_extent);
  } else {
    numerics::RngStream eval_rng(numerics::derive_seed(seed, "env/eval"));
    env.test = synthdata::sample_mixture(scale_mixture(dataset, eval_samples), eval_rng);
  }
  return env;
}

ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  return ExperimentConfig::from_json(j);
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

} // namespace fedgo::cli
