#include "fedgolab/fedloop/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fedgolab/common/errors.hpp"
#include "fedgolab/common/parallel.hpp"
#include "fedgolab/theorylab/bounds.hpp"

namespace fedgo::fedloop {

void FederationConfig::validate() const {
  if (clients == 0) throw config_error("config: at least one client required");
  if (!(participation > 0.0) || participation > 1.0) {
    throw config_error("config: participation must be in (0, 1]");
  }
  if (static_cast<std::size_t>(std::floor(participation * static_cast<double>(clients))) == 0) {
    throw config_error("config: participation * clients must select at least one client");
  }
  if (rounds == 0) throw config_error("config: rounds must be >= 1");
  if (batch_size == 0) throw config_error("config: batch size must be positive");
  client_optimizer.validate();
  server_optimizer.validate();
  disc_optimizer.validate();
  gan_optimizer.validate();
  for (std::size_t b : byzantine_clients) {
    if (b >= clients) {
      std::ostringstream msg;
      msg << "config: byzantine client index " << b << " out of range for " << clients
          << " clients";
      throw config_error(msg.str());
    }
  }
  if (distill_source == DistillSource::Generated && distill_samples == 0) {
    throw config_error("config: distill_samples must be positive when distilling on samples");
  }
}

double scheduled_lr(LrSchedule schedule, double base_lr, std::size_t round,
                    std::size_t total_rounds) {
  switch (schedule) {
    case LrSchedule::Constant:
      return base_lr;
    case LrSchedule::CosineToZeroAtT: {
      const double phase = static_cast<double>(round) / static_cast<double>(total_rounds);
      return base_lr * 0.5 * (1.0 + std::cos(std::numbers::pi * phase));
    }
  }
  return base_lr;
}

std::vector<std::size_t> sample_clients(std::size_t clients, double participation,
                                        std::uint64_t round_seed) {
  const std::size_t take =
      static_cast<std::size_t>(std::floor(participation * static_cast<double>(clients)));
  if (take == 0) throw config_error("sample_clients: no clients selected");

  std::vector<std::size_t> indices(clients);
  std::iota(indices.begin(), indices.end(), 0);
  numerics::RngStream rng(round_seed);
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + rng.below(clients - i);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(take);
  std::sort(indices.begin(), indices.end());
  return indices;
}

namespace {

numerics::DenseMatrix one_hot_rows(std::span<const int> labels, std::size_t classes) {
  numerics::DenseMatrix out(labels.size(), classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.at(i, static_cast<std::size_t>(labels[i])) = 1.0;
  }
  return out;
}

numerics::DenseMatrix rows_subset(const numerics::DenseMatrix& m,
                                  const std::vector<std::size_t>& order, std::size_t begin,
                                  std::size_t end) {
  numerics::DenseMatrix out(end - begin, m.cols);
  for (std::size_t i = begin; i < end; ++i) {
    const auto src = m.row(order[i]);
    std::copy(src.begin(), src.end(), out.row(i - begin).begin());
  }
  return out;
}

double row_cross_entropy(std::span<const double> logits, int label) {
  double max = logits[0];
  for (double z : logits) max = std::max(max, z);
  double acc = 0.0;
  for (double z : logits) acc += std::exp(z - max);
  const double lse = max + std::log(acc);
  return lse - logits[static_cast<std::size_t>(label)];
}

std::size_t argmax_row(std::span<const double> logits) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < logits.size(); ++j) {
    if (logits[j] > logits[best]) best = j;
  }
  return best;
}

} // namespace

std::optional<numerics::MlpModel> client_update(const numerics::MlpModel& server_model,
                                                const synthdata::LabeledDataset& data,
                                                std::size_t epochs, std::size_t class_count,
                                                const numerics::OptimizerConfig& optimizer,
                                                std::size_t batch_size, std::uint64_t seed) {
  if (data.size() == 0) return std::nullopt;
  if (batch_size == 0) throw config_error("client_update: batch size must be positive");

  numerics::MlpModel model = server_model;
  if (epochs == 0) return model;

  numerics::RngStream order_rng(numerics::derive_seed(seed, "client/order"));
  numerics::OptimizerState opt_state = numerics::OptimizerState::create(optimizer, model);
  const numerics::DenseMatrix targets = one_hot_rows(data.labels, class_count);

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    order_rng.shuffle(order);
    for (std::size_t begin = 0; begin < order.size(); begin += batch_size) {
      const std::size_t end = std::min(begin + batch_size, order.size());
      const numerics::DenseMatrix batch = rows_subset(data.points, order, begin, end);
      const numerics::DenseMatrix batch_targets = rows_subset(targets, order, begin, end);
      auto [loss, grads] =
          numerics::mlp_grad(model, batch, batch_targets, numerics::LossKind::CrossEntropy);
      numerics::optimizer_step(opt_state, model, grads);
    }
  }
  return model;
}

numerics::MlpModel fedavg_aggregate(const std::vector<numerics::MlpModel>& models,
                                    const std::vector<double>& sizes) {
  std::vector<const numerics::MlpModel*> pointers;
  pointers.reserve(models.size());
  for (const auto& m : models) pointers.push_back(&m);
  return numerics::weighted_average_params(pointers, sizes);
}

std::vector<weighting::WeightVector> batch_weights(
    const weighting::WeightingMethod& method,
    const std::vector<numerics::DenseMatrix>& client_logits,
    const std::vector<std::vector<double>>* disc_values, const std::vector<double>& sizes) {
  if (client_logits.empty()) throw config_error("batch_weights: no clients");
  const std::size_t rows = client_logits.front().rows;
  std::vector<weighting::WeightVector> out;
  out.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<std::span<const double>> logit_rows;
    logit_rows.reserve(client_logits.size());
    for (const auto& logits : client_logits) logit_rows.push_back(logits.row(i));
    std::optional<std::vector<double>> dvals;
    if (disc_values != nullptr) {
      std::vector<double> row_values(disc_values->size());
      for (std::size_t k = 0; k < disc_values->size(); ++k) row_values[k] = (*disc_values)[k][i];
      dvals = std::move(row_values);
    }
    out.push_back(weighting::compute_weights(method, logit_rows, dvals, sizes));
  }
  return out;
}

numerics::DenseMatrix weighted_logit_sum(const std::vector<numerics::DenseMatrix>& client_logits,
                                         const std::vector<weighting::WeightVector>& row_weights) {
  if (client_logits.empty()) throw config_error("weighted_logit_sum: no clients");
  const std::size_t rows = client_logits.front().rows;
  const std::size_t cols = client_logits.front().cols;
  if (row_weights.size() != rows) {
    throw config_error("weighted_logit_sum: one weight vector per row required");
  }
  numerics::DenseMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto dst = out.row(i);
    const auto& w = row_weights[i].weights;
    if (w.size() != client_logits.size()) {
      throw config_error("weighted_logit_sum: weight length mismatch");
    }
    for (std::size_t k = 0; k < client_logits.size(); ++k) {
      const auto src = client_logits[k].row(i);
      for (std::size_t j = 0; j < cols; ++j) dst[j] += w[k] * src[j];
    }
  }
  return out;
}

numerics::DenseMatrix pseudo_label(const std::vector<numerics::DenseMatrix>& client_logits,
                                   const std::vector<weighting::WeightVector>& row_weights) {
  return numerics::softmax_rows(weighted_logit_sum(client_logits, row_weights));
}

void distill_server(numerics::MlpModel& server_model,
                    const synthdata::UnlabeledDataset& distill_set, const PseudoLabeler& labeler,
                    std::size_t epochs, const numerics::OptimizerConfig& optimizer,
                    std::size_t batch_size, std::uint64_t seed) {
  if (epochs == 0 || distill_set.size() == 0) return;
  if (batch_size == 0) throw config_error("distill_server: batch size must be positive");

  numerics::RngStream order_rng(numerics::derive_seed(seed, "distill/order"));
  numerics::OptimizerState opt_state = numerics::OptimizerState::create(optimizer, server_model);
  std::vector<std::size_t> order(distill_set.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    order_rng.shuffle(order);
    for (std::size_t begin = 0; begin < order.size(); begin += batch_size) {
      const std::size_t end = std::min(begin + batch_size, order.size());
      const numerics::DenseMatrix batch = rows_subset(distill_set.points, order, begin, end);
      const numerics::DenseMatrix targets = labeler(batch);
      auto [loss, grads] =
          numerics::mlp_grad(server_model, batch, targets, numerics::LossKind::KlToTarget);
      numerics::optimizer_step(opt_state, server_model, grads);
    }
  }
}

double mean_distill_kl(const numerics::MlpModel& server_model,
                       const synthdata::UnlabeledDataset& distill_set,
                       const PseudoLabeler& labeler, std::size_t batch_size) {
  if (distill_set.size() == 0) return 0.0;
  double total = 0.0;
  std::vector<std::size_t> order(distill_set.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t begin = 0; begin < distill_set.size(); begin += batch_size) {
    const std::size_t end = std::min(begin + batch_size, distill_set.size());
    const numerics::DenseMatrix batch = rows_subset(distill_set.points, order, begin, end);
    const numerics::DenseMatrix targets = labeler(batch);
    const numerics::DenseMatrix logits = mlp_forward(server_model, batch);
    const numerics::LossGrad lg =
        numerics::loss_grad_from_logits(numerics::LossKind::KlToTarget, logits, targets);
    total += lg.loss * static_cast<double>(end - begin);
  }
  return total / static_cast<double>(distill_set.size());
}

EvalResult evaluate(const LogitsFn& model, const synthdata::LabeledDataset& test) {
  if (test.size() == 0) throw config_error("evaluate: empty test set");
  const numerics::DenseMatrix logits = model(test.points);
  require_shape(logits, test.size(), logits.cols, "evaluate logits");
  EvalResult result;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto row = logits.row(i);
    if (argmax_row(row) == static_cast<std::size_t>(test.labels[i])) ++correct;
    result.mean_loss += row_cross_entropy(row, test.labels[i]);
  }
  result.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
  result.mean_loss /= static_cast<double>(test.size());
  return result;
}

namespace {

struct WeightingContext {
  const weighting::WeightingMethod* method = nullptr;
  std::vector<const numerics::MlpModel*> models;
  std::vector<const ganforge::Discriminator*> discriminators;
  std::vector<double> sizes;

  std::vector<numerics::DenseMatrix> logits(const numerics::DenseMatrix& batch) const {
    std::vector<numerics::DenseMatrix> out;
    out.reserve(models.size());
    for (const auto* model : models) out.push_back(mlp_forward(*model, batch));
    return out;
  }

  std::optional<std::vector<std::vector<double>>> disc_values(
      const numerics::DenseMatrix& batch) const {
    if (!method->needs_discriminators()) return std::nullopt;
    std::vector<std::vector<double>> out;
    out.reserve(discriminators.size());
    for (const auto* disc : discriminators) out.push_back(disc->values(batch));
    return out;
  }

  std::vector<weighting::WeightVector> weights(
      const std::vector<numerics::DenseMatrix>& client_logits,
      const std::optional<std::vector<std::vector<double>>>& dvals) const {
    return batch_weights(*method, client_logits, dvals ? &*dvals : nullptr, sizes);
  }

  numerics::DenseMatrix ensemble_logits(const numerics::DenseMatrix& batch) const {
    const auto client_logits = logits(batch);
    const auto dvals = disc_values(batch);
    return weighted_logit_sum(client_logits, weights(client_logits, dvals));
  }

  numerics::DenseMatrix pseudo_labels(const numerics::DenseMatrix& batch) const {
    return numerics::softmax_rows(ensemble_logits(batch));
  }
};

// Binary (class 0 vs rest) decomposition of the distillation bound over a
// fixed threshold surrogate class; diagnostic only.
BoundDiagnostic bound_diagnostic(std::size_t round, const numerics::MlpModel& server_model,
                                 const WeightingContext& ctx,
                                 const synthdata::LabeledDataset& test,
                                 const synthdata::UnlabeledDataset& distill_set) {
  BoundDiagnostic diag;
  diag.round = round;

  auto server_binary = [&](const numerics::DenseMatrix& points) {
    const numerics::DenseMatrix logits = mlp_forward(server_model, points);
    std::vector<double> out(points.rows);
    for (std::size_t i = 0; i < points.rows; ++i) {
      out[i] = argmax_row(logits.row(i)) == 0 ? 1.0 : 0.0;
    }
    return out;
  };
  auto ensemble_binary = [&](const numerics::DenseMatrix& points) {
    const auto client_logits = ctx.logits(points);
    const auto dvals = ctx.disc_values(points);
    const auto weights = ctx.weights(client_logits, dvals);
    std::vector<double> out(points.rows, 0.0);
    for (std::size_t i = 0; i < points.rows; ++i) {
      for (std::size_t k = 0; k < client_logits.size(); ++k) {
        if (argmax_row(client_logits[k].row(i)) == 0) out[i] += weights[i].weights[k];
      }
    }
    return out;
  };

  const auto server_on_test = server_binary(test.points);
  const auto ensemble_on_test = ensemble_binary(test.points);
  double server_loss = 0.0;
  double ensemble_loss = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const double y = test.labels[i] == 0 ? 1.0 : 0.0;
    server_loss += std::abs(server_on_test[i] - y);
    ensemble_loss += std::abs(ensemble_on_test[i] - y);
  }
  diag.server_loss = server_loss / static_cast<double>(test.size());
  diag.ensemble_loss = ensemble_loss / static_cast<double>(test.size());

  if (distill_set.size() > 0) {
    const auto server_on_distill = server_binary(distill_set.points);
    const auto ensemble_on_distill = ensemble_binary(distill_set.points);
    double cross = 0.0;
    for (std::size_t i = 0; i < distill_set.size(); ++i) {
      cross += std::abs(server_on_distill[i] - ensemble_on_distill[i]);
    }
    diag.cross_term = cross / static_cast<double>(distill_set.size());

    // 64 evenly spaced thresholds on the first coordinate spanning both sets.
    double lo = test.points.at(0, 0);
    double hi = lo;
    for (std::size_t i = 0; i < test.size(); ++i) {
      lo = std::min(lo, test.points.at(i, 0));
      hi = std::max(hi, test.points.at(i, 0));
    }
    for (std::size_t i = 0; i < distill_set.size(); ++i) {
      lo = std::min(lo, distill_set.points.at(i, 0));
      hi = std::max(hi, distill_set.points.at(i, 0));
    }
    theorylab::ThresholdClass cls;
    cls.axis = 0;
    for (std::size_t g = 0; g < 64; ++g) {
      cls.grid.push_back(lo + (hi - lo) * static_cast<double>(g) / 63.0);
    }
    cls.grid.push_back(-std::numeric_limits<double>::infinity());
    cls.grid.push_back(std::numeric_limits<double>::infinity());
    cls.normalize();
    const theorylab::WeightedPoints q{test.points, {}};
    const theorylab::WeightedPoints q_prime{distill_set.points, {}};
    diag.half_divergence = 0.5 * theorylab::estimate_h_delta_h(q, q_prime, cls);
  }

  diag.slack = diag.ensemble_loss + diag.cross_term + diag.half_divergence - diag.server_loss;
  return diag;
}

} // namespace

ExperimentResult run_experiment(const ExperimentEnv& env, const FederationConfig& config,
                                std::uint64_t seed, const RoundCallback& on_round) {
  config.validate();
  if (env.clients.size() != config.clients) {
    std::ostringstream msg;
    msg << "env has " << env.clients.size() << " client datasets, config expects "
        << config.clients;
    throw config_error(msg.str());
  }
  if (env.test.size() == 0) throw config_error("env: test set is empty");

  int classes = class_count(env.test);
  std::size_t dim = env.test.dim();
  bool any_client_data = false;
  for (const auto& client : env.clients) {
    if (client.size() == 0) continue;
    any_client_data = true;
    classes = std::max(classes, class_count(client));
    dim = client.dim();
  }
  if (!any_client_data) throw config_error("env: every client dataset is empty");
  if (classes < 2) throw config_error("env: need at least two classes");

  ExperimentResult result;
  numerics::RngStream server_rng(numerics::derive_seed(seed, "server/init"));
  result.server_model = numerics::MlpModel::create_relu_tower(
      dim, config.classifier_hidden, static_cast<std::size_t>(classes), server_rng);

  // Generator preparation (the pre-round stage).
  switch (config.generator_policy) {
    case GeneratorPolicy::FixedFromPool: {
      if (env.gan_pool.size() == 0) {
        throw config_error("generator policy fixed_from_pool requires a non-empty pool");
      }
      result.generator = ganforge::Generator::fixed_sampler(env.gan_pool);
      break;
    }
    case GeneratorPolicy::TrainOnPool: {
      if (env.gan_pool.size() == 0) {
        throw config_error("generator policy train_on_pool requires a non-empty pool");
      }
      ganforge::PoolGanConfig pool_config;
      pool_config.noise_dim = config.gen_noise_dim;
      pool_config.gen_hidden = config.gen_hidden;
      pool_config.disc_hidden = config.disc_hidden;
      pool_config.steps = config.gan_pretrain_steps;
      pool_config.batch_size = config.batch_size;
      pool_config.gen_optimizer = config.gan_optimizer;
      pool_config.disc_optimizer = config.gan_optimizer;
      result.generator = ganforge::train_generator_on_pool(
          env.gan_pool, pool_config, numerics::derive_seed(seed, "gan/pool"));
      break;
    }
    case GeneratorPolicy::Federated: {
      numerics::RngStream gan_rng(numerics::derive_seed(seed, "gan/init"));
      result.generator = ganforge::Generator::mlp(
          config.gen_noise_dim, numerics::MlpModel::create_relu_tower(
                                    config.gen_noise_dim, config.gen_hidden, dim, gan_rng));
      ganforge::Discriminator global_disc;
      global_disc.head = ganforge::HeadKind::SingleSigmoid;
      global_disc.body = numerics::MlpModel::create_relu_tower(dim, config.disc_hidden, 1, gan_rng);
      ganforge::GanRoundConfig round_config;
      round_config.local_epochs = config.gan_local_epochs;
      round_config.batch_size = config.batch_size;
      round_config.gen_optimizer = config.gan_optimizer;
      round_config.disc_optimizer = config.gan_optimizer;
      round_config.threads = config.threads;
      for (std::size_t r = 1; r <= config.gan_rounds; ++r) {
        ganforge::federated_gan_round(result.generator, global_disc, env.clients, round_config,
                                      numerics::derive_seed(seed, "gan/round", r));
      }
      break;
    }
  }

  // One discriminator per client, trained once before the main rounds.
  result.discriminators.resize(config.clients);
  ganforge::DiscTrainConfig disc_config;
  disc_config.epochs = config.disc_epochs;
  disc_config.batch_size = config.batch_size;
  disc_config.hidden = config.disc_hidden;
  disc_config.optimizer = config.disc_optimizer;
  disc_config.head = config.disc_head;
  const bool need_discs = config.method.needs_discriminators();
  if (need_discs) {
    parallel_for(config.clients, config.threads, [&](std::size_t k) {
      const std::uint64_t disc_seed = numerics::derive_seed(seed, "disc", k);
      if (env.clients[k].size() == 0) {
        numerics::RngStream init_rng(numerics::derive_seed(disc_seed, "disc/init"));
        result.discriminators[k].head = config.disc_head;
        result.discriminators[k].body =
            numerics::MlpModel::create_relu_tower(dim, config.disc_hidden, 1, init_rng);
        return;
      }
      result.discriminators[k] =
          ganforge::train_discriminator(result.generator, env.clients[k], disc_config, disc_seed);
    });
  }
  if (need_discs) {
    for (std::size_t b : config.byzantine_clients) result.discriminators[b].byzantine = true;
  }

  // Distillation set.
  synthdata::UnlabeledDataset distill_set;
  if (config.distill_source == DistillSource::Pool) {
    distill_set = env.distill_pool;
  } else {
    distill_set = ganforge::sample_generator(result.generator, config.distill_samples,
                                             numerics::derive_seed(seed, "distill/data"));
  }
  if (distill_set.size() == 0 && config.server_epochs > 0) {
    result.warnings.push_back("distillation set is empty; server distillation skipped");
  }

  std::vector<double> client_sizes(config.clients);
  for (std::size_t k = 0; k < config.clients; ++k) {
    client_sizes[k] = static_cast<double>(env.clients[k].size());
  }

  for (std::size_t t = 1; t <= config.rounds; ++t) {
    const auto start = std::chrono::steady_clock::now();

    const auto sampled = sample_clients(config.clients, config.participation,
                                        numerics::derive_seed(seed, "participation", t));
    std::vector<std::size_t> participants;
    for (std::size_t k : sampled) {
      if (env.clients[k].size() > 0) participants.push_back(k);
    }
    if (participants.empty()) {
      std::ostringstream msg;
      msg << "round " << t << ": every sampled client was empty; round skipped";
      result.warnings.push_back(msg.str());
      continue;
    }

    std::vector<numerics::MlpModel> round_models(participants.size());
    parallel_for(participants.size(), config.threads, [&](std::size_t slot) {
      const std::size_t k = participants[slot];
      auto updated = client_update(result.server_model, env.clients[k], config.client_epochs,
                                   static_cast<std::size_t>(classes), config.client_optimizer,
                                   config.batch_size,
                                   numerics::derive_seed(seed, "client_update", t, k));
      round_models[slot] = std::move(*updated);
    });

    std::vector<double> round_sizes;
    round_sizes.reserve(participants.size());
    for (std::size_t k : participants) round_sizes.push_back(client_sizes[k]);
    result.server_model = fedavg_aggregate(round_models, round_sizes);

    WeightingContext ctx;
    ctx.method = &config.method;
    ctx.sizes = round_sizes;
    for (std::size_t slot = 0; slot < participants.size(); ++slot) {
      ctx.models.push_back(&round_models[slot]);
      if (need_discs) ctx.discriminators.push_back(&result.discriminators[participants[slot]]);
    }

    const double lr_t = scheduled_lr(config.lr_schedule, config.server_optimizer.lr, t,
                                     config.rounds);
    if (config.server_epochs > 0 && distill_set.size() > 0 && lr_t > 0.0) {
      numerics::OptimizerConfig round_optimizer = config.server_optimizer;
      round_optimizer.lr = lr_t;
      distill_server(
          result.server_model, distill_set,
          [&ctx](const numerics::DenseMatrix& batch) { return ctx.pseudo_labels(batch); },
          config.server_epochs, round_optimizer, config.batch_size,
          numerics::derive_seed(seed, "distill", t));
    }

    RoundMetrics metrics;
    metrics.round = t;
    metrics.distill_kl = mean_distill_kl(
        result.server_model, distill_set,
        [&ctx](const numerics::DenseMatrix& batch) { return ctx.pseudo_labels(batch); },
        config.batch_size);

    const numerics::MlpModel& server_model = result.server_model;
    const EvalResult server_eval = evaluate(
        [&server_model](const numerics::DenseMatrix& points) {
          return mlp_forward(server_model, points);
        },
        env.test);
    const EvalResult ensemble_eval = evaluate(
        [&ctx](const numerics::DenseMatrix& points) { return ctx.ensemble_logits(points); },
        env.test);
    metrics.server_accuracy = server_eval.accuracy;
    metrics.ensemble_accuracy = ensemble_eval.accuracy;
    metrics.ensemble_loss = ensemble_eval.mean_loss;

    if (config.record_bound_diagnostics) {
      result.bound_diagnostics.push_back(
          bound_diagnostic(t, result.server_model, ctx, env.test, distill_set));
    }

    metrics.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    result.metrics.push_back(metrics);
    if (on_round) on_round(metrics);

    if (t == config.rounds) {
      result.last_round_participants = participants;
      result.last_round_models = std::move(round_models);
    }
  }

  return result;
}

} // namespace fedgo::fedloop
