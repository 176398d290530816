#include "fedgolab/ganforge/gan_train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fedgolab/common/errors.hpp"
#include "fedgolab/common/parallel.hpp"

namespace fedgo::ganforge {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// d(-ln D(z))/dz for the given head; the gradient that pushes D up.
double real_score_grad(HeadKind head, double z) {
  switch (head) {
    case HeadKind::SingleSigmoid:
      return sigmoid(z) - 1.0;
    case HeadKind::DoubleSigmoid: {
      const double u = sigmoid(z);
      const double d = sigmoid(u);
      return -(1.0 - d) * u * (1.0 - u);
    }
  }
  return 0.0;
}

// d(-ln(1 - D(z)))/dz; the gradient that pushes D down.
double fake_score_grad(HeadKind head, double z) {
  switch (head) {
    case HeadKind::SingleSigmoid:
      return sigmoid(z);
    case HeadKind::DoubleSigmoid: {
      const double u = sigmoid(z);
      const double d = sigmoid(u);
      return d * u * (1.0 - u);
    }
  }
  return 0.0;
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

// One gradient step of the vanilla objective on a (real, fake) batch pair.
void discriminator_step(numerics::MlpModel& body, HeadKind head,
                        numerics::OptimizerState& opt_state,
                        const numerics::DenseMatrix& real_batch,
                        const numerics::DenseMatrix& fake_batch) {
  const double inv_batch = 1.0 / static_cast<double>(real_batch.rows);

  numerics::ForwardTrace real_trace = mlp_forward_trace(body, real_batch);
  numerics::DenseMatrix dreal(real_batch.rows, 1);
  for (std::size_t i = 0; i < real_batch.rows; ++i) {
    dreal.at(i, 0) = real_score_grad(head, real_trace.output().at(i, 0)) * inv_batch;
  }
  numerics::BackwardResult real_back = mlp_backward(body, real_trace, dreal);

  numerics::ForwardTrace fake_trace = mlp_forward_trace(body, fake_batch);
  numerics::DenseMatrix dfake(fake_batch.rows, 1);
  for (std::size_t i = 0; i < fake_batch.rows; ++i) {
    dfake.at(i, 0) = fake_score_grad(head, fake_trace.output().at(i, 0)) * inv_batch;
  }
  numerics::BackwardResult fake_back = mlp_backward(body, fake_trace, dfake);

  numerics::accumulate_grads(real_back.grads, fake_back.grads, 1.0);
  numerics::optimizer_step(opt_state, body, real_back.grads);
}

// Non-saturating generator step: minimize -ln D(G(z)).
void generator_step(numerics::MlpModel& gen_body, const numerics::MlpModel& disc_body,
                    HeadKind head, numerics::OptimizerState& opt_state,
                    const numerics::DenseMatrix& noise) {
  const double inv_batch = 1.0 / static_cast<double>(noise.rows);
  numerics::ForwardTrace gen_trace = mlp_forward_trace(gen_body, noise);
  numerics::ForwardTrace disc_trace = mlp_forward_trace(disc_body, gen_trace.output());
  numerics::DenseMatrix dscore(noise.rows, 1);
  for (std::size_t i = 0; i < noise.rows; ++i) {
    dscore.at(i, 0) = real_score_grad(head, disc_trace.output().at(i, 0)) * inv_batch;
  }
  numerics::BackwardResult disc_back = mlp_backward(disc_body, disc_trace, dscore, true);
  numerics::BackwardResult gen_back = mlp_backward(gen_body, gen_trace, disc_back.input_grad);
  numerics::optimizer_step(opt_state, gen_body, gen_back.grads);
}

} // namespace

Discriminator train_discriminator(const Generator& gen, const synthdata::LabeledDataset& real,
                                  const DiscTrainConfig& config, std::uint64_t seed) {
  if (real.size() == 0) throw config_error("train_discriminator: real dataset is empty");
  if (config.batch_size == 0) throw config_error("train_discriminator: batch size must be positive");
  config.optimizer.validate();

  numerics::RngStream init_rng(numerics::derive_seed(seed, "disc/init"));
  Discriminator disc;
  disc.head = config.head;
  disc.body = numerics::MlpModel::create_relu_tower(real.dim(), config.hidden, 1, init_rng);
  disc.validate();

  numerics::RngStream order_rng(numerics::derive_seed(seed, "disc/order"));
  numerics::RngStream fake_rng(numerics::derive_seed(seed, "disc/fake"));
  numerics::OptimizerState opt_state = numerics::OptimizerState::create(config.optimizer, disc.body);

  std::vector<std::size_t> order(real.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.shuffle(order);
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(begin + config.batch_size, order.size());
      const numerics::DenseMatrix real_batch = rows_subset(real.points, order, begin, end);
      const numerics::DenseMatrix fake_batch =
          sample_generator_batch(gen, end - begin, fake_rng).samples;
      discriminator_step(disc.body, disc.head, opt_state, real_batch, fake_batch);
    }
  }
  return disc;
}

double gan_discriminator_loss(const Discriminator& disc, const numerics::DenseMatrix& real,
                              const numerics::DenseMatrix& fake) {
  if (real.rows == 0 || fake.rows == 0) throw config_error("gan loss needs non-empty batches");
  const std::vector<double> d_real = disc.values(real);
  const std::vector<double> d_fake = disc.values(fake);
  double loss = 0.0;
  for (double d : d_real) loss -= std::log(std::max(d, 1e-300));
  double fake_loss = 0.0;
  for (double d : d_fake) fake_loss -= std::log(std::max(1.0 - d, 1e-300));
  return loss / static_cast<double>(d_real.size()) +
         fake_loss / static_cast<double>(d_fake.size());
}

Generator train_generator_on_pool(const synthdata::UnlabeledDataset& pool,
                                  const PoolGanConfig& config, std::uint64_t seed) {
  if (pool.size() == 0) throw config_error("train_generator_on_pool: pool is empty");
  config.gen_optimizer.validate();
  config.disc_optimizer.validate();

  numerics::RngStream init_rng(numerics::derive_seed(seed, "poolgan/init"));
  Generator gen = Generator::mlp(
      config.noise_dim,
      numerics::MlpModel::create_relu_tower(config.noise_dim, config.gen_hidden, pool.dim(),
                                            init_rng));
  numerics::MlpModel disc_body =
      numerics::MlpModel::create_relu_tower(pool.dim(), config.disc_hidden, 1, init_rng);
  const HeadKind head = HeadKind::SingleSigmoid;

  numerics::RngStream pick_rng(numerics::derive_seed(seed, "poolgan/pick"));
  numerics::RngStream noise_rng(numerics::derive_seed(seed, "poolgan/noise"));
  numerics::OptimizerState gen_opt = numerics::OptimizerState::create(config.gen_optimizer, gen.body);
  numerics::OptimizerState disc_opt =
      numerics::OptimizerState::create(config.disc_optimizer, disc_body);

  const std::size_t batch = std::min(config.batch_size, pool.size());
  for (std::size_t step = 0; step < config.steps; ++step) {
    numerics::DenseMatrix real_batch(batch, pool.dim());
    for (std::size_t i = 0; i < batch; ++i) {
      const auto src = pool.points.row(pick_rng.below(pool.size()));
      std::copy(src.begin(), src.end(), real_batch.row(i).begin());
    }
    const GeneratorBatch fake = sample_generator_batch(gen, batch, noise_rng);
    discriminator_step(disc_body, head, disc_opt, real_batch, fake.samples);

    numerics::DenseMatrix gen_noise(batch, config.noise_dim);
    for (double& v : gen_noise.data) v = noise_rng.gaussian();
    generator_step(gen.body, disc_body, head, gen_opt, gen_noise);
  }
  return gen;
}

void federated_gan_round(Generator& global_gen, Discriminator& global_disc,
                         const std::vector<synthdata::LabeledDataset>& clients,
                         const GanRoundConfig& config, std::uint64_t seed) {
  if (global_gen.kind != Generator::Kind::MlpBody) {
    throw config_error("federated_gan_round requires an mlp generator");
  }
  if (clients.empty()) throw config_error("federated_gan_round: no clients");
  config.gen_optimizer.validate();
  config.disc_optimizer.validate();

  struct LocalResult {
    numerics::MlpModel gen_body;
    numerics::MlpModel disc_body;
    double size = 0.0;
  };
  std::vector<LocalResult> locals(clients.size());

  parallel_for(clients.size(), config.threads, [&](std::size_t k) {
    const synthdata::LabeledDataset& data = clients[k];
    LocalResult& local = locals[k];
    local.size = static_cast<double>(data.size());
    local.gen_body = global_gen.body;
    local.disc_body = global_disc.body;
    if (data.size() == 0) return;

    numerics::RngStream order_rng(numerics::derive_seed(seed, "fedgan/order", k));
    numerics::RngStream noise_rng(numerics::derive_seed(seed, "fedgan/noise", k));
    numerics::OptimizerState gen_opt =
        numerics::OptimizerState::create(config.gen_optimizer, local.gen_body);
    numerics::OptimizerState disc_opt =
        numerics::OptimizerState::create(config.disc_optimizer, local.disc_body);

    Generator local_gen = global_gen;
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t epoch = 0; epoch < config.local_epochs; ++epoch) {
      order_rng.shuffle(order);
      for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
        const std::size_t end = std::min(begin + config.batch_size, order.size());
        const std::size_t batch = end - begin;
        local_gen.body = local.gen_body;

        const numerics::DenseMatrix real_batch = rows_subset(data.points, order, begin, end);
        const GeneratorBatch fake = sample_generator_batch(local_gen, batch, noise_rng);
        discriminator_step(local.disc_body, global_disc.head, disc_opt, real_batch, fake.samples);

        numerics::DenseMatrix gen_noise(batch, global_gen.noise_dim);
        for (double& v : gen_noise.data) v = noise_rng.gaussian();
        generator_step(local.gen_body, local.disc_body, global_disc.head, gen_opt, gen_noise);
      }
    }
  });

  std::vector<const numerics::MlpModel*> gen_bodies;
  std::vector<const numerics::MlpModel*> disc_bodies;
  std::vector<double> weights;
  for (const auto& local : locals) {
    if (local.size == 0.0) continue;
    gen_bodies.push_back(&local.gen_body);
    disc_bodies.push_back(&local.disc_body);
    weights.push_back(local.size);
  }
  if (gen_bodies.empty()) throw config_error("federated_gan_round: all client datasets empty");
  global_gen.body = numerics::weighted_average_params(gen_bodies, weights);
  global_disc.body = numerics::weighted_average_params(disc_bodies, weights);
}

} // namespace fedgo::ganforge
