#include "fedgolab/ganforge/generator.hpp"

#include <algorithm>

#include "fedgolab/common/errors.hpp"

namespace fedgo::ganforge {

std::size_t Generator::data_dim() const {
  return kind == Kind::MlpBody ? body.output_dim() : pool.dim();
}

Generator Generator::mlp(std::size_t noise_dim, numerics::MlpModel body) {
  if (body.input_dim() != noise_dim) {
    throw config_error("generator body input dim must equal noise dim");
  }
  Generator g;
  g.kind = Kind::MlpBody;
  g.noise_dim = noise_dim;
  g.body = std::move(body);
  return g;
}

Generator Generator::fixed_sampler(synthdata::UnlabeledDataset pool) {
  if (pool.size() == 0) throw config_error("fixed sampler pool is empty");
  Generator g;
  g.kind = Kind::FixedSampler;
  g.pool = std::move(pool);
  return g;
}

GeneratorBatch sample_generator_batch(const Generator& gen, std::size_t m,
                                      numerics::RngStream& rng) {
  GeneratorBatch batch;
  switch (gen.kind) {
    case Generator::Kind::MlpBody: {
      batch.noise = numerics::DenseMatrix(m, gen.noise_dim);
      for (double& v : batch.noise.data) v = rng.gaussian();
      batch.samples = mlp_forward(gen.body, batch.noise);
      break;
    }
    case Generator::Kind::FixedSampler: {
      batch.samples = numerics::DenseMatrix(m, gen.pool.dim());
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t pick = rng.below(gen.pool.size());
        const auto src = gen.pool.points.row(pick);
        std::copy(src.begin(), src.end(), batch.samples.row(i).begin());
      }
      break;
    }
  }
  return batch;
}

synthdata::UnlabeledDataset sample_generator(const Generator& gen, std::size_t m,
                                             std::uint64_t seed) {
  numerics::RngStream rng(numerics::derive_seed(seed, "generator/sample"));
  return synthdata::UnlabeledDataset{sample_generator_batch(gen, m, rng).samples};
}

} // namespace fedgo::ganforge
