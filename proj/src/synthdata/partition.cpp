#include "fedgolab/synthdata/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fedgolab/common/errors.hpp"

namespace fedgo::synthdata {

namespace {

// Marsaglia-Tsang gamma(alpha, 1). The alpha < 1 case boosts to alpha + 1 and
// scales by u^(1/alpha).
double sample_gamma(double alpha, numerics::RngStream& rng) {
  if (alpha < 1.0) {
    const double u = 1.0 - rng.uniform01(); // (0, 1]
    return sample_gamma(alpha + 1.0, rng) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

} // namespace

std::vector<double> sample_dirichlet(std::size_t k, double alpha, numerics::RngStream& rng) {
  if (k == 0) throw config_error("dirichlet dimension must be positive");
  if (!(alpha > 0.0)) throw config_error("dirichlet alpha must be positive");
  std::vector<double> draws(k);
  double total = 0.0;
  for (double& g : draws) {
    g = sample_gamma(alpha, rng);
    total += g;
  }
  if (total <= 0.0) {
    // Tiny alpha can underflow every gamma draw; degenerate to a point mass.
    draws.assign(k, 0.0);
    draws[rng.below(k)] = 1.0;
    return draws;
  }
  for (double& g : draws) g /= total;
  return draws;
}

std::vector<LabeledDataset> dirichlet_partition(const LabeledDataset& dataset, std::size_t k,
                                                double alpha, std::uint64_t seed) {
  dataset.validate();
  if (k == 0) throw config_error("partition needs at least one client");
  if (!(alpha > 0.0)) throw config_error("partition alpha must be positive");
  if (k > dataset.size()) {
    std::ostringstream msg;
    msg << "infeasible partition: " << k << " clients for " << dataset.size() << " samples";
    throw config_error(msg.str());
  }

  numerics::RngStream rng(numerics::derive_seed(seed, "dirichlet_partition"));
  const int classes = class_count(dataset);
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(classes));
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    by_class[static_cast<std::size_t>(dataset.labels[i])].push_back(i);
  }

  std::vector<std::vector<std::size_t>> shard_rows(k);
  for (auto& rows : by_class) {
    if (rows.empty()) throw config_error("partition requires every class to be populated");
    rng.shuffle(rows);
    const auto proportions = sample_dirichlet(k, alpha, rng);

    // Largest-remainder rounding of proportions * class size.
    const std::size_t m = rows.size();
    std::vector<std::size_t> counts(k, 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const double exact = proportions[j] * static_cast<double>(m);
      counts[j] = static_cast<std::size_t>(std::floor(exact));
      assigned += counts[j];
      remainders.emplace_back(exact - std::floor(exact), j);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (std::size_t r = 0; assigned < m; ++r, ++assigned) {
      counts[remainders[r % k].second] += 1;
    }

    std::size_t cursor = 0;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t c = 0; c < counts[j]; ++c) shard_rows[j].push_back(rows[cursor++]);
    }
  }

  // Rounding can leave a client with nothing; hand it one sample from the
  // currently largest shard.
  for (std::size_t j = 0; j < k; ++j) {
    if (!shard_rows[j].empty()) continue;
    std::size_t donor = 0;
    for (std::size_t d = 1; d < k; ++d) {
      if (shard_rows[d].size() > shard_rows[donor].size()) donor = d;
    }
    if (shard_rows[donor].size() <= 1) throw config_error("infeasible partition: not enough samples");
    shard_rows[j].push_back(shard_rows[donor].back());
    shard_rows[donor].pop_back();
  }

  std::vector<LabeledDataset> shards;
  shards.reserve(k);
  for (auto& rows : shard_rows) {
    std::sort(rows.begin(), rows.end());
    shards.push_back(dataset.subset(rows));
  }
  return shards;
}

} // namespace fedgo::synthdata
