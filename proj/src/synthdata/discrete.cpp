#include "fedgolab/synthdata/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fedgolab/common/errors.hpp"
#include "fedgolab/synthdata/partition.hpp"

namespace fedgo::synthdata {

std::vector<double> DiscreteInstance::size_shares() const {
  double total = 0.0;
  for (double n : client_sizes) total += n;
  std::vector<double> shares(client_sizes.size());
  for (std::size_t k = 0; k < shares.size(); ++k) shares[k] = client_sizes[k] / total;
  return shares;
}

DiscreteInstance make_discrete_instance(const DiscreteInstanceSpec& spec) {
  const std::size_t clients = spec.client_masses.rows;
  const std::size_t support = spec.support.rows;
  if (clients == 0 || support == 0) throw config_error("discrete instance must be non-empty");
  if (spec.client_masses.cols != support) {
    std::ostringstream msg;
    msg << "mass rows have " << spec.client_masses.cols << " entries for " << support
        << " support points";
    throw config_error(msg.str());
  }
  if (spec.client_sizes.size() != clients) {
    throw config_error("discrete instance: one size per client required");
  }
  if (spec.labels.size() != support) {
    throw config_error("discrete instance: one label per support point required");
  }

  double size_total = 0.0;
  for (double n : spec.client_sizes) {
    if (!(n > 0.0)) throw config_error("client sizes must be positive");
    size_total += n;
  }
  if (!(size_total > 0.0)) throw config_error("client sizes must sum to a positive value");

  for (std::size_t k = 0; k < clients; ++k) {
    double sum = 0.0;
    for (double m : spec.client_masses.row(k)) {
      if (m < 0.0) throw validation_error("client mass is negative");
      sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      std::ostringstream msg;
      msg << "client " << k << " masses sum to " << sum << ", expected 1 +- 1e-12";
      throw validation_error(msg.str());
    }
  }

  DiscreteInstance inst;
  inst.support = spec.support;
  inst.client_masses = spec.client_masses;
  inst.client_sizes = spec.client_sizes;
  inst.labels = spec.labels;
  inst.loss = spec.loss;
  inst.average_mass.assign(support, 0.0);
  const auto shares = inst.size_shares();
  for (std::size_t k = 0; k < clients; ++k) {
    const auto row = inst.client_masses.row(k);
    for (std::size_t s = 0; s < support; ++s) inst.average_mass[s] += shares[k] * row[s];
  }
  return inst;
}

DiscreteInstance random_discrete_instance(const RandomInstanceParams& params,
                                          numerics::RngStream& rng) {
  DiscreteInstanceSpec spec;
  spec.support = numerics::DenseMatrix(params.support_size, params.dim);
  if (params.dim == 1) {
    std::vector<double> xs(params.support_size);
    for (double& x : xs) x = rng.uniform01();
    std::sort(xs.begin(), xs.end());
    for (std::size_t s = 0; s < xs.size(); ++s) spec.support.at(s, 0) = xs[s];
  } else {
    for (double& v : spec.support.data) v = rng.uniform(-1.0, 1.0);
  }

  spec.client_masses = numerics::DenseMatrix(params.clients, params.support_size);
  for (std::size_t k = 0; k < params.clients; ++k) {
    auto masses = sample_dirichlet(params.support_size, params.mass_alpha, rng);
    // Exact renormalization so the 1e-12 row-sum invariant holds.
    double sum = 0.0;
    for (double m : masses) sum += m;
    auto row = spec.client_masses.row(k);
    for (std::size_t s = 0; s < masses.size(); ++s) row[s] = masses[s] / sum;
  }

  spec.client_sizes.resize(params.clients);
  for (double& n : spec.client_sizes) n = static_cast<double>(1 + rng.below(100));

  spec.labels.resize(params.support_size);
  for (int& label : spec.labels) label = static_cast<int>(rng.below(2));

  spec.loss = numerics::LossKind::L1Binary;
  return make_discrete_instance(spec);
}

} // namespace fedgo::synthdata
