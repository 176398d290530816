#pragma once

#include <cstdint>
#include <vector>

#include "fedgolab/numerics/loss.hpp"
#include "fedgolab/numerics/matrix.hpp"
#include "fedgolab/numerics/rng.hpp"

namespace fedgo::synthdata {

/// Finite-support client distributions with shared labels. Expectations over
/// the support are exact sums, which is what the inequality checks need.
struct DiscreteInstance {
  numerics::DenseMatrix support;       // S x d points
  numerics::DenseMatrix client_masses; // K x S, each row a distribution
  std::vector<double> client_sizes;    // n_k, length K
  std::vector<int> labels;             // per support point
  numerics::LossKind loss = numerics::LossKind::L1Binary;
  std::vector<double> average_mass;    // p = sum_k pi_k p_k, length S

  std::size_t clients() const { return client_masses.rows; }
  std::size_t support_size() const { return support.rows; }
  std::size_t dim() const { return support.cols; }

  /// pi_k = n_k / sum n_i.
  std::vector<double> size_shares() const;
};

struct DiscreteInstanceSpec {
  numerics::DenseMatrix support;
  numerics::DenseMatrix client_masses;
  std::vector<double> client_sizes;
  std::vector<int> labels;
  numerics::LossKind loss = numerics::LossKind::L1Binary;
};

/// Validates the spec (mass rows sum to 1 within 1e-12, sizes positive) and
/// stores the precomputed average distribution.
DiscreteInstance make_discrete_instance(const DiscreteInstanceSpec& spec);

struct RandomInstanceParams {
  std::size_t clients = 2;
  std::size_t support_size = 5;
  std::size_t dim = 1;
  double mass_alpha = 0.7; // Dirichlet concentration for client masses
};

/// Random instance with sorted 1-D support (or uniform cube points for
/// dim > 1), Dirichlet client masses, integer sizes in [1, 100] and fair-coin
/// binary labels.
DiscreteInstance random_discrete_instance(const RandomInstanceParams& params,
                                          numerics::RngStream& rng);

} // namespace fedgo::synthdata
