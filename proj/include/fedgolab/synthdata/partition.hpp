#pragma once

#include <cstdint>
#include <vector>

#include "fedgolab/numerics/rng.hpp"
#include "fedgolab/synthdata/dataset.hpp"

namespace fedgo::synthdata {

/// Draws a Dirichlet(alpha, ..., alpha) vector of length k. Gamma variates
/// via Marsaglia-Tsang from the given stream.
std::vector<double> sample_dirichlet(std::size_t k, double alpha, numerics::RngStream& rng);

/// Splits a dataset into K disjoint shards whose union is the input. Each
/// class is allocated across clients by a Dirichlet(alpha) draw with
/// largest-remainder rounding; if rounding leaves a client empty, one sample
/// is moved over from the largest shard. Smaller alpha means more skew.
std::vector<LabeledDataset> dirichlet_partition(const LabeledDataset& dataset, std::size_t k,
                                                double alpha, std::uint64_t seed);

} // namespace fedgo::synthdata
