#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fedgolab/numerics/rng.hpp"
#include "fedgolab/synthdata/dataset.hpp"

namespace fedgo::synthdata {

/// Isotropic Gaussian mixture with one class label per component.
struct GaussianMixtureSpec {
  struct Component {
    std::vector<double> mean;
    double variance = 1.0;
    int label = 0;
    std::size_t count = 0;
  };
  std::vector<Component> components;

  std::size_t dim() const;
  void validate() const;

  /// Density of the mixture restricted to components with the given label
  /// (label < 0 selects all components), normalized over the selection.
  double density(std::span<const double> x, int label = -1) const;
};

/// Samples every component in order (component 0 rows first). Box-Muller
/// gaussians from the given stream.
LabeledDataset sample_mixture(const GaussianMixtureSpec& spec, numerics::RngStream& rng);

/// The 2-D benchmark task: four Gaussians with variance 3 at (+-4, +-4),
/// 300 samples each. Class 0 sits in the first and third quadrants, class 1
/// in the second, class 2 in the fourth.
GaussianMixtureSpec toy_mixture_spec();

constexpr int kToyClientCount = 4;
constexpr double kToyServerHalfExtent = 12.0;

struct ToyData {
  LabeledDataset global;                        // all 1200 points
  std::vector<LabeledDataset> clients;          // 4 skewed shards, 300 points each
  UnlabeledDataset server;                      // 300 uniform points on the square
  GaussianMixtureSpec spec;
};

/// Quadrant labeling rule matching the mixture layout; axis points fall to
/// the non-negative side.
int toy_oracle_label(double x, double y);

/// Regular grid over [-extent, extent]^2 labeled by the oracle rule.
LabeledDataset toy_oracle_grid(std::size_t points_per_axis, double half_extent);

/// Builds the benchmark split: each client holds 90% of its home component
/// (270 points) plus 10 points from each of the other three components.
ToyData make_toy_mixture(std::uint64_t seed);

/// Closed-form distribution of one toy client: the four components reweighted
/// to 270 home / 10+10+10 foreign samples.
GaussianMixtureSpec toy_client_mixture(std::size_t client);

} // namespace fedgo::synthdata
