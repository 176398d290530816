#pragma once

#include <span>
#include <vector>

#include "fedgolab/numerics/matrix.hpp"

namespace fedgo::theorylab {

/// Finite one-polarity threshold class on a single coordinate. Hypotheses are
/// indexed by grid position; LeqIsOne predicts 1 on the low side. Including
/// -inf/+inf in the grid yields the constant-0 and constant-1 members.
struct ThresholdClass {
  enum class Polarity { LeqIsOne, GeqIsOne };

  std::size_t axis = 0;
  std::vector<double> grid; // sorted, deduplicated
  Polarity polarity = Polarity::LeqIsOne;

  std::size_t size() const { return grid.size(); }

  /// Sorts and deduplicates the grid; throws on an empty grid.
  void normalize();

  int predict(std::span<const double> point, std::size_t hypothesis) const;
  int predict_value(double coordinate, std::size_t hypothesis) const;

  /// Every realizable behavior on the given coordinate values: -inf, the
  /// midpoints between consecutive distinct values, +inf. Exhaustive search
  /// over this grid is exact empirical risk minimization over the full class.
  static ThresholdClass covering(std::span<const double> values, std::size_t axis = 0,
                                 Polarity polarity = Polarity::LeqIsOne);
};

/// Weighted point set; empty masses mean uniform.
struct WeightedPoints {
  numerics::DenseMatrix points;
  std::vector<double> masses;

  double mass(std::size_t i) const {
    return masses.empty() ? 1.0 / static_cast<double>(points.rows) : masses[i];
  }
};

/// Exact expected 0-1 loss of one hypothesis against labels under a weighted
/// point set.
double threshold_expected_loss(const ThresholdClass& cls, std::size_t hypothesis,
                               const WeightedPoints& dist, std::span<const int> labels);

/// Index of the expected-loss minimizer; ties break to the lowest index.
std::size_t threshold_erm(const ThresholdClass& cls, const WeightedPoints& dist,
                          std::span<const int> labels);

/// Growth function of the full one-polarity 1-D threshold class: m + 1.
/// Two-polarity classes are covered conservatively by 2m.
double threshold_growth_function(std::size_t m, bool both_polarities = false);

} // namespace fedgo::theorylab
