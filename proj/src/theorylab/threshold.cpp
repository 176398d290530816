#include "fedgolab/theorylab/threshold.hpp"

#include <algorithm>
#include <limits>

#include "fedgolab/common/errors.hpp"

namespace fedgo::theorylab {

void ThresholdClass::normalize() {
  if (grid.empty()) throw config_error("threshold class has an empty grid");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
}

int ThresholdClass::predict_value(double coordinate, std::size_t hypothesis) const {
  const double threshold = grid[hypothesis];
  switch (polarity) {
    case Polarity::LeqIsOne:
      return coordinate <= threshold ? 1 : 0;
    case Polarity::GeqIsOne:
      return coordinate >= threshold ? 1 : 0;
  }
  return 0;
}

int ThresholdClass::predict(std::span<const double> point, std::size_t hypothesis) const {
  return predict_value(point[axis], hypothesis);
}

ThresholdClass ThresholdClass::covering(std::span<const double> values, std::size_t axis,
                                        Polarity polarity) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  ThresholdClass cls;
  cls.axis = axis;
  cls.polarity = polarity;
  cls.grid.push_back(-std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    cls.grid.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  }
  cls.grid.push_back(std::numeric_limits<double>::infinity());
  cls.normalize();
  return cls;
}

double threshold_expected_loss(const ThresholdClass& cls, std::size_t hypothesis,
                               const WeightedPoints& dist, std::span<const int> labels) {
  double loss = 0.0;
  for (std::size_t i = 0; i < dist.points.rows; ++i) {
    const int prediction = cls.predict(dist.points.row(i), hypothesis);
    if (prediction != labels[i]) loss += dist.mass(i);
  }
  return loss;
}

std::size_t threshold_erm(const ThresholdClass& cls, const WeightedPoints& dist,
                          std::span<const int> labels) {
  std::size_t best = 0;
  double best_loss = threshold_expected_loss(cls, 0, dist, labels);
  for (std::size_t h = 1; h < cls.size(); ++h) {
    const double loss = threshold_expected_loss(cls, h, dist, labels);
    if (loss < best_loss) {
      best_loss = loss;
      best = h;
    }
  }
  return best;
}

double threshold_growth_function(std::size_t m, bool both_polarities) {
  const double base = static_cast<double>(m) + 1.0;
  return both_polarities ? 2.0 * static_cast<double>(m) : base;
}

} // namespace fedgo::theorylab
