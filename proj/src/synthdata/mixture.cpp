#include "fedgolab/synthdata/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fedgolab/common/errors.hpp"

namespace fedgo::synthdata {

std::size_t GaussianMixtureSpec::dim() const {
  return components.empty() ? 0 : components.front().mean.size();
}

void GaussianMixtureSpec::validate() const {
  if (components.empty()) throw config_error("mixture has no components");
  const std::size_t d = dim();
  int max_label = -1;
  for (const auto& c : components) {
    if (c.mean.size() != d) throw config_error("mixture components have mixed dimensions");
    if (!(c.variance > 0.0)) throw config_error("mixture variance must be positive");
    if (c.count == 0) throw config_error("mixture component count must be positive");
    if (c.label < 0) throw config_error("mixture label must be non-negative");
    max_label = std::max(max_label, c.label);
  }
  std::vector<bool> seen(static_cast<std::size_t>(max_label) + 1, false);
  for (const auto& c : components) seen[static_cast<std::size_t>(c.label)] = true;
  for (bool s : seen) {
    if (!s) throw config_error("mixture labels must be contiguous from 0");
  }
}

double GaussianMixtureSpec::density(std::span<const double> x, int label) const {
  const double d = static_cast<double>(dim());
  double total = 0.0;
  double value = 0.0;
  for (const auto& c : components) {
    if (label >= 0 && c.label != label) continue;
    total += static_cast<double>(c.count);
    double sq = 0.0;
    for (std::size_t j = 0; j < c.mean.size(); ++j) {
      const double diff = x[j] - c.mean[j];
      sq += diff * diff;
    }
    const double norm = std::pow(2.0 * std::numbers::pi * c.variance, -0.5 * d);
    value += static_cast<double>(c.count) * norm * std::exp(-sq / (2.0 * c.variance));
  }
  if (total == 0.0) throw config_error("mixture density: no component with requested label");
  return value / total;
}

LabeledDataset sample_mixture(const GaussianMixtureSpec& spec, numerics::RngStream& rng) {
  spec.validate();
  std::size_t total = 0;
  for (const auto& c : spec.components) total += c.count;

  LabeledDataset out;
  out.points = numerics::DenseMatrix(total, spec.dim());
  out.labels.reserve(total);
  std::size_t row = 0;
  for (const auto& c : spec.components) {
    const double sigma = std::sqrt(c.variance);
    for (std::size_t i = 0; i < c.count; ++i, ++row) {
      auto dst = out.points.row(row);
      for (std::size_t j = 0; j < dst.size(); ++j) {
        dst[j] = c.mean[j] + sigma * rng.gaussian();
      }
      out.labels.push_back(c.label);
    }
  }
  return out;
}

GaussianMixtureSpec toy_mixture_spec() {
  GaussianMixtureSpec spec;
  spec.components = {
      {{4.0, 4.0}, 3.0, 0, 300},   // first quadrant, class 0
      {{-4.0, 4.0}, 3.0, 1, 300},  // second quadrant, class 1
      {{4.0, -4.0}, 3.0, 2, 300},  // fourth quadrant, class 2
      {{-4.0, -4.0}, 3.0, 0, 300}, // third quadrant, class 0
  };
  return spec;
}

int toy_oracle_label(double x, double y) {
  if (x >= 0.0) return y >= 0.0 ? 0 : 2;
  return y >= 0.0 ? 1 : 0;
}

LabeledDataset toy_oracle_grid(std::size_t points_per_axis, double half_extent) {
  if (points_per_axis < 2) throw config_error("grid needs at least 2 points per axis");
  LabeledDataset grid;
  grid.points = numerics::DenseMatrix(points_per_axis * points_per_axis, 2);
  grid.labels.reserve(grid.points.rows);
  const double step = 2.0 * half_extent / static_cast<double>(points_per_axis - 1);
  std::size_t row = 0;
  for (std::size_t iy = 0; iy < points_per_axis; ++iy) {
    const double y = -half_extent + step * static_cast<double>(iy);
    for (std::size_t ix = 0; ix < points_per_axis; ++ix, ++row) {
      const double x = -half_extent + step * static_cast<double>(ix);
      grid.points.at(row, 0) = x;
      grid.points.at(row, 1) = y;
      grid.labels.push_back(toy_oracle_label(x, y));
    }
  }
  return grid;
}

ToyData make_toy_mixture(std::uint64_t seed) {
  ToyData toy;
  toy.spec = toy_mixture_spec();

  numerics::RngStream sample_rng(numerics::derive_seed(seed, "toy/samples"));
  toy.global = sample_mixture(toy.spec, sample_rng);

  // Home component per client: clients 0..3 own the third, fourth, second and
  // first quadrant components respectively.
  constexpr std::array<std::size_t, kToyClientCount> home_component = {3, 2, 1, 0};
  constexpr std::size_t per_component = 300;
  constexpr std::size_t home_count = 270; // 90% of one component
  constexpr std::size_t foreign_count = 10;

  std::vector<std::vector<std::size_t>> client_rows(kToyClientCount);
  for (std::size_t c = 0; c < toy.spec.components.size(); ++c) {
    std::vector<std::size_t> rows(per_component);
    std::iota(rows.begin(), rows.end(), c * per_component);
    numerics::RngStream split_rng(numerics::derive_seed(seed, "toy/split", c));
    split_rng.shuffle(rows);

    std::size_t cursor = 0;
    std::size_t home_client = 0;
    for (std::size_t k = 0; k < home_component.size(); ++k) {
      if (home_component[k] == c) home_client = k;
    }
    for (std::size_t i = 0; i < home_count; ++i) client_rows[home_client].push_back(rows[cursor++]);
    for (std::size_t k = 0; k < kToyClientCount; ++k) {
      if (k == home_client) continue;
      for (std::size_t i = 0; i < foreign_count; ++i) client_rows[k].push_back(rows[cursor++]);
    }
  }
  for (auto& rows : client_rows) {
    std::sort(rows.begin(), rows.end());
    toy.clients.push_back(toy.global.subset(rows));
  }

  numerics::RngStream server_rng(numerics::derive_seed(seed, "toy/server"));
  toy.server.points = numerics::DenseMatrix(300, 2);
  for (std::size_t i = 0; i < toy.server.points.rows; ++i) {
    toy.server.points.at(i, 0) = server_rng.uniform(-kToyServerHalfExtent, kToyServerHalfExtent);
    toy.server.points.at(i, 1) = server_rng.uniform(-kToyServerHalfExtent, kToyServerHalfExtent);
  }
  return toy;
}

GaussianMixtureSpec toy_client_mixture(std::size_t client) {
  if (client >= kToyClientCount) throw config_error("toy client index out of range");
  constexpr std::array<std::size_t, kToyClientCount> home_component = {3, 2, 1, 0};
  GaussianMixtureSpec spec = toy_mixture_spec();
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    spec.components[c].count = (home_component[client] == c) ? 270 : 10;
  }
  return spec;
}

} // namespace fedgo::synthdata
