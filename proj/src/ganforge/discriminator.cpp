#include "fedgolab/ganforge/discriminator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "fedgolab/common/errors.hpp"

namespace fedgo::ganforge {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

} // namespace

std::string_view head_kind_name(HeadKind head) {
  switch (head) {
    case HeadKind::SingleSigmoid: return "single_sigmoid";
    case HeadKind::DoubleSigmoid: return "double_sigmoid";
  }
  return "unknown";
}

HeadKind head_kind_from_name(std::string_view name) {
  if (name == "single_sigmoid") return HeadKind::SingleSigmoid;
  if (name == "double_sigmoid") return HeadKind::DoubleSigmoid;
  throw config_error("unknown discriminator head: " + std::string(name));
}

double head_value(HeadKind head, double raw_score) {
  switch (head) {
    case HeadKind::SingleSigmoid:
      return std::clamp(sigmoid(raw_score), kSingleSigmoidClamp, 1.0 - kSingleSigmoidClamp);
    case HeadKind::DoubleSigmoid:
      return sigmoid(sigmoid(raw_score));
  }
  throw config_error("unknown head kind");
}

double head_max(HeadKind head) {
  switch (head) {
    case HeadKind::SingleSigmoid:
      return 1.0 - kSingleSigmoidClamp;
    case HeadKind::DoubleSigmoid:
      return sigmoid(1.0);
  }
  throw config_error("unknown head kind");
}

OddsValue odds_of(double d) {
  if (!(d > 0.0) || !(d < 1.0)) {
    std::ostringstream msg;
    msg << "odds_of requires a value in (0, 1), got " << d;
    throw config_error(msg.str());
  }
  return OddsValue{d / (1.0 - d)};
}

double analytic_optimal_discriminator(double p_data_density, double p_g_density) {
  if (p_data_density < 0.0 || p_g_density < 0.0) {
    throw config_error("densities must be non-negative");
  }
  const double total = p_data_density + p_g_density;
  if (total == 0.0) {
    throw config_error("optimal discriminator undefined where both densities vanish");
  }
  return p_data_density / total;
}

void Discriminator::validate() const {
  body.validate();
  if (body.output_dim() != 1) {
    throw config_error("discriminator body must produce a single raw score");
  }
}

std::vector<double> Discriminator::values(const numerics::DenseMatrix& batch) const {
  std::vector<double> out(batch.rows);
  if (byzantine) {
    std::fill(out.begin(), out.end(), head_max(head));
    return out;
  }
  const numerics::DenseMatrix raw = mlp_forward(body, batch);
  for (std::size_t i = 0; i < raw.rows; ++i) out[i] = head_value(head, raw.at(i, 0));
  return out;
}

double Discriminator::value(std::span<const double> point) const {
  if (byzantine) return head_max(head);
  numerics::DenseMatrix batch(1, point.size());
  std::copy(point.begin(), point.end(), batch.data.begin());
  const numerics::DenseMatrix raw = mlp_forward(body, batch);
  return head_value(head, raw.at(0, 0));
}

std::vector<double> Discriminator::odds(const numerics::DenseMatrix& batch) const {
  std::vector<double> out = values(batch);
  for (double& v : out) v = odds_of(v).phi;
  return out;
}

} // namespace fedgo::ganforge
