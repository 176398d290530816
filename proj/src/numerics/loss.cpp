#include "fedgolab/numerics/loss.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "fedgolab/common/errors.hpp"

namespace fedgo::numerics {

namespace {

constexpr double kKlFloor = 1e-12;

std::atomic<std::uint64_t> g_kl_clamp_count{0};

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double z) {
  if (z > 35.0) return z;
  if (z < -35.0) return std::exp(z);
  return std::log1p(std::exp(z));
}

double log_sum_exp(std::span<const double> v) {
  double max = v[0];
  for (double x : v) max = std::max(max, x);
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - max);
  return max + std::log(acc);
}

void require_probability_row(std::span<const double> row, std::size_t row_index) {
  double sum = 0.0;
  for (double v : row) {
    if (v < 0.0) {
      std::ostringstream msg;
      msg << "target row " << row_index << " has negative entry " << v;
      throw validation_error(msg.str());
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "target row " << row_index << " sums to " << sum << ", expected 1 +- 1e-6";
    throw validation_error(msg.str());
  }
}

void require_one_hot_row(std::span<const double> row, std::size_t row_index) {
  std::size_t ones = 0;
  for (double v : row) {
    if (std::abs(v - 1.0) < 1e-9) {
      ++ones;
    } else if (std::abs(v) > 1e-9) {
      std::ostringstream msg;
      msg << "one-hot target row " << row_index << " has entry " << v;
      throw validation_error(msg.str());
    }
  }
  if (ones != 1) {
    std::ostringstream msg;
    msg << "one-hot target row " << row_index << " has " << ones << " ones";
    throw validation_error(msg.str());
  }
}

void require_binary_column(const DenseMatrix& targets) {
  if (targets.cols != 1) {
    std::ostringstream msg;
    msg << "binary loss targets must be a single column, got " << targets.cols;
    throw config_error(msg.str());
  }
  for (std::size_t i = 0; i < targets.rows; ++i) {
    const double v = targets.at(i, 0);
    if (v != 0.0 && v != 1.0) {
      std::ostringstream msg;
      msg << "binary target row " << i << " is " << v << ", expected 0 or 1";
      throw validation_error(msg.str());
    }
  }
}

} // namespace

std::string_view loss_kind_name(LossKind kind) {
  switch (kind) {
    case LossKind::CrossEntropy: return "cross_entropy";
    case LossKind::KlToTarget: return "kl_to_target";
    case LossKind::GanBce: return "gan_bce";
    case LossKind::L1Binary: return "l1_binary";
  }
  return "unknown";
}

std::vector<double> softmax_stable(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  double max = logits[0];
  for (double z : logits) max = std::max(max, z);
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - max);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

DenseMatrix softmax_rows(const DenseMatrix& logits) {
  DenseMatrix out(logits.rows, logits.cols);
  for (std::size_t i = 0; i < logits.rows; ++i) {
    const auto probs = softmax_stable(logits.row(i));
    std::copy(probs.begin(), probs.end(), out.row(i).begin());
  }
  return out;
}

double entropy_nat(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

std::uint64_t kl_clamp_count() { return g_kl_clamp_count.load(); }
void reset_kl_clamp_count() { g_kl_clamp_count.store(0); }

double loss_eval(LossKind kind, std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    std::ostringstream msg;
    msg << "loss_eval: length mismatch " << p.size() << " vs " << q.size();
    throw config_error(msg.str());
  }
  switch (kind) {
    case LossKind::CrossEntropy: {
      double loss = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (q[i] == 0.0) continue;
        loss -= q[i] * std::log(std::max(p[i], kKlFloor));
      }
      return loss;
    }
    case LossKind::KlToTarget: {
      double kl = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        double denom = q[i];
        if (denom < kKlFloor) {
          denom = kKlFloor;
          g_kl_clamp_count.fetch_add(1);
        }
        kl += p[i] * std::log(p[i] / denom);
      }
      return kl;
    }
    case LossKind::GanBce: {
      double loss = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double prob = std::clamp(p[i], kKlFloor, 1.0 - 1e-15);
        loss -= q[i] * std::log(prob) + (1.0 - q[i]) * std::log(1.0 - prob);
      }
      return loss / static_cast<double>(p.size());
    }
    case LossKind::L1Binary: {
      double loss = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) loss += std::abs(p[i] - q[i]);
      return loss / static_cast<double>(p.size());
    }
  }
  throw config_error("loss_eval: unknown loss kind");
}

LossGrad loss_grad_from_logits(LossKind kind, const DenseMatrix& logits,
                               const DenseMatrix& targets) {
  if (targets.rows != logits.rows) {
    std::ostringstream msg;
    msg << "targets have " << targets.rows << " rows, logits have " << logits.rows;
    throw config_error(msg.str());
  }
  const double n = static_cast<double>(logits.rows);
  LossGrad out;
  out.dlogits = DenseMatrix(logits.rows, logits.cols);

  switch (kind) {
    case LossKind::CrossEntropy:
    case LossKind::KlToTarget: {
      if (targets.cols != logits.cols) {
        std::ostringstream msg;
        msg << "targets have " << targets.cols << " columns, logits have " << logits.cols;
        throw config_error(msg.str());
      }
      for (std::size_t i = 0; i < logits.rows; ++i) {
        const auto t = targets.row(i);
        if (kind == LossKind::CrossEntropy) {
          require_one_hot_row(t, i);
        } else {
          require_probability_row(t, i);
        }
        const auto z = logits.row(i);
        const double lse = log_sum_exp(z);
        // Exact log-probabilities from logits: ln p_j = z_j - lse.
        double row_loss = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j) {
          if (t[j] > 0.0) {
            row_loss -= t[j] * (z[j] - lse);
            if (kind == LossKind::KlToTarget) row_loss += t[j] * std::log(t[j]);
          }
        }
        out.loss += row_loss;
        const auto probs = softmax_stable(z);
        auto grad = out.dlogits.row(i);
        for (std::size_t j = 0; j < z.size(); ++j) grad[j] = (probs[j] - t[j]) / n;
      }
      out.loss /= n;
      break;
    }
    case LossKind::GanBce: {
      if (logits.cols != 1) {
        std::ostringstream msg;
        msg << "gan_bce expects single-column logits, got " << logits.cols;
        throw config_error(msg.str());
      }
      require_binary_column(targets);
      for (std::size_t i = 0; i < logits.rows; ++i) {
        const double z = logits.at(i, 0);
        const double t = targets.at(i, 0);
        out.loss += t * softplus(-z) + (1.0 - t) * softplus(z);
        out.dlogits.at(i, 0) = (sigmoid(z) - t) / n;
      }
      out.loss /= n;
      break;
    }
    case LossKind::L1Binary: {
      if (logits.cols != 1) {
        std::ostringstream msg;
        msg << "l1_binary expects single-column logits, got " << logits.cols;
        throw config_error(msg.str());
      }
      require_binary_column(targets);
      for (std::size_t i = 0; i < logits.rows; ++i) {
        const double z = logits.at(i, 0);
        const double t = targets.at(i, 0);
        const double s = sigmoid(z);
        out.loss += std::abs(s - t);
        const double sign = (s >= t) ? 1.0 : -1.0;
        out.dlogits.at(i, 0) = sign * s * (1.0 - s) / n;
      }
      out.loss /= n;
      break;
    }
  }
  if (!std::isfinite(out.loss)) throw validation_error("loss is not finite");
  return out;
}

} // namespace fedgo::numerics
