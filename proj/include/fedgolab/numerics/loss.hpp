#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fedgolab/numerics/matrix.hpp"

namespace fedgo::numerics {

enum class LossKind { CrossEntropy, KlToTarget, GanBce, L1Binary };

std::string_view loss_kind_name(LossKind kind);

/// Max-subtracted softmax; entries positive and summing to 1, invariant to
/// adding a constant to every logit.
std::vector<double> softmax_stable(std::span<const double> logits);

DenseMatrix softmax_rows(const DenseMatrix& logits);

/// Natural-log entropy of a probability vector, with 0*ln(0) = 0.
double entropy_nat(std::span<const double> probs);

/// Number of times a KL evaluation had to clamp a zero denominator to the
/// 1e-12 floor. Never resets on its own; clamped evaluations are legal but
/// worth noticing.
std::uint64_t kl_clamp_count();
void reset_kl_clamp_count();

/// Per-sample loss on already-decoded outputs.
///   CrossEntropy: p = probability row, q = one-hot row, -sum q*ln(p)
///   KlToTarget:   KL(p || q) = sum p*ln(p/q); zero q entries under positive
///                 p mass are clamped to 1e-12 and counted
///   GanBce:       p = probability, q in {0,1}: -[q ln p + (1-q) ln(1-p)]
///   L1Binary:     mean |p - q|
double loss_eval(LossKind kind, std::span<const double> p, std::span<const double> q);

struct LossGrad {
  double loss = 0.0;
  DenseMatrix dlogits; // d(mean loss)/d(logits), same shape as logits
};

/// Loss and logit-gradient for a batch, averaged over rows. CrossEntropy and
/// KlToTarget read targets as per-row distributions over the logit columns;
/// GanBce and L1Binary require single-column logits with {0,1} targets.
LossGrad loss_grad_from_logits(LossKind kind, const DenseMatrix& logits,
                               const DenseMatrix& targets);

} // namespace fedgo::numerics
