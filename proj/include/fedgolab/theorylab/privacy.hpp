#pragma once

#include <string_view>
#include <utility>

namespace fedgo::theorylab {

/// Deployment scenario for the budget arithmetic: how the generator was
/// obtained and which dataset is distilled on.
enum class PrivacyScenario { FedAvg, G1D1, G2D1, G2D2, G3D2 };

std::string_view privacy_scenario_name(PrivacyScenario scenario);
PrivacyScenario privacy_scenario_from_name(std::string_view name);

/// Per-exchange differential privacy budgets and round counts.
///   epsilon_m / epsilon_d / epsilon_g: client-sent classifier, discriminator
///   and generator budgets per provision.
///   epsilon_m_hat / epsilon_g_hat: server-sent classifier and generator
///   budgets when the server uses its own data.
struct PrivacyLedger {
  PrivacyScenario scenario = PrivacyScenario::FedAvg;
  double rounds = 0.0;     // T
  double gan_rounds = 0.0; // T'
  double epsilon_m = 0.0;
  double epsilon_d = 0.0;
  double epsilon_g = 0.0;
  double epsilon_m_hat = 0.0;
  double epsilon_g_hat = 0.0;

  void validate() const;
};

struct PrivacyTotals {
  double client = 0.0;
  double server = 0.0;
};

/// Closed-form total leakage per side:
///   FedAvg: (T em,              0)
///   G1D1:   (T em + ed,         eg_hat + T em_hat)
///   G2D1:   (T em + ed,         T em_hat)
///   G2D2:   (T em + ed,         0)
///   G3D2:   (T'(ed + eg) + T em + ed, 0)
PrivacyTotals privacy_ledger(const PrivacyLedger& ledger);

} // namespace fedgo::theorylab
