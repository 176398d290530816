#include "fedgolab/theorylab/privacy.hpp"

#include <string>

#include "fedgolab/common/errors.hpp"

namespace fedgo::theorylab {

std::string_view privacy_scenario_name(PrivacyScenario scenario) {
  switch (scenario) {
    case PrivacyScenario::FedAvg: return "fedavg";
    case PrivacyScenario::G1D1: return "g1d1";
    case PrivacyScenario::G2D1: return "g2d1";
    case PrivacyScenario::G2D2: return "g2d2";
    case PrivacyScenario::G3D2: return "g3d2";
  }
  return "unknown";
}

PrivacyScenario privacy_scenario_from_name(std::string_view name) {
  if (name == "fedavg") return PrivacyScenario::FedAvg;
  if (name == "g1d1") return PrivacyScenario::G1D1;
  if (name == "g2d1") return PrivacyScenario::G2D1;
  if (name == "g2d2") return PrivacyScenario::G2D2;
  if (name == "g3d2") return PrivacyScenario::G3D2;
  throw config_error("unknown privacy scenario: " + std::string(name));
}

void PrivacyLedger::validate() const {
  const double budgets[] = {rounds,    gan_rounds,    epsilon_m,    epsilon_d,
                            epsilon_g, epsilon_m_hat, epsilon_g_hat};
  for (double b : budgets) {
    if (b < 0.0) throw config_error("privacy budgets and round counts must be non-negative");
  }
}

PrivacyTotals privacy_ledger(const PrivacyLedger& ledger) {
  ledger.validate();
  const double t = ledger.rounds;
  const double t_gan = ledger.gan_rounds;
  PrivacyTotals totals;
  switch (ledger.scenario) {
    case PrivacyScenario::FedAvg:
      totals.client = t * ledger.epsilon_m;
      totals.server = 0.0;
      break;
    case PrivacyScenario::G1D1:
      totals.client = t * ledger.epsilon_m + ledger.epsilon_d;
      totals.server = ledger.epsilon_g_hat + t * ledger.epsilon_m_hat;
      break;
    case PrivacyScenario::G2D1:
      totals.client = t * ledger.epsilon_m + ledger.epsilon_d;
      totals.server = t * ledger.epsilon_m_hat;
      break;
    case PrivacyScenario::G2D2:
      totals.client = t * ledger.epsilon_m + ledger.epsilon_d;
      totals.server = 0.0;
      break;
    case PrivacyScenario::G3D2:
      totals.client = t_gan * (ledger.epsilon_d + ledger.epsilon_g) + t * ledger.epsilon_m +
                      ledger.epsilon_d;
      totals.server = 0.0;
      break;
  }
  return totals;
}

} // namespace fedgo::theorylab
