#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "fedgolab/fedloop/config.hpp"

namespace fedgo::cli {

inline constexpr const char* kMetricsHeader =
    "seed,round,server_acc,ensemble_acc,ensemble_loss,distill_kl,wall_ms";

struct MetricsRow {
  std::string method; // empty when absent from the file
  std::uint64_t seed = 0;
  std::size_t round = 0;
  double server_acc = 0.0;
  double ensemble_acc = 0.0;
  double ensemble_loss = 0.0;
  double distill_kl = 0.0;
  double wall_ms = 0.0;
};

/// Append-only metrics writer; every row is flushed so a crash leaves a valid
/// prefix. The wall_ms column is pinned to 0 to keep reruns byte-identical;
/// measured timings go to summary.json. An optional leading `method` column
/// supports multi-method comparison files.
class MetricsWriter {
public:
  MetricsWriter(const std::string& path, bool with_method_column = false);

  void write_row(std::uint64_t seed, const fedloop::RoundMetrics& metrics,
                 const std::string& method = "");

private:
  std::ofstream out_;
  bool with_method_;
};

std::vector<MetricsRow> read_metrics_csv(const std::string& path);

} // namespace fedgo::cli
