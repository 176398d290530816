#include "fedgolab/cli/metrics_io.hpp"

#include <charconv>
#include <sstream>

#include "fedgolab/common/errors.hpp"
#include "fedgolab/synthdata/dataset.hpp"

namespace fedgo::cli {

MetricsWriter::MetricsWriter(const std::string& path, bool with_method_column)
    : out_(path), with_method_(with_method_column) {
  if (!out_) throw io_error("cannot open for writing: " + path);
  if (with_method_) out_ << "method,";
  out_ << kMetricsHeader << '\n';
  out_.flush();
  if (!out_) throw io_error("write failed: " + path);
}

void MetricsWriter::write_row(std::uint64_t seed, const fedloop::RoundMetrics& metrics,
                              const std::string& method) {
  if (with_method_) out_ << method << ',';
  out_ << seed << ',' << metrics.round << ',' << synthdata::format_double(metrics.server_accuracy)
       << ',' << synthdata::format_double(metrics.ensemble_accuracy) << ','
       << synthdata::format_double(metrics.ensemble_loss) << ','
       << synthdata::format_double(metrics.distill_kl) << ",0\n";
  out_.flush();
  if (!out_) throw io_error("metrics write failed");
}

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw io_error(path + ": metrics file is empty");
  bool with_method = false;
  if (line == std::string("method,") + kMetricsHeader) {
    with_method = true;
  } else if (line != kMetricsHeader) {
    throw io_error(path + ": unexpected metrics header '" + line + "'");
  }

  std::vector<MetricsRow> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t end = line.find(',', start);
      fields.push_back(line.substr(start, end - start));
      if (end == std::string::npos) break;
      start = end + 1;
    }
    const std::size_t expected = with_method ? 8 : 7;
    if (fields.size() != expected) {
      std::ostringstream msg;
      msg << path << ":" << line_number << ": expected " << expected << " fields, got "
          << fields.size();
      throw io_error(msg.str());
    }

    MetricsRow row;
    std::size_t f = 0;
    if (with_method) row.method = fields[f++];
    auto parse_u64 = [&](const std::string& s, auto& value) {
      const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
      if (res.ec != std::errc{}) throw io_error(path + ": bad integer field '" + s + "'");
    };
    auto parse_f64 = [&](const std::string& s, double& value) {
      const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
      if (res.ec != std::errc{}) throw io_error(path + ": bad float field '" + s + "'");
    };
    parse_u64(fields[f++], row.seed);
    parse_u64(fields[f++], row.round);
    parse_f64(fields[f++], row.server_acc);
    parse_f64(fields[f++], row.ensemble_acc);
    parse_f64(fields[f++], row.ensemble_loss);
    parse_f64(fields[f++], row.distill_kl);
    parse_f64(fields[f++], row.wall_ms);
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace fedgo::cli
