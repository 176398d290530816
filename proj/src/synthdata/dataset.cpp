#include "fedgolab/synthdata/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fedgolab/common/errors.hpp"

namespace fedgo::synthdata {

void LabeledDataset::validate() const {
  if (points.rows != labels.size()) {
    std::ostringstream msg;
    msg << "dataset has " << points.rows << " points but " << labels.size() << " labels";
    throw validation_error(msg.str());
  }
  points.ensure_finite("dataset points");
  for (int label : labels) {
    if (label < 0) throw validation_error("dataset label is negative");
  }
}

LabeledDataset LabeledDataset::subset(const std::vector<std::size_t>& indices) const {
  LabeledDataset out;
  out.points = numerics::DenseMatrix(indices.size(), points.cols);
  out.labels.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = points.row(indices[i]);
    std::copy(src.begin(), src.end(), out.points.row(i).begin());
    out.labels.push_back(labels[indices[i]]);
  }
  return out;
}

LabeledDataset concat(const std::vector<LabeledDataset>& parts) {
  LabeledDataset out;
  std::size_t total = 0;
  std::size_t dim = 0;
  for (const auto& part : parts) {
    total += part.size();
    if (part.size() > 0) dim = part.dim();
  }
  out.points = numerics::DenseMatrix(total, dim);
  out.labels.reserve(total);
  std::size_t row = 0;
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < part.size(); ++i, ++row) {
      const auto src = part.points.row(i);
      std::copy(src.begin(), src.end(), out.points.row(row).begin());
      out.labels.push_back(part.labels[i]);
    }
  }
  return out;
}

UnlabeledDataset strip_labels(const LabeledDataset& data) {
  return UnlabeledDataset{data.points};
}

int class_count(const LabeledDataset& data) {
  int max_label = -1;
  for (int label : data.labels) max_label = std::max(max_label, label);
  return max_label + 1;
}

std::vector<std::size_t> label_histogram(const LabeledDataset& data) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(class_count(data)), 0);
  for (int label : data.labels) counts[static_cast<std::size_t>(label)] += 1;
  return counts;
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

void write_header(std::ostream& out, std::size_t dim, bool with_label) {
  for (std::size_t j = 0; j < dim; ++j) {
    if (j > 0) out << ',';
    out << 'x' << j;
  }
  if (with_label) out << ",label";
  out << '\n';
}

} // namespace

void write_csv(const LabeledDataset& data, std::ostream& out) {
  write_header(out, data.dim(), true);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto row = data.points.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out << ',';
      out << format_double(row[j]);
    }
    out << ',' << data.labels[i] << '\n';
  }
}

void write_csv(const UnlabeledDataset& data, std::ostream& out) {
  write_header(out, data.dim(), false);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto row = data.points.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out << ',';
      out << format_double(row[j]);
    }
    out << '\n';
  }
}

void write_csv_file(const LabeledDataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path);
  write_csv(data, out);
  if (!out) throw io_error("write failed: " + path);
}

LabeledDataset read_labeled_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw io_error("csv is empty");
  const std::size_t columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (columns < 2 || line.rfind(",label") != line.size() - 6) {
    throw io_error("csv header must end with ,label");
  }
  const std::size_t dim = columns - 1;

  std::vector<double> values;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t start = 0;
    for (std::size_t j = 0; j < columns; ++j) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      const std::string_view field(line.data() + start, end - start);
      if (j < dim) {
        double v = 0.0;
        const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc{}) throw io_error("csv: bad float field '" + std::string(field) + "'");
        values.push_back(v);
      } else {
        int label = 0;
        const auto res = std::from_chars(field.data(), field.data() + field.size(), label);
        if (res.ec != std::errc{}) throw io_error("csv: bad label field '" + std::string(field) + "'");
        labels.push_back(label);
      }
      start = end + 1;
    }
  }

  LabeledDataset out;
  out.points = numerics::DenseMatrix(labels.size(), dim);
  out.points.data = std::move(values);
  out.labels = std::move(labels);
  out.validate();
  return out;
}

} // namespace fedgo::synthdata
