#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fedgolab/numerics/matrix.hpp"

namespace fedgo::synthdata {

/// Points in R^d with integer class labels.
struct LabeledDataset {
  numerics::DenseMatrix points; // n x d
  std::vector<int> labels;      // length n

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return points.cols; }
  void validate() const;

  /// Rows of this dataset selected by index, in the given order.
  LabeledDataset subset(const std::vector<std::size_t>& indices) const;
};

struct UnlabeledDataset {
  numerics::DenseMatrix points; // m x d

  std::size_t size() const { return points.rows; }
  std::size_t dim() const { return points.cols; }
};

LabeledDataset concat(const std::vector<LabeledDataset>& parts);
UnlabeledDataset strip_labels(const LabeledDataset& data);

/// Largest label + 1.
int class_count(const LabeledDataset& data);

/// Per-class sample counts (length class_count).
std::vector<std::size_t> label_histogram(const LabeledDataset& data);

/// CSV with header x0,x1,...,label. Floats use shortest round-trip decimals,
/// so write/read is value-exact.
void write_csv(const LabeledDataset& data, std::ostream& out);
void write_csv(const UnlabeledDataset& data, std::ostream& out);
void write_csv_file(const LabeledDataset& data, const std::string& path);
LabeledDataset read_labeled_csv(std::istream& in);

/// Shortest decimal that parses back to exactly the same double.
std::string format_double(double value);

} // namespace fedgo::synthdata
