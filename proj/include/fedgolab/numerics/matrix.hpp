#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fedgo::numerics {

/// Row-major dense matrix of 64-bit floats. The single numeric container for
/// batches, logits, parameters and gradients.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0);

  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> values);

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

  std::size_t size() const { return data.size(); }
  bool empty() const { return data.empty(); }

  /// Throws validation_error naming `what` if any entry is NaN or infinite.
  void ensure_finite(const char* what) const;
};

/// Throws config_error naming expected/actual dimensions when they differ.
void require_shape(const DenseMatrix& m, std::size_t rows, std::size_t cols, const char* what);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// a^T * b without materializing the transpose.
DenseMatrix matmul_transpose_a(const DenseMatrix& a, const DenseMatrix& b);

/// a * b^T without materializing the transpose.
DenseMatrix matmul_transpose_b(const DenseMatrix& a, const DenseMatrix& b);

void add_row_inplace(DenseMatrix& m, std::span<const double> row_vector);

/// Sum over rows -> vector of length cols.
std::vector<double> column_sums(const DenseMatrix& m);

bool bitwise_equal(const DenseMatrix& a, const DenseMatrix& b);

} // namespace fedgo::numerics
