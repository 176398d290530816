#include "fedgolab/numerics/matrix.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "fedgolab/common/errors.hpp"

namespace fedgo::numerics {

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c, double fill)
    : rows(r), cols(c), data(r * c, fill) {}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> values) {
  DenseMatrix m;
  m.rows = values.size();
  m.cols = values.size() == 0 ? 0 : values.begin()->size();
  m.data.reserve(m.rows * m.cols);
  for (const auto& row : values) {
    if (row.size() != m.cols) {
      throw config_error("from_rows: ragged initializer");
    }
    m.data.insert(m.data.end(), row.begin(), row.end());
  }
  return m;
}

void DenseMatrix::ensure_finite(const char* what) const {
  for (double v : data) {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << what << ": non-finite entry in " << rows << "x" << cols << " matrix";
      throw validation_error(msg.str());
    }
  }
}

void require_shape(const DenseMatrix& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.rows != rows || m.cols != cols) {
    std::ostringstream msg;
    msg << what << ": expected " << rows << "x" << cols << ", got " << m.rows << "x" << m.cols;
    throw config_error(msg.str());
  }
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows) {
    std::ostringstream msg;
    msg << "matmul: inner dims differ, " << a.rows << "x" << a.cols << " * " << b.rows << "x"
        << b.cols;
    throw config_error(msg.str());
  }
  DenseMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.data.data() + i * a.cols;
    double* orow = out.data.data() + i * out.cols;
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = b.data.data() + k * b.cols;
      for (std::size_t j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

DenseMatrix matmul_transpose_a(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows) {
    std::ostringstream msg;
    msg << "matmul_transpose_a: row counts differ, " << a.rows << " vs " << b.rows;
    throw config_error(msg.str());
  }
  DenseMatrix out(a.cols, b.cols);
  for (std::size_t k = 0; k < a.rows; ++k) {
    const double* arow = a.data.data() + k * a.cols;
    const double* brow = b.data.data() + k * b.cols;
    for (std::size_t i = 0; i < a.cols; ++i) {
      const double aki = arow[i];
      if (aki == 0.0) continue;
      double* orow = out.data.data() + i * out.cols;
      for (std::size_t j = 0; j < b.cols; ++j) orow[j] += aki * brow[j];
    }
  }
  return out;
}

DenseMatrix matmul_transpose_b(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.cols) {
    std::ostringstream msg;
    msg << "matmul_transpose_b: column counts differ, " << a.cols << " vs " << b.cols;
    throw config_error(msg.str());
  }
  DenseMatrix out(a.rows, b.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.data.data() + i * a.cols;
    double* orow = out.data.data() + i * out.cols;
    for (std::size_t j = 0; j < b.rows; ++j) {
      const double* brow = b.data.data() + j * b.cols;
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += arow[k] * brow[k];
      orow[j] = acc;
    }
  }
  return out;
}

void add_row_inplace(DenseMatrix& m, std::span<const double> row_vector) {
  if (row_vector.size() != m.cols) {
    std::ostringstream msg;
    msg << "add_row_inplace: vector length " << row_vector.size() << " vs " << m.cols
        << " columns";
    throw config_error(msg.str());
  }
  for (std::size_t i = 0; i < m.rows; ++i) {
    double* row = m.data.data() + i * m.cols;
    for (std::size_t j = 0; j < m.cols; ++j) row[j] += row_vector[j];
  }
}

std::vector<double> column_sums(const DenseMatrix& m) {
  std::vector<double> sums(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double* row = m.data.data() + i * m.cols;
    for (std::size_t j = 0; j < m.cols; ++j) sums[j] += row[j];
  }
  return sums;
}

bool bitwise_equal(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  if (a.data.empty()) return true;
  return std::memcmp(a.data.data(), b.data.data(), a.data.size() * sizeof(double)) == 0;
}

} // namespace fedgo::numerics
