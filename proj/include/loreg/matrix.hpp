#pragma once

#include <string>
#include <vector>

#include "loreg/errors.hpp"

namespace loreg {

using Vector = std::vector<double>;

// Strictly increasing 0-based column indices.
using IndexSet = std::vector<int>;

/// Dense row-major matrix of doubles. Entries must be finite when constructed
/// from external data; arithmetic helpers assume valid inputs.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);  // zero-filled
  Matrix(int rows, int cols, Vector data);
  static Matrix identity(int n);
  static Matrix diag(const Vector& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  const Vector& data() const { return data_; }
  Vector& data() { return data_; }
  const double* row_ptr(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }
  double* row_ptr(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }

  Vector col(int j) const;
  Vector row(int i) const;

  bool operator==(const Matrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  Vector data_;
};

Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply_vec(const Matrix& a, const Vector& x);
Matrix submatrix(const Matrix& m, const IndexSet& rows, const IndexSet& cols);

double dot(const Vector& a, const Vector& b);
double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

void validate_index_set(const IndexSet& s, int p);
bool index_set_contains(const IndexSet& s, int v);

/// CSV: one row per line, comma-separated decimals, no header by default.
/// Values are written with the shortest representation that round-trips.
Matrix read_csv_matrix(const std::string& path, bool header = false);
void write_csv_matrix(const std::string& path, const Matrix& m, bool header = false);
std::string format_double(double v);

}  // namespace loreg
