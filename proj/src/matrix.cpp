#include "loreg/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace loreg {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionMismatch("matrix dimensions must be positive");
  }
  data_.assign(static_cast<size_t>(rows) * cols, 0.0);
}

Matrix::Matrix(int rows, int cols, Vector data) : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionMismatch("matrix dimensions must be positive");
  }
  if (data_.size() != static_cast<size_t>(rows) * cols) {
    throw DimensionMismatch("data length does not match rows x cols");
  }
  for (size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k])) {
      throw ValidationError("non-finite matrix entry at flat index " + std::to_string(k));
    }
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diag(const Vector& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

Vector Matrix::col(int j) const {
  Vector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(int i) const {
  return Vector(row_ptr(i), row_ptr(i) + cols_);
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("multiply: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    const double* ai = a.row_ptr(i);
    double* ci = c.row_ptr(i);
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      const double* bk = b.row_ptr(k);
      for (int j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Vector multiply_vec(const Matrix& a, const Vector& x) {
  if (a.cols() != static_cast<int>(x.size())) throw DimensionMismatch("multiply_vec: size mismatch");
  Vector y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    const double* ai = a.row_ptr(i);
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

Matrix submatrix(const Matrix& m, const IndexSet& rows, const IndexSet& cols) {
  Matrix s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= m.rows()) throw DimensionMismatch("submatrix: row index out of range");
    for (size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 0 || cols[j] >= m.cols()) throw DimensionMismatch("submatrix: col index out of range");
      s(static_cast<int>(i), static_cast<int>(j)) = m(rows[i], cols[j]);
    }
  }
  return s;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const Matrix& m) {
  double r = 0.0;
  for (double v : m.data()) r = std::max(r, std::fabs(v));
  return r;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("max_abs_diff: shape mismatch");
  double r = 0.0;
  for (size_t k = 0; k < a.data().size(); ++k) r = std::max(r, std::fabs(a.data()[k] - b.data()[k]));
  return r;
}

void validate_index_set(const IndexSet& s, int p) {
  for (size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0 || s[k] >= p) throw ValidationError("index set entry out of range");
    if (k > 0 && s[k] <= s[k - 1]) throw ValidationError("index set not strictly increasing");
  }
}

bool index_set_contains(const IndexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Matrix read_csv_matrix(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Vector> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header && lineno == 1) continue;
    if (line.empty()) continue;
    Vector row;
    size_t pos = 0;
    int colno = 0;
    while (true) {
      size_t comma = line.find(',', pos);
      std::string field = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      ++colno;
      const char* begin = field.c_str();
      char* end = nullptr;
      errno = 0;
      double v = std::strtod(begin, &end);
      while (end && *end == ' ') ++end;
      if (end == begin || (end && *end != '\0')) {
        throw ValidationError(path + ": cannot parse number at row " + std::to_string(lineno) +
                              ", column " + std::to_string(colno));
      }
      if (!std::isfinite(v)) {
        throw ValidationError(path + ": non-finite value at row " + std::to_string(lineno) +
                              ", column " + std::to_string(colno));
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ValidationError(path + ": row " + std::to_string(lineno) + " has " +
                            std::to_string(row.size()) + " fields, expected " +
                            std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(path + ": no data rows");
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

void write_csv_matrix(const std::string& path, const Matrix& m, bool header) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  if (header) {
    for (int j = 0; j < m.cols(); ++j) out << (j ? ",c" : "c") << j;
    out << '\n';
  }
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace loreg
