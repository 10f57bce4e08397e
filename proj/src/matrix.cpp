#include "vtr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vtr {

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
  if (rows < 0 || cols < 0) throw ShapeError("matrix dimensions must be nonnegative");
}

Matrix::Matrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 0 || cols < 0) throw ShapeError("matrix dimensions must be nonnegative");
  if (data_.size() != static_cast<std::size_t>(rows) * cols)
    throw ShapeError("matrix data length " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw ShapeError("ragged initializer rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n, 0.0);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::row_vector(std::span<const double> v) {
  return Matrix(1, static_cast<int>(v.size()), std::vector<double>(v.begin(), v.end()));
}

Matrix Matrix::col_vector(std::span<const double> v) {
  return Matrix(static_cast<int>(v.size()), 1, std::vector<double>(v.begin(), v.end()));
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

std::string Matrix::shape_str() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

namespace {

void require_finite(const Matrix& m, const char* op) {
  if (!m.all_finite()) throw NumericError(std::string(op) + " produced non-finite values");
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul shape mismatch: " + a.shape_str() + " x " + b.shape_str());
  Matrix out(a.rows(), b.cols(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  require_finite(out, "matmul");
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b))
    throw ShapeError("add shape mismatch: " + a.shape_str() + " vs " + b.shape_str());
  Matrix out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b))
    throw ShapeError("sub shape mismatch: " + a.shape_str() + " vs " + b.shape_str());
  Matrix out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

Matrix scale(const Matrix& a, double s) {
  Matrix out = a;
  for (double& v : out.data()) v *= s;
  return out;
}

std::vector<double> softmax_scaled(std::span<const double> x, double scale) {
  if (x.empty()) throw std::domain_error("softmax_scaled: empty input");
  double hi = scale * x[0];
  for (double v : x) hi = std::max(hi, scale * v);
  std::vector<double> out(x.size());
  double sum = 0.0;
  // floor at the smallest normal double: keeps every weight strictly
  // positive when the scaled spread exceeds the exp underflow range
  constexpr double kFloor = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::max(std::exp(scale * x[i] - hi), kFloor);
    sum += out[i];
  }
  for (double& v : out) {
    v /= sum;
    if (!std::isfinite(v)) throw NumericError("softmax_scaled produced non-finite values");
  }
  return out;
}

std::vector<double> mean_pool(const Matrix& m) {
  if (m.rows() < 1) throw std::domain_error("mean_pool: matrix has zero rows");
  std::vector<double> out(static_cast<std::size_t>(m.cols()), 0.0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[j] += m(i, j);
  for (double& v : out) v /= m.rows();
  return out;
}

std::vector<double> layer_norm(std::span<const double> x, double eps) {
  if (x.empty()) throw std::domain_error("layer_norm: empty input");
  if (eps <= 0.0) throw std::domain_error("layer_norm: eps must be positive");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size());
  const double inv = 1.0 / std::sqrt(var + eps);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean) * inv;
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ShapeError("dot length mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l2_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

Matrix l2_normalize_rows(const Matrix& m) {
  Matrix out = m;
  for (int i = 0; i < m.rows(); ++i) {
    const double n = l2_norm(m.row(i));
    if (n < 1e-300) continue;
    for (int j = 0; j < m.cols(); ++j) out(i, j) /= n;
  }
  return out;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (na < 1e-300 || nb < 1e-300) return 0.0;
  return dot(a, b) / (na * nb);
}

}  // namespace vtr
