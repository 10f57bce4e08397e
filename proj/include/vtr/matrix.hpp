#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "vtr/common.hpp"

namespace vtr {

// Dense row-major matrix of doubles. All kernels in this toolkit are written
// against this one container; interchange on disk is 32-bit (see io.hpp).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);
  Matrix(int rows, int cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(int n);
  static Matrix row_vector(std::span<const double> v);
  static Matrix col_vector(std::span<const double> v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::span<double> row(int r) { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const double> row(int r) const { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  bool all_finite() const;
  std::string shape_str() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Feature containers share the Matrix layout; the aliases name their roles.
// FrameFeatures: one row per video frame. TokenFeatures: one row per text
// token, CLS at row 0. CaptionFeatures: one row per frame's auxiliary caption.
using FrameFeatures = Matrix;
using TokenFeatures = Matrix;
using CaptionFeatures = Matrix;

// --- kernels ---------------------------------------------------------------
// Deterministic accumulation: row-major, left-to-right. Throws ShapeError on
// dimension mismatch (message names both shapes) and NumericError when a
// result contains non-finite entries.

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);

// softmax(scale * x), stabilized by max subtraction; |scale*x| up to ~1e4.
std::vector<double> softmax_scaled(std::span<const double> x, double scale);

// Column-wise mean over rows; requires at least one row.
std::vector<double> mean_pool(const Matrix& m);

// (x - mean) / sqrt(var + eps) with population variance; affine parameters
// are owned by the caller and applied separately.
std::vector<double> layer_norm(std::span<const double> x, double eps);

double dot(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> v);

// Rows scaled to unit L2 norm; all-zero rows pass through unchanged.
Matrix l2_normalize_rows(const Matrix& m);

double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace vtr
