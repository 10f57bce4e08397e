#include "vtr/eval.hpp"

#include <algorithm>
#include <cmath>

namespace vtr {

std::string direction_name(Direction d) {
  return d == Direction::kTextToVideo ? "t2v" : "v2t";
}

Matrix similarity_matrix(const Matrix& videos, const Matrix& texts, bool normalize) {
  if (videos.cols() != texts.cols())
    throw ShapeError("similarity_matrix dimension mismatch: " + videos.shape_str() + " vs " +
                     texts.shape_str());
  const Matrix v = normalize ? l2_normalize_rows(videos) : videos;
  const Matrix t = normalize ? l2_normalize_rows(texts) : texts;
  return matmul(v, transpose(t));
}

Matrix apply_dsl(const Matrix& s, double beta, Direction dir) {
  if (beta <= 0.0) throw std::domain_error("apply_dsl: beta must be positive");
  Matrix out = s;
  if (dir == Direction::kTextToVideo) {
    // weight each column by the softmax over videos
    for (int j = 0; j < s.cols(); ++j) {
      std::vector<double> col(s.rows());
      for (int i = 0; i < s.rows(); ++i) col[i] = s(i, j);
      const auto w = softmax_scaled(col, beta);
      for (int i = 0; i < s.rows(); ++i) out(i, j) = s(i, j) * w[i];
    }
  } else {
    for (int i = 0; i < s.rows(); ++i) {
      const auto w = softmax_scaled(s.row(i), beta);
      for (int j = 0; j < s.cols(); ++j) out(i, j) = s(i, j) * w[j];
    }
  }
  return out;
}

double recall_at_k(const Matrix& s, int k, Direction dir,
                   const std::function<void(const std::string&)>& warn) {
  if (k < 1) throw std::domain_error("recall_at_k: k must be >= 1");
  const int queries = dir == Direction::kTextToVideo ? s.cols() : s.rows();
  const int candidates = dir == Direction::kTextToVideo ? s.rows() : s.cols();
  if (queries == 0 || candidates == 0) throw std::domain_error("recall_at_k: empty matrix");
  if (queries > candidates)
    throw ShapeError("recall_at_k: diagonal ground truth needs queries <= candidates, got " +
                     s.shape_str());
  if (k > candidates) {
    if (warn) warn("recall_at_k: k=" + std::to_string(k) + " exceeds candidate count " +
                   std::to_string(candidates) + "; clamping to 100");
    return 100.0;
  }

  int hits = 0;
  for (int q = 0; q < queries; ++q) {
    const double truth = s(q, q);
    int rank = 1;
    for (int c = 0; c < candidates; ++c) {
      if (c == q) continue;
      const double score = dir == Direction::kTextToVideo ? s(c, q) : s(q, c);
      if (score > truth || (score == truth && c < q)) ++rank;
    }
    if (rank <= k) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(queries);
}

double avg_r(double r1, double r5, double r10) {
  for (double r : {r1, r5, r10})
    if (r < 0.0 || r > 100.0)
      throw std::domain_error("avg_r: recall values must be in [0, 100]");
  return (r1 + r5 + r10) / 3.0;
}

RetrievalMetrics compute_metrics(const Matrix& s, Direction dir) {
  RetrievalMetrics m;
  m.r1 = recall_at_k(s, 1, dir);
  m.r5 = recall_at_k(s, 5, dir);
  m.r10 = recall_at_k(s, 10, dir);
  m.avg_r = avg_r(m.r1, m.r5, m.r10);
  return m;
}

std::string quality_label_name(QualityLabel q) {
  switch (q) {
    case QualityLabel::kHigh: return "High";
    case QualityLabel::kMedium: return "Medium";
    case QualityLabel::kLow: return "Low";
  }
  return "Medium";
}

QualityLabel quality_classify(std::span<const double> frame_scores, double threshold) {
  if (frame_scores.empty()) throw std::domain_error("quality_classify: no frame scores");
  int above = 0;
  for (double s : frame_scores)
    if (s > threshold) ++above;
  const double f = static_cast<double>(above) / static_cast<double>(frame_scores.size());
  if (f > 2.0 / 3.0) return QualityLabel::kHigh;
  if (f < 1.0 / 3.0) return QualityLabel::kLow;
  return QualityLabel::kMedium;
}

}  // namespace vtr
