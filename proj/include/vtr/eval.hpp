#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vtr/matrix.hpp"

namespace vtr {

// Zero-shot retrieval evaluation: similarity grids, dual-softmax re-scoring,
// Recall@K with deterministic tie handling, and the frame-quality classifier.

enum class Direction { kTextToVideo, kVideoToText };

std::string direction_name(Direction d);

struct RetrievalMetrics {
  double r1 = 0.0;   // percentages in [0, 100]
  double r5 = 0.0;
  double r10 = 0.0;
  double avg_r = 0.0;
};

// S(i, j) = v_i . t_j; rows are videos, columns are texts. When `normalize`
// is set both sides are L2-normalized first.
Matrix similarity_matrix(const Matrix& videos, const Matrix& texts, bool normalize = true);

// Dual-softmax re-scoring. For text->video ranking each column j is
// reweighted by softmax over videos of beta * S(., j); video->text uses the
// transposed normalization. Both directions derive from the same input S.
Matrix apply_dsl(const Matrix& s, double beta, Direction dir = Direction::kTextToVideo);

// Percentage of queries whose diagonal match ranks in the top k by descending
// score; equal scores rank the lower index first. k larger than the candidate
// count clamps to 100 after invoking `warn` (when provided).
double recall_at_k(const Matrix& s, int k, Direction dir,
                   const std::function<void(const std::string&)>& warn = {});

double avg_r(double r1, double r5, double r10);

RetrievalMetrics compute_metrics(const Matrix& s, Direction dir);

enum class QualityLabel { kHigh, kMedium, kLow };

std::string quality_label_name(QualityLabel q);

// Fraction f of scores strictly above threshold: f > 2/3 High, f < 1/3 Low,
// Medium otherwise.
QualityLabel quality_classify(std::span<const double> frame_scores, double threshold = 0.5);

}  // namespace vtr
