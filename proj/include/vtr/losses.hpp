#pragma once

#include <vector>

#include "vtr/tape.hpp"

namespace vtr {

// Contrastive objectives. Logits are scale * <v, t> (on L2-normalized rows
// when `normalize` is set). The base direction anchors on texts: for anchor
// b the negatives vary the video index. `symmetric` averages in the
// transposed direction as well.

// One-directional loss over a precomputed logit matrix: anchors are columns,
// candidates vary along rows; sum over anchors of -log softmax at the
// diagonal.
Tape::Var contrastive_columns(Tape& t, Tape::Var logits);

Tape::Var vtc_loss(Tape& t, Tape::Var video, Tape::Var text, double scale, bool symmetric,
                   bool normalize);
double vtc_loss(const Matrix& video, const Matrix& text, double scale, bool symmetric = false,
                bool normalize = true);
double vtc_loss_from_logits(const Matrix& logits, bool symmetric = false);

// Frame-caption contrastive: per frame index a cross-batch contrastive term
// between that frame's features and caption features, averaged over frames.
Tape::Var fcc_loss(Tape& t, const std::vector<Tape::Var>& frames,
                   const std::vector<Tape::Var>& captions, double scale, bool normalize);
double fcc_loss(const std::vector<Matrix>& frames, const std::vector<Matrix>& captions,
                double scale = 1.0, bool normalize = true);

}  // namespace vtr
