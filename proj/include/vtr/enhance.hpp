#pragma once

#include <vector>

#include "vtr/tape.hpp"

namespace vtr {

// Video/text feature enhancement. Mug re-weights frames and tokens against
// each other (implicit, bidirectional); the caption-guided module re-weights
// frames by per-frame caption agreement (explicit). Both are parameter-free
// re-weightings over encoder outputs.
//
// When `normalize` is set (the default), every similarity product runs on
// L2-normalized rows; the convex combinations still aggregate the rows as
// given, so the tau -> 0 limit of the enhanced video feature is exactly
// mean_pool of the input.

struct EnhancedPair {
  std::vector<double> video;  // d
  std::vector<double> text;   // d
};

struct MugWeights {
  std::vector<double> frame_weights;  // simplex over frames
  Matrix frame_text;                  // N_f x d frame-specific text features
};

// --- tape cores -------------------------------------------------------------

struct MugVars {
  Tape::Var video;          // 1 x d
  Tape::Var text;           // 1 x d
  Tape::Var frame_weights;  // N_f x 1
  Tape::Var token_weights;  // N_t x 1
  Tape::Var frame_text;     // N_f x d frame-specific text summaries
};

MugVars mug_enhance(Tape& t, Tape::Var frames, Tape::Var tokens, double tau, bool normalize);

struct AcgVars {
  Tape::Var s_v;       // N_f x 1
  Tape::Var s_t;       // N_f x 1
  Tape::Var enhanced;  // N_f x d
};

AcgVars acg_enhance(Tape& t, Tape::Var frames, Tape::Var captions, Tape::Var text_cls,
                    double lambda, bool normalize);

// --- plain wrappers ----------------------------------------------------------

MugWeights mug_frame_weights(const FrameFeatures& v, const TokenFeatures& t, double tau,
                             bool normalize = true);
EnhancedPair mug_enhance(const FrameFeatures& v, const TokenFeatures& t, double tau,
                         bool normalize = true);

struct AcgWeights {
  std::vector<double> s_v;  // frame-caption simplex
  std::vector<double> s_t;  // caption-text simplex
};

AcgWeights acg_weights(const CaptionFeatures& c, const FrameFeatures& v,
                       std::span<const double> t_cls, double lambda, bool normalize = true);
FrameFeatures acg_enhance(const FrameFeatures& v, const CaptionFeatures& c,
                          std::span<const double> t_cls, double lambda, bool normalize = true);

}  // namespace vtr
