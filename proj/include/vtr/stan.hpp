#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vtr/rng.hpp"
#include "vtr/tape.hpp"

namespace vtr {

// Temporal-modeling branch beside a frozen visual encoder: K decomposed
// spatial-temporal layers over patch tokens, fused back into the encoder's
// final per-frame CLS tokens.
//
// Residual layout (single attention head, pre-norm):
//   temporal sublayer: Y <- Y + temporal_attention(Y), where
//     temporal_attention(Y) = (attn(LN(Y)) + LN(Y)) * W_temp
//     and W_temp is zero at initialization, so the sublayer starts as an
//     exact no-op;
//   spatial sublayer:  X <- spatial_attention(X) = attn(LN(X)) + X.
// The video CLS token joins every frame's spatial attention (prepended) and
// skips temporal attention; its per-frame updates are averaged.

constexpr double kStanLnEps = 1e-5;

// Output of one visual encoder layer: per frame a CLS token (slot 0) plus
// n_patches patch tokens. Row layout: frame * (n_patches + 1) + slot.
struct PatchGrid {
  int n_frames = 0;
  int n_patches = 0;  // excluding the CLS slot
  int dim = 0;
  int encoder_layer = -1;  // -1 when untracked
  Matrix tokens;           // (n_frames * (n_patches + 1)) x dim

  int cls_row(int frame) const { return frame * (n_patches + 1); }
  int patch_row(int frame, int patch) const { return frame * (n_patches + 1) + 1 + patch; }
};

// Branch state between layers: one video CLS plus n_frames * n_patches patch
// tokens (frame-major rows).
struct StanState {
  std::vector<double> video_cls;  // d
  Matrix patches;                 // (n_frames * n_patches) x d
  int layer_index = 1;
  int n_frames = 0;
  int n_patches = 0;
};

struct AttentionWeights {
  Matrix wq, wk, wv;  // d x d each
};

struct StanLayerParams {
  Matrix input_proj;  // d x d cross-layer fusion projection (used from layer 2 on)
  Matrix temp_proj;   // d x d, exactly zero at initialization
  AttentionWeights temporal;
  Matrix t_ln_gain, t_ln_bias;  // 1 x d
  AttentionWeights spatial;     // copied from the shadowed encoder layer at init
  Matrix s_ln_gain, s_ln_bias;  // 1 x d
};

struct StanParams {
  int n_layers = 4;
  int anchor_layer = 0;  // encoder layer feeding the first branch input
  int n_frames = 0;
  int n_patches = 0;
  int dim = 0;
  Matrix spatial_pos;   // n_patches x d
  Matrix temporal_pos;  // n_frames x d
  std::vector<StanLayerParams> layers;
  Matrix output_proj;  // d x d

  // Stable enumeration used by the optimizer and the checkpoint container.
  std::vector<std::pair<std::string, Matrix*>> named_params();
  std::vector<std::pair<std::string, const Matrix*>> named_params() const;
};

// Zero temp_proj, unit LN affines, seeded random attention weights; spatial
// attention weights copied from `inherit` when provided (one entry per
// layer, the encoder layer each branch layer shadows).
StanParams init_stan_params(int n_layers, int anchor_layer, int n_frames, int n_patches, int dim,
                            Rng rng, const std::vector<AttentionWeights>* inherit = nullptr);

// --- tape cores -------------------------------------------------------------

struct StanStateVars {
  Tape::Var video_cls;  // 1 x d
  Tape::Var patches;    // (n_frames * n_patches) x d
  int n_frames = 0;
  int n_patches = 0;
};

struct StanLayerVars {
  Tape::Var input_proj, temp_proj;
  Tape::Var t_wq, t_wk, t_wv, t_ln_gain, t_ln_bias;
  Tape::Var s_wq, s_wk, s_wv, s_ln_gain, s_ln_bias;
};

struct StanParamVars {
  Tape::Var spatial_pos, temporal_pos, output_proj;
  std::vector<StanLayerVars> layers;
};

// Leaves for every parameter matrix, in named_params() order.
StanParamVars lift_stan_params(Tape& t, const StanParams& p);
std::vector<Tape::Var> stan_param_vars_flat(const StanParamVars& v, int n_layers);

StanStateVars build_first_input(Tape& t, Tape::Var grid_tokens, const PatchGrid& shape,
                                const StanParamVars& pv);
Tape::Var temporal_attention(Tape& t, Tape::Var tokens, const StanLayerVars& layer, int dim);
Tape::Var spatial_attention(Tape& t, Tape::Var frame_tokens, const StanLayerVars& layer, int dim);
StanStateVars stan_sublayers(Tape& t, const StanStateVars& state, const StanLayerVars& layer,
                             int dim);
StanStateVars stan_layer_forward(Tape& t, const StanStateVars& prev, Tape::Var grid_tokens,
                                 const PatchGrid& shape, const StanParamVars& pv, int k);
Tape::Var fuse_outputs(Tape& t, Tape::Var final_grid_tokens, const PatchGrid& shape,
                       const StanStateVars& state, const StanParamVars& pv);

// Full branch: grids[0..K-1] feed the K layers, grids[K] is the encoder's
// final layer for output fusion. Returns n_frames x d video features.
Tape::Var stan_forward(Tape& t, const std::vector<Tape::Var>& grid_tokens,
                       const PatchGrid& shape, const StanParamVars& pv, int n_layers);

// --- plain wrappers (frozen parameters, no gradients) -----------------------

StanState build_first_input(const PatchGrid& grid, const StanParams& p);
Matrix temporal_attention(const Matrix& tokens_at_position, const StanParams& p, int k);
Matrix spatial_attention(const Matrix& frame_tokens, const StanParams& p, int k);
StanState stan_layer_forward(const StanState& prev, const PatchGrid& grid, const StanParams& p,
                             int k);
FrameFeatures fuse_outputs(const PatchGrid& encoder_final, const StanState& stan_final,
                           const StanParams& p);
FrameFeatures stan_forward(const std::vector<PatchGrid>& grids, const StanParams& p);

}  // namespace vtr
