#include "vtr/stan.hpp"

#include <cmath>

namespace vtr {

namespace {

std::string layer_prefix(int k) { return "layer" + std::to_string(k) + "."; }

Matrix random_weight(Rng& rng, int d) {
  Matrix w(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (double& v : w.data()) v = s * rng.normal();
  return w;
}

// LN with caller-owned affine, as one helper on the tape
Tape::Var affine_layer_norm(Tape& t, Tape::Var x, Tape::Var gain, Tape::Var bias) {
  const int n = t.val(x).rows();
  const Tape::Var ln = t.layer_norm_rows(x, kStanLnEps);
  return t.add(t.hadamard(ln, t.repeat_row(gain, n)), t.repeat_row(bias, n));
}

// softmax(Q K^T / sqrt(d)) V, no residual
Tape::Var attention_core(Tape& t, Tape::Var z, Tape::Var wq, Tape::Var wk, Tape::Var wv,
                         int dim) {
  const Tape::Var q = t.matmul(z, wq);
  const Tape::Var k = t.matmul(z, wk);
  const Tape::Var v = t.matmul(z, wv);
  const Tape::Var logits = t.matmul(q, t.transpose(k));
  const Tape::Var attn = t.row_softmax(logits, 1.0 / std::sqrt(static_cast<double>(dim)));
  return t.matmul(attn, v);
}

}  // namespace

std::vector<std::pair<std::string, Matrix*>> StanParams::named_params() {
  std::vector<std::pair<std::string, Matrix*>> out;
  out.emplace_back("spatial_pos", &spatial_pos);
  out.emplace_back("temporal_pos", &temporal_pos);
  for (int k = 1; k <= n_layers; ++k) {
    StanLayerParams& l = layers[k - 1];
    const std::string pre = layer_prefix(k);
    out.emplace_back(pre + "input_proj", &l.input_proj);
    out.emplace_back(pre + "temp_proj", &l.temp_proj);
    out.emplace_back(pre + "t_wq", &l.temporal.wq);
    out.emplace_back(pre + "t_wk", &l.temporal.wk);
    out.emplace_back(pre + "t_wv", &l.temporal.wv);
    out.emplace_back(pre + "t_ln_gain", &l.t_ln_gain);
    out.emplace_back(pre + "t_ln_bias", &l.t_ln_bias);
    out.emplace_back(pre + "s_wq", &l.spatial.wq);
    out.emplace_back(pre + "s_wk", &l.spatial.wk);
    out.emplace_back(pre + "s_wv", &l.spatial.wv);
    out.emplace_back(pre + "s_ln_gain", &l.s_ln_gain);
    out.emplace_back(pre + "s_ln_bias", &l.s_ln_bias);
  }
  out.emplace_back("output_proj", &output_proj);
  return out;
}

std::vector<std::pair<std::string, const Matrix*>> StanParams::named_params() const {
  auto mut = const_cast<StanParams*>(this)->named_params();
  std::vector<std::pair<std::string, const Matrix*>> out;
  out.reserve(mut.size());
  for (auto& [n, m] : mut) out.emplace_back(n, m);
  return out;
}

StanParams init_stan_params(int n_layers, int anchor_layer, int n_frames, int n_patches, int dim,
                            Rng rng, const std::vector<AttentionWeights>* inherit) {
  if (inherit && static_cast<int>(inherit->size()) != n_layers)
    throw ShapeError("init_stan_params: inherited weight count does not match layer count");
  StanParams p;
  p.n_layers = n_layers;
  p.anchor_layer = anchor_layer;
  p.n_frames = n_frames;
  p.n_patches = n_patches;
  p.dim = dim;

  Rng pos_rng = rng.split(0);
  p.spatial_pos = Matrix(n_patches, dim);
  for (double& v : p.spatial_pos.data()) v = 0.02 * pos_rng.normal();
  p.temporal_pos = Matrix(n_frames, dim);
  for (double& v : p.temporal_pos.data()) v = 0.02 * pos_rng.normal();

  for (int k = 1; k <= n_layers; ++k) {
    Rng lr = rng.split(static_cast<std::uint64_t>(k));
    StanLayerParams l;
    l.input_proj = random_weight(lr, dim);
    l.temp_proj = Matrix(dim, dim, 0.0);  // exact zeros: temporal no-op at init
    l.temporal = {random_weight(lr, dim), random_weight(lr, dim), random_weight(lr, dim)};
    l.t_ln_gain = Matrix(1, dim, 1.0);
    l.t_ln_bias = Matrix(1, dim, 0.0);
    if (inherit) {
      l.spatial = (*inherit)[k - 1];
    } else {
      l.spatial = {random_weight(lr, dim), random_weight(lr, dim), random_weight(lr, dim)};
    }
    l.s_ln_gain = Matrix(1, dim, 1.0);
    l.s_ln_bias = Matrix(1, dim, 0.0);
    p.layers.push_back(std::move(l));
  }

  Rng out_rng = rng.split(1000);
  p.output_proj = random_weight(out_rng, dim);
  return p;
}

StanParamVars lift_stan_params(Tape& t, const StanParams& p) {
  StanParamVars v;
  v.spatial_pos = t.leaf(p.spatial_pos);
  v.temporal_pos = t.leaf(p.temporal_pos);
  for (const StanLayerParams& l : p.layers) {
    StanLayerVars lv;
    lv.input_proj = t.leaf(l.input_proj);
    lv.temp_proj = t.leaf(l.temp_proj);
    lv.t_wq = t.leaf(l.temporal.wq);
    lv.t_wk = t.leaf(l.temporal.wk);
    lv.t_wv = t.leaf(l.temporal.wv);
    lv.t_ln_gain = t.leaf(l.t_ln_gain);
    lv.t_ln_bias = t.leaf(l.t_ln_bias);
    lv.s_wq = t.leaf(l.spatial.wq);
    lv.s_wk = t.leaf(l.spatial.wk);
    lv.s_wv = t.leaf(l.spatial.wv);
    lv.s_ln_gain = t.leaf(l.s_ln_gain);
    lv.s_ln_bias = t.leaf(l.s_ln_bias);
    v.layers.push_back(lv);
  }
  v.output_proj = t.leaf(p.output_proj);
  return v;
}

std::vector<Tape::Var> stan_param_vars_flat(const StanParamVars& v, int n_layers) {
  std::vector<Tape::Var> out{v.spatial_pos, v.temporal_pos};
  for (int k = 0; k < n_layers; ++k) {
    const StanLayerVars& l = v.layers[k];
    for (Tape::Var p : {l.input_proj, l.temp_proj, l.t_wq, l.t_wk, l.t_wv, l.t_ln_gain,
                        l.t_ln_bias, l.s_wq, l.s_wk, l.s_wv, l.s_ln_gain, l.s_ln_bias})
      out.push_back(p);
  }
  out.push_back(v.output_proj);
  return out;
}

StanStateVars build_first_input(Tape& t, Tape::Var grid_tokens, const PatchGrid& shape,
                                const StanParamVars& pv) {
  const int nf = shape.n_frames;
  const int np = shape.n_patches;
  if (t.val(pv.spatial_pos).rows() != np || t.val(pv.temporal_pos).rows() != nf)
    throw ShapeError("build_first_input: position embeddings do not match grid shape");

  std::vector<int> cls_rows, patch_rows, t_idx, s_idx;
  for (int i = 0; i < nf; ++i) {
    cls_rows.push_back(shape.cls_row(i));
    for (int j = 0; j < np; ++j) {
      patch_rows.push_back(shape.patch_row(i, j));
      t_idx.push_back(i);
      s_idx.push_back(j);
    }
  }

  StanStateVars out;
  out.n_frames = nf;
  out.n_patches = np;
  out.video_cls = t.mean_rows(t.gather_rows(grid_tokens, cls_rows));
  const Tape::Var pos =
      t.add(t.gather_rows(pv.temporal_pos, t_idx), t.gather_rows(pv.spatial_pos, s_idx));
  out.patches = t.add(t.gather_rows(grid_tokens, patch_rows), pos);
  return out;
}

Tape::Var temporal_attention(Tape& t, Tape::Var tokens, const StanLayerVars& layer, int dim) {
  const Tape::Var ln = affine_layer_norm(t, tokens, layer.t_ln_gain, layer.t_ln_bias);
  const Tape::Var sa =
      t.add(attention_core(t, ln, layer.t_wq, layer.t_wk, layer.t_wv, dim), ln);
  return t.matmul(sa, layer.temp_proj);
}

Tape::Var spatial_attention(Tape& t, Tape::Var frame_tokens, const StanLayerVars& layer,
                            int dim) {
  const Tape::Var ln = affine_layer_norm(t, frame_tokens, layer.s_ln_gain, layer.s_ln_bias);
  return t.add(attention_core(t, ln, layer.s_wq, layer.s_wk, layer.s_wv, dim), frame_tokens);
}

StanStateVars stan_sublayers(Tape& t, const StanStateVars& state, const StanLayerVars& layer,
                             int dim) {
  const int nf = state.n_frames;
  const int np = state.n_patches;

  // temporal attention across frames, independently at each spatial position
  std::vector<Tape::Var> by_position;
  by_position.reserve(np);
  for (int j = 0; j < np; ++j) {
    std::vector<int> idx;
    idx.reserve(nf);
    for (int i = 0; i < nf; ++i) idx.push_back(i * np + j);
    const Tape::Var y = t.gather_rows(state.patches, idx);
    by_position.push_back(t.add(y, temporal_attention(t, y, layer, dim)));
  }
  // back to frame-major row order
  std::vector<int> perm(static_cast<std::size_t>(nf) * np);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < np; ++j) perm[static_cast<std::size_t>(i) * np + j] = j * nf + i;
  const Tape::Var after_temporal = t.gather_rows(t.concat_rows(by_position), perm);

  // spatial attention per frame, video CLS prepended to every frame's tokens
  std::vector<Tape::Var> cls_updates, frame_blocks;
  cls_updates.reserve(nf);
  frame_blocks.reserve(nf);
  for (int i = 0; i < nf; ++i) {
    std::vector<int> rows;
    rows.reserve(np);
    for (int j = 0; j < np; ++j) rows.push_back(i * np + j);
    const Tape::Var x =
        t.concat_rows({state.video_cls, t.gather_rows(after_temporal, rows)});
    const Tape::Var xo = spatial_attention(t, x, layer, dim);
    cls_updates.push_back(t.gather_rows(xo, {0}));
    std::vector<int> rest(np);
    for (int j = 0; j < np; ++j) rest[j] = j + 1;
    frame_blocks.push_back(t.gather_rows(xo, rest));
  }

  StanStateVars out;
  out.n_frames = nf;
  out.n_patches = np;
  out.video_cls = t.mean_rows(t.concat_rows(cls_updates));
  out.patches = t.concat_rows(frame_blocks);
  return out;
}

StanStateVars stan_layer_forward(Tape& t, const StanStateVars& prev, Tape::Var grid_tokens,
                                 const PatchGrid& shape, const StanParamVars& pv, int k) {
  if (k < 1 || k > static_cast<int>(pv.layers.size()))
    throw ShapeError("stan_layer_forward: layer index out of range");
  const StanLayerVars& layer = pv.layers[k - 1];
  StanStateVars fused = prev;
  if (k > 1) {
    // cross-layer fusion with the next encoder grid
    const int nf = shape.n_frames;
    const int np = shape.n_patches;
    std::vector<int> cls_rows, patch_rows;
    for (int i = 0; i < nf; ++i) {
      cls_rows.push_back(shape.cls_row(i));
      for (int j = 0; j < np; ++j) patch_rows.push_back(shape.patch_row(i, j));
    }
    const Tape::Var enc_cls_mean = t.mean_rows(t.gather_rows(grid_tokens, cls_rows));
    fused.video_cls = t.add(prev.video_cls, t.matmul(enc_cls_mean, layer.input_proj));
    fused.patches =
        t.add(prev.patches, t.matmul(t.gather_rows(grid_tokens, patch_rows), layer.input_proj));
  }
  return stan_sublayers(t, fused, layer, shape.dim);
}

Tape::Var fuse_outputs(Tape& t, Tape::Var final_grid_tokens, const PatchGrid& shape,
                       const StanStateVars& state, const StanParamVars& pv) {
  const int nf = shape.n_frames;
  const int np = shape.n_patches;
  std::vector<int> cls_rows;
  for (int i = 0; i < nf; ++i) cls_rows.push_back(shape.cls_row(i));
  const Tape::Var enc_cls = t.gather_rows(final_grid_tokens, cls_rows);  // nf x d

  // per-frame branch summary: mean of the frame's patch tokens plus the
  // video CLS broadcast to every frame
  std::vector<Tape::Var> frame_means;
  frame_means.reserve(nf);
  for (int i = 0; i < nf; ++i) {
    std::vector<int> rows;
    rows.reserve(np);
    for (int j = 0; j < np; ++j) rows.push_back(i * np + j);
    frame_means.push_back(t.mean_rows(t.gather_rows(state.patches, rows)));
  }
  const Tape::Var summary =
      t.add(t.concat_rows(frame_means), t.repeat_row(state.video_cls, nf));
  return t.matmul(t.add(enc_cls, summary), pv.output_proj);
}

Tape::Var stan_forward(Tape& t, const std::vector<Tape::Var>& grid_tokens,
                       const PatchGrid& shape, const StanParamVars& pv, int n_layers) {
  if (static_cast<int>(grid_tokens.size()) != n_layers + 1)
    throw ShapeError("stan_forward: expected " + std::to_string(n_layers + 1) + " grids, got " +
                     std::to_string(grid_tokens.size()));
  StanStateVars state = build_first_input(t, grid_tokens[0], shape, pv);
  state = stan_sublayers(t, state, pv.layers[0], shape.dim);
  for (int k = 2; k <= n_layers; ++k)
    state = stan_layer_forward(t, state, grid_tokens[k - 1], shape, pv, k);
  return fuse_outputs(t, grid_tokens[n_layers], shape, state, pv);
}

// --- plain wrappers ----------------------------------------------------------

namespace {

void check_grid_layer(const PatchGrid& grid, const StanParams& p, int expected_offset) {
  if (grid.encoder_layer >= 0 && p.anchor_layer >= 0 &&
      grid.encoder_layer != p.anchor_layer + expected_offset)
    throw ShapeError("stan: encoder grid layer " + std::to_string(grid.encoder_layer) +
                     " does not match expected layer " +
                     std::to_string(p.anchor_layer + expected_offset));
}

StanState state_from_vars(Tape& t, const StanStateVars& v, int layer_index) {
  StanState s;
  s.video_cls = t.val(v.video_cls).data();
  s.patches = t.val(v.patches);
  s.layer_index = layer_index;
  s.n_frames = v.n_frames;
  s.n_patches = v.n_patches;
  return s;
}

StanStateVars vars_from_state(Tape& t, const StanState& s) {
  StanStateVars v;
  v.video_cls = t.leaf(Matrix::row_vector(s.video_cls));
  v.patches = t.leaf(s.patches);
  v.n_frames = s.n_frames;
  v.n_patches = s.n_patches;
  return v;
}

}  // namespace

StanState build_first_input(const PatchGrid& grid, const StanParams& p) {
  check_grid_layer(grid, p, 0);
  Tape t;
  const StanParamVars pv = lift_stan_params(t, p);
  const StanStateVars v = build_first_input(t, t.leaf(grid.tokens), grid, pv);
  return state_from_vars(t, v, 1);
}

Matrix temporal_attention(const Matrix& tokens_at_position, const StanParams& p, int k) {
  Tape t;
  const StanParamVars pv = lift_stan_params(t, p);
  return t.val(temporal_attention(t, t.leaf(tokens_at_position), pv.layers.at(k - 1), p.dim));
}

Matrix spatial_attention(const Matrix& frame_tokens, const StanParams& p, int k) {
  Tape t;
  const StanParamVars pv = lift_stan_params(t, p);
  return t.val(spatial_attention(t, t.leaf(frame_tokens), pv.layers.at(k - 1), p.dim));
}

StanState stan_layer_forward(const StanState& prev, const PatchGrid& grid, const StanParams& p,
                             int k) {
  if (k >= 2) check_grid_layer(grid, p, k - 1);
  Tape t;
  const StanParamVars pv = lift_stan_params(t, p);
  const StanStateVars out =
      stan_layer_forward(t, vars_from_state(t, prev), t.leaf(grid.tokens), grid, pv, k);
  return state_from_vars(t, out, k);
}

FrameFeatures fuse_outputs(const PatchGrid& encoder_final, const StanState& stan_final,
                           const StanParams& p) {
  Tape t;
  const StanParamVars pv = lift_stan_params(t, p);
  return t.val(
      fuse_outputs(t, t.leaf(encoder_final.tokens), encoder_final, vars_from_state(t, stan_final), pv));
}

FrameFeatures stan_forward(const std::vector<PatchGrid>& grids, const StanParams& p) {
  Tape t;
  const StanParamVars pv = lift_stan_params(t, p);
  std::vector<Tape::Var> tokens;
  tokens.reserve(grids.size());
  for (const PatchGrid& g : grids) tokens.push_back(t.leaf(g.tokens));
  return t.val(stan_forward(t, tokens, grids.front(), pv, p.n_layers));
}

}  // namespace vtr
