#include "vtr/enhance.hpp"

namespace vtr {

namespace {

void check_tau(double tau) {
  if (tau <= 0.0) throw std::domain_error("enhance: temperature must be positive");
}

Tape::Var maybe_normalize(Tape& t, Tape::Var x, bool normalize) {
  return normalize ? t.l2_normalize_rows(x) : x;
}

}  // namespace

MugVars mug_enhance(Tape& t, Tape::Var frames, Tape::Var tokens, double tau, bool normalize) {
  check_tau(tau);
  const Tape::Var v = maybe_normalize(t, frames, normalize);
  const Tape::Var w = maybe_normalize(t, tokens, normalize);

  // frame -> token attention: z(i, j) = softmax_j(tau * t_j . v_i)
  const Tape::Var sims = t.matmul(v, t.transpose(w));  // N_f x N_t
  const Tape::Var z = t.row_softmax(sims, tau);
  const Tape::Var frame_text = t.matmul(z, w);  // N_f x d

  // frame weights from agreement with the frame-specific text summary
  const Tape::Var frame_scores = t.row_sum(t.hadamard(frame_text, v));  // N_f x 1
  const Tape::Var z_hat = t.vec_softmax(frame_scores, tau);

  // mirrored token -> frame path
  const Tape::Var zp = t.row_softmax(t.transpose(sims), tau);   // N_t x N_f over frames
  const Tape::Var token_video = t.matmul(zp, v);                // N_t x d
  const Tape::Var token_scores = t.row_sum(t.hadamard(token_video, w));
  const Tape::Var z_hat_p = t.vec_softmax(token_scores, tau);

  MugVars out;
  out.frame_weights = z_hat;
  out.token_weights = z_hat_p;
  out.frame_text = frame_text;
  out.video = t.matmul(t.transpose(z_hat), frames);   // 1 x d, aggregates raw rows
  out.text = t.matmul(t.transpose(z_hat_p), tokens);  // 1 x d
  return out;
}

AcgVars acg_enhance(Tape& t, Tape::Var frames, Tape::Var captions, Tape::Var text_cls,
                    double lambda, bool normalize) {
  check_tau(lambda);
  if (t.val(frames).rows() != t.val(captions).rows())
    throw ShapeError("acg: caption rows " + t.val(captions).shape_str() +
                     " do not match frame rows " + t.val(frames).shape_str());

  const Tape::Var v = maybe_normalize(t, frames, normalize);
  const Tape::Var c = maybe_normalize(t, captions, normalize);
  const Tape::Var tc = maybe_normalize(t, text_cls, normalize);

  AcgVars out;
  // frame-caption agreement (inter-modal) and caption-text agreement
  // (intra-modal), each softmaxed over frames
  out.s_v = t.vec_softmax(t.row_sum(t.hadamard(c, v)), lambda);
  out.s_t = t.vec_softmax(t.matmul(c, t.transpose(tc)), lambda);

  // per-frame scalar (s_v + s_t) / 2 applied to the raw rows
  const Tape::Var scalars = t.scale(t.add(out.s_v, out.s_t), 0.5);
  out.enhanced = t.scale_rows(frames, scalars);
  return out;
}

MugWeights mug_frame_weights(const FrameFeatures& v, const TokenFeatures& tok, double tau,
                             bool normalize) {
  Tape t;
  const MugVars vars = mug_enhance(t, t.leaf(v), t.leaf(tok), tau, normalize);
  return {t.val(vars.frame_weights).data(), t.val(vars.frame_text)};
}

EnhancedPair mug_enhance(const FrameFeatures& v, const TokenFeatures& tok, double tau,
                         bool normalize) {
  Tape t;
  const MugVars vars = mug_enhance(t, t.leaf(v), t.leaf(tok), tau, normalize);
  return {t.val(vars.video).data(), t.val(vars.text).data()};
}

AcgWeights acg_weights(const CaptionFeatures& c, const FrameFeatures& v,
                       std::span<const double> t_cls, double lambda, bool normalize) {
  Tape t;
  const AcgVars vars =
      acg_enhance(t, t.leaf(v), t.leaf(c), t.leaf(Matrix::row_vector(t_cls)), lambda, normalize);
  return {t.val(vars.s_v).data(), t.val(vars.s_t).data()};
}

FrameFeatures acg_enhance(const FrameFeatures& v, const CaptionFeatures& c,
                          std::span<const double> t_cls, double lambda, bool normalize) {
  Tape t;
  const AcgVars vars =
      acg_enhance(t, t.leaf(v), t.leaf(c), t.leaf(Matrix::row_vector(t_cls)), lambda, normalize);
  return t.val(vars.enhanced);
}

}  // namespace vtr
