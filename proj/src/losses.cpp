#include "vtr/losses.hpp"

namespace vtr {

Tape::Var contrastive_columns(Tape& t, Tape::Var logits) {
  const Matrix& l = t.val(logits);
  if (l.rows() != l.cols() || l.rows() < 1)
    throw std::domain_error("contrastive loss needs a square nonempty logit matrix, got " +
                            l.shape_str());
  const Tape::Var cols = t.transpose(logits);  // anchor per row now
  return t.sum_all(t.sub(t.row_logsumexp(cols), t.diag(cols)));
}

namespace {

Tape::Var scaled_logits(Tape& t, Tape::Var video, Tape::Var text, double scale, bool normalize) {
  const Tape::Var v = normalize ? t.l2_normalize_rows(video) : video;
  const Tape::Var w = normalize ? t.l2_normalize_rows(text) : text;
  return t.scale(t.matmul(v, t.transpose(w)), scale);  // rows: videos, cols: texts
}

Tape::Var directional_pair(Tape& t, Tape::Var logits, bool symmetric) {
  const Tape::Var base = contrastive_columns(t, logits);
  if (!symmetric) return base;
  const Tape::Var other = contrastive_columns(t, t.transpose(logits));
  return t.scale(t.add(base, other), 0.5);
}

}  // namespace

Tape::Var vtc_loss(Tape& t, Tape::Var video, Tape::Var text, double scale, bool symmetric,
                   bool normalize) {
  if (scale <= 0.0) throw std::domain_error("vtc_loss: scale must be positive");
  const Matrix& v = t.val(video);
  const Matrix& w = t.val(text);
  if (v.rows() < 1) throw std::domain_error("vtc_loss: empty batch");
  if (v.rows() != w.rows() || v.cols() != w.cols())
    throw ShapeError("vtc_loss shape mismatch: " + v.shape_str() + " vs " + w.shape_str());
  return directional_pair(t, scaled_logits(t, video, text, scale, normalize), symmetric);
}

double vtc_loss(const Matrix& video, const Matrix& text, double scale, bool symmetric,
                bool normalize) {
  Tape t;
  return t.val(vtc_loss(t, t.leaf(video), t.leaf(text), scale, symmetric, normalize))(0, 0);
}

double vtc_loss_from_logits(const Matrix& logits, bool symmetric) {
  Tape t;
  return t.val(directional_pair(t, t.leaf(logits), symmetric))(0, 0);
}

Tape::Var fcc_loss(Tape& t, const std::vector<Tape::Var>& frames,
                   const std::vector<Tape::Var>& captions, double scale, bool normalize) {
  if (frames.empty()) throw std::domain_error("fcc_loss: empty batch");
  if (frames.size() != captions.size())
    throw ShapeError("fcc_loss: batch sizes differ");
  const int n_frames = t.val(frames[0]).rows();
  if (n_frames < 1) throw std::domain_error("fcc_loss: zero frames");
  const int b = static_cast<int>(frames.size());

  std::vector<Tape::Var> v_norm, c_norm;
  v_norm.reserve(b);
  c_norm.reserve(b);
  for (int e = 0; e < b; ++e) {
    const Matrix& fv = t.val(frames[e]);
    const Matrix& cv = t.val(captions[e]);
    if (fv.rows() != n_frames || cv.rows() != n_frames || fv.cols() != cv.cols())
      throw ShapeError("fcc_loss: item " + std::to_string(e) + " shapes " + fv.shape_str() +
                       " vs " + cv.shape_str());
    v_norm.push_back(normalize ? t.l2_normalize_rows(frames[e]) : frames[e]);
    c_norm.push_back(normalize ? t.l2_normalize_rows(captions[e]) : captions[e]);
  }

  Tape::Var total{};
  for (int i = 0; i < n_frames; ++i) {
    // B x d stacks of frame i across the batch, likewise for captions
    std::vector<Tape::Var> vi, ci;
    vi.reserve(b);
    ci.reserve(b);
    for (int e = 0; e < b; ++e) {
      vi.push_back(t.gather_rows(v_norm[e], {i}));
      ci.push_back(t.gather_rows(c_norm[e], {i}));
    }
    const Tape::Var logits =
        t.scale(t.matmul(t.concat_rows(vi), t.transpose(t.concat_rows(ci))), scale);
    const Tape::Var term = contrastive_columns(t, logits);
    total = total.valid() ? t.add(total, term) : term;
  }
  return t.scale(total, 1.0 / static_cast<double>(n_frames));
}

double fcc_loss(const std::vector<Matrix>& frames, const std::vector<Matrix>& captions,
                double scale, bool normalize) {
  Tape t;
  std::vector<Tape::Var> fv, cv;
  for (const Matrix& m : frames) fv.push_back(t.leaf(m));
  for (const Matrix& m : captions) cv.push_back(t.leaf(m));
  return t.val(fcc_loss(t, fv, cv, scale, normalize))(0, 0);
}

}  // namespace vtr
