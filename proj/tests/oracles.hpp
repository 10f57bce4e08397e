#pragma once

// Straight-line reference implementations used as independent oracles in
// tests. These deliberately avoid the library's tape/kernel paths: plain
// loops over std::vector only, so they can disagree with the production code
// when it is wrong.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "vtr/matrix.hpp"

namespace oracle {

using vtr::Matrix;

inline double dot_v(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::vector<double> get_row(const Matrix& m, int r) {
  std::vector<double> out(m.cols());
  for (int j = 0; j < m.cols(); ++j) out[j] = m(r, j);
  return out;
}

inline std::vector<double> softmax_v(const std::vector<double>& x, double scale) {
  double hi = -1e300;
  for (double v : x) hi = std::max(hi, scale * v);
  std::vector<double> e(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    e[i] = std::exp(scale * x[i] - hi);
    sum += e[i];
  }
  for (double& v : e) v /= sum;
  return e;
}

inline std::vector<double> normalize_v(const std::vector<double>& x) {
  const double n = std::sqrt(dot_v(x, x));
  if (n < 1e-300) return x;
  std::vector<double> out = x;
  for (double& v : out) v /= n;
  return out;
}

// --- retrieval ---------------------------------------------------------------

// Sort-based recall: stable sort candidates by descending score, lower index
// first on ties, then check the diagonal's position.
inline double recall_sort_oracle(const Matrix& s, int k, bool text_to_video) {
  const int queries = text_to_video ? s.cols() : s.rows();
  const int candidates = text_to_video ? s.rows() : s.cols();
  if (k > candidates) return 100.0;
  int hits = 0;
  for (int q = 0; q < queries; ++q) {
    std::vector<int> order(candidates);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double sa = text_to_video ? s(a, q) : s(q, a);
      const double sb = text_to_video ? s(b, q) : s(q, b);
      if (sa != sb) return sa > sb;
      return a < b;
    });
    for (int r = 0; r < k; ++r) {
      if (order[r] == q) {
        ++hits;
        break;
      }
    }
  }
  return 100.0 * hits / queries;
}

// --- density peaks ------------------------------------------------------------

struct DensityPeaks {
  std::vector<double> rho, delta, gamma;
};

inline DensityPeaks density_peaks_oracle(const Matrix& emb, double cutoff_percentile) {
  const int n = emb.rows();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto a = normalize_v(get_row(emb, i));
      const auto b = normalize_v(get_row(emb, j));
      d[i][j] = 1.0 - dot_v(a, b);
    }
  }
  std::vector<double> pairwise;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairwise.push_back(d[i][j]);
  double dc = 1e-12;
  if (!pairwise.empty()) {
    std::sort(pairwise.begin(), pairwise.end());
    std::size_t idx = static_cast<std::size_t>(
        std::ceil(cutoff_percentile / 100.0 * static_cast<double>(pairwise.size())));
    if (idx > 0) --idx;
    idx = std::min(idx, pairwise.size() - 1);
    dc = std::max(pairwise[idx], 1e-12);
  }

  DensityPeaks out;
  out.rho.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) out.rho[i] += std::exp(-(d[i][j] / dc) * (d[i][j] / dc));

  double diameter = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) diameter = std::max(diameter, d[i][j]);

  out.delta.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double best = -1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const bool denser = out.rho[j] > out.rho[i] || (out.rho[j] == out.rho[i] && j < i);
      if (!denser) continue;
      if (best < 0.0 || d[i][j] < best) best = d[i][j];
    }
    out.delta[i] = best < 0.0 ? diameter : best;
  }

  out.gamma.assign(n, 0.0);
  for (int i = 0; i < n; ++i) out.gamma[i] = out.rho[i] * out.delta[i];
  return out;
}

inline std::vector<int> tsdpc_oracle(const Matrix& emb, int n_key, double cutoff_percentile) {
  const int total = emb.rows();
  std::vector<int> sel;
  const auto dp = density_peaks_oracle(emb, cutoff_percentile);
  if (total <= n_key) {
    sel.resize(total);
    std::iota(sel.begin(), sel.end(), 0);
    return sel;
  }
  for (int s = 0; s < n_key; ++s) {
    const int lo = static_cast<int>(static_cast<long long>(s) * total / n_key);
    const int hi = static_cast<int>(static_cast<long long>(s + 1) * total / n_key);
    int best = lo;
    for (int i = lo + 1; i < hi; ++i)
      if (dp.gamma[i] > dp.gamma[best]) best = i;
    sel.push_back(best);
  }
  return sel;
}

// --- enhancement --------------------------------------------------------------

// Mutual-guided enhancement written as one straight-line pass. Weight
// computations run on L2-normalized rows; the final combinations aggregate
// the raw input rows.
struct MugOracle {
  std::vector<double> frame_weights;  // z_hat
  std::vector<double> token_weights;  // z_hat'
  std::vector<double> video;          // v double-bar
  std::vector<double> text;           // t double-bar
};

inline MugOracle mug_oracle(const Matrix& v_raw, const Matrix& t_raw, double tau,
                            bool normalize) {
  const int nf = v_raw.rows(), nt = t_raw.rows(), d = v_raw.cols();
  std::vector<std::vector<double>> v(nf), t(nt);
  for (int i = 0; i < nf; ++i)
    v[i] = normalize ? normalize_v(get_row(v_raw, i)) : get_row(v_raw, i);
  for (int j = 0; j < nt; ++j)
    t[j] = normalize ? normalize_v(get_row(t_raw, j)) : get_row(t_raw, j);

  MugOracle out;
  // frame -> token attention, then frame weights
  std::vector<double> frame_scores(nf);
  for (int i = 0; i < nf; ++i) {
    std::vector<double> sims(nt);
    for (int j = 0; j < nt; ++j) sims[j] = dot_v(t[j], v[i]);
    const auto z = softmax_v(sims, tau);
    std::vector<double> t_hat(d, 0.0);
    for (int j = 0; j < nt; ++j)
      for (int k = 0; k < d; ++k) t_hat[k] += z[j] * t[j][k];
    frame_scores[i] = dot_v(t_hat, v[i]);
  }
  out.frame_weights = softmax_v(frame_scores, tau);
  out.video.assign(d, 0.0);
  for (int i = 0; i < nf; ++i)
    for (int k = 0; k < d; ++k) out.video[k] += out.frame_weights[i] * v_raw(i, k);

  // mirrored token -> frame path
  std::vector<double> token_scores(nt);
  for (int j = 0; j < nt; ++j) {
    std::vector<double> sims(nf);
    for (int i = 0; i < nf; ++i) sims[i] = dot_v(t[j], v[i]);
    const auto zp = softmax_v(sims, tau);
    std::vector<double> v_hat(d, 0.0);
    for (int i = 0; i < nf; ++i)
      for (int k = 0; k < d; ++k) v_hat[k] += zp[i] * v[i][k];
    token_scores[j] = dot_v(t[j], v_hat);
  }
  out.token_weights = softmax_v(token_scores, tau);
  out.text.assign(d, 0.0);
  for (int j = 0; j < nt; ++j)
    for (int k = 0; k < d; ++k) out.text[k] += out.token_weights[j] * t_raw(j, k);
  return out;
}

struct AcgOracle {
  std::vector<double> s_v, s_t, scalars;
  Matrix enhanced;
};

inline AcgOracle acg_oracle(const Matrix& v_raw, const Matrix& c_raw,
                            const std::vector<double>& t_cls_raw, double lambda,
                            bool normalize) {
  const int nf = v_raw.rows();
  AcgOracle out;
  std::vector<double> fc(nf), tc(nf);
  const auto t_cls = normalize ? normalize_v(t_cls_raw) : t_cls_raw;
  for (int i = 0; i < nf; ++i) {
    auto vi = get_row(v_raw, i);
    auto ci = get_row(c_raw, i);
    if (normalize) {
      vi = normalize_v(vi);
      ci = normalize_v(ci);
    }
    fc[i] = dot_v(ci, vi);
    tc[i] = dot_v(ci, t_cls);
  }
  out.s_v = softmax_v(fc, lambda);
  out.s_t = softmax_v(tc, lambda);
  out.scalars.resize(nf);
  out.enhanced = v_raw;
  for (int i = 0; i < nf; ++i) {
    out.scalars[i] = 0.5 * (out.s_v[i] + out.s_t[i]);
    for (int k = 0; k < v_raw.cols(); ++k) out.enhanced(i, k) = out.scalars[i] * v_raw(i, k);
  }
  return out;
}

// --- losses -------------------------------------------------------------------

// One-directional contrastive loss over a precomputed logit matrix: anchors
// are columns, candidates vary along rows.
inline double contrastive_columns_oracle(const std::vector<std::vector<double>>& logits) {
  const int b = static_cast<int>(logits.size());
  double loss = 0.0;
  for (int col = 0; col < b; ++col) {
    double hi = -1e300;
    for (int row = 0; row < b; ++row) hi = std::max(hi, logits[row][col]);
    double denom = 0.0;
    for (int row = 0; row < b; ++row) denom += std::exp(logits[row][col] - hi);
    loss += -(logits[col][col] - hi - std::log(denom));
  }
  return loss;
}

inline double vtc_oracle(const Matrix& video, const Matrix& text, double scale, bool symmetric,
                         bool normalize) {
  const int b = video.rows();
  std::vector<std::vector<double>> logits(b, std::vector<double>(b));
  for (int e = 0; e < b; ++e) {
    auto ve = get_row(video, e);
    if (normalize) ve = normalize_v(ve);
    for (int a = 0; a < b; ++a) {
      auto ta = get_row(text, a);
      if (normalize) ta = normalize_v(ta);
      logits[e][a] = scale * dot_v(ve, ta);
    }
  }
  double loss = contrastive_columns_oracle(logits);
  if (symmetric) {
    std::vector<std::vector<double>> tr(b, std::vector<double>(b));
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j) tr[i][j] = logits[j][i];
    loss = 0.5 * (loss + contrastive_columns_oracle(tr));
  }
  return loss;
}

inline double fcc_oracle(const std::vector<Matrix>& frames, const std::vector<Matrix>& captions,
                         double scale, bool normalize) {
  const int b = static_cast<int>(frames.size());
  const int nf = frames[0].rows();
  double total = 0.0;
  for (int i = 0; i < nf; ++i) {
    std::vector<std::vector<double>> logits(b, std::vector<double>(b));
    for (int e = 0; e < b; ++e) {
      auto ve = get_row(frames[e], i);
      if (normalize) ve = normalize_v(ve);
      for (int a = 0; a < b; ++a) {
        auto ca = get_row(captions[a], i);
        if (normalize) ca = normalize_v(ca);
        logits[e][a] = scale * dot_v(ve, ca);
      }
    }
    total += contrastive_columns_oracle(logits);
  }
  return total / nf;
}

}  // namespace oracle
