#include "vtr/encoders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vtr {

std::uint64_t fnv1a_hash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Matrix random_rotation(int dim, Rng rng) {
  Matrix m(dim, dim);
  for (double& v : m.data()) v = rng.normal();
  // Gram-Schmidt over columns
  for (int c = 0; c < dim; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      double proj = 0.0;
      for (int r = 0; r < dim; ++r) proj += m(r, c) * m(r, prev);
      for (int r = 0; r < dim; ++r) m(r, c) -= proj * m(r, prev);
    }
    double norm = 0.0;
    for (int r = 0; r < dim; ++r) norm += m(r, c) * m(r, c);
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
      m(c % dim, c) = 1.0;  // degenerate draw; fall back to a basis vector
      norm = 1.0;
    }
    for (int r = 0; r < dim; ++r) m(r, c) /= norm;
  }
  return m;
}

namespace {

std::vector<double> unit_gaussian(Rng rng, int dim) {
  std::vector<double> v = rng.normal_vec(static_cast<std::size_t>(dim));
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm < 1e-12) {
    v.assign(static_cast<std::size_t>(dim), 0.0);
    v[0] = 1.0;
    return v;
  }
  for (double& x : v) x /= norm;
  return v;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

TokenVocab::TokenVocab(int size, int dim, Rng rng) : embeddings_(size, dim) {
  words_.reserve(size);
  for (int i = 0; i < size; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "tok%02d", i);
    words_.emplace_back(buf);
    const auto v = unit_gaussian(rng.split(static_cast<std::uint64_t>(i)), dim);
    for (int j = 0; j < dim; ++j) embeddings_(i, j) = v[j];
  }
}

std::optional<int> TokenVocab::lookup(const std::string& word) const {
  for (int i = 0; i < size(); ++i)
    if (words_[i] == word) return i;
  return std::nullopt;
}

std::vector<int> TokenVocab::top_words(std::span<const double> direction, int count) const {
  std::vector<int> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> score(size());
  for (int i = 0; i < size(); ++i) score[i] = dot(embedding(i), direction);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return a < b;
  });
  order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(count)));
  return order;
}

FrozenTextEncoder::FrozenTextEncoder(const ToyWorldConfig& cfg)
    : cfg_(cfg),
      vocab_(cfg.vocab_size, cfg.dim, Rng(cfg.seed, 1)),
      hash_salt_(Rng(cfg.seed, 2).next_u64()) {}

std::vector<double> FrozenTextEncoder::token_embedding(const std::string& word) const {
  if (const auto idx = vocab_.lookup(word)) {
    const auto e = vocab_.embedding(*idx);
    return {e.begin(), e.end()};
  }
  return unit_gaussian(Rng(hash_salt_ ^ fnv1a_hash(word)), cfg_.dim);
}

TokenFeatures FrozenTextEncoder::encode(const std::string& text, int n_tokens) const {
  const auto words = tokenize(text);
  TokenFeatures out(n_tokens, cfg_.dim, 0.0);
  std::vector<double> mean(static_cast<std::size_t>(cfg_.dim), 0.0);
  const int used = std::min<int>(static_cast<int>(words.size()), n_tokens - 1);
  for (int w = 0; w < static_cast<int>(words.size()); ++w) {
    const auto e = token_embedding(words[w]);
    for (int j = 0; j < cfg_.dim; ++j) mean[j] += e[j];
    if (w < used)
      for (int j = 0; j < cfg_.dim; ++j) out(w + 1, j) = e[j];
  }
  if (!words.empty()) {
    double norm = 0.0;
    for (double v : mean) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 1e-12)
      for (double& v : mean) v /= norm;
  }
  for (int j = 0; j < cfg_.dim; ++j) out(0, j) = mean[j];
  return out;
}

std::vector<double> FrozenTextEncoder::encode_cls(const std::string& text) const {
  const TokenFeatures t = encode(text, 2);
  auto row = t.row(0);
  return {row.begin(), row.end()};
}

CaptionFeatures FrozenTextEncoder::encode_captions(const std::vector<std::string>& captions) const {
  CaptionFeatures out(static_cast<int>(captions.size()), cfg_.dim);
  for (int i = 0; i < out.rows(); ++i) {
    const auto cls = encode_cls(captions[i]);
    for (int j = 0; j < cfg_.dim; ++j) out(i, j) = cls[j];
  }
  return out;
}

FrozenVisualEncoder::FrozenVisualEncoder(const ToyWorldConfig& cfg) : cfg_(cfg) {
  Rng rng(cfg.seed, 3);
  const double s = 1.0 / std::sqrt(static_cast<double>(cfg.dim));
  for (int p = 0; p < cfg.n_patches; ++p) {
    Rng pr = rng.split(static_cast<std::uint64_t>(p));
    Matrix w(cfg.dim, cfg.dim);
    for (double& v : w.data()) v = s * pr.normal();
    patch_proj_.push_back(std::move(w));
  }
  for (int l = 0; l < cfg.encoder_layers; ++l) {
    Rng lr = rng.split(1000 + static_cast<std::uint64_t>(l));
    AttentionWeights w;
    auto mk = [&](Matrix& m) {
      m = Matrix(cfg.dim, cfg.dim);
      for (double& v : m.data()) v = s * lr.normal();
    };
    mk(w.wq);
    mk(w.wk);
    mk(w.wv);
    blocks_.push_back(std::move(w));
  }
  rotation_ = random_rotation(cfg.dim, rng.split(424242));
}

std::vector<PatchGrid> FrozenVisualEncoder::encode(const Matrix& frame_embeddings,
                                                   int first_layer) const {
  if (frame_embeddings.cols() != cfg_.dim)
    throw ShapeError("visual encoder: frame dim " + frame_embeddings.shape_str() +
                     " does not match configured dim " + std::to_string(cfg_.dim));
  if (first_layer < 0 || first_layer > cfg_.encoder_layers)
    throw std::domain_error("visual encoder: first_layer out of range");

  const int nf = frame_embeddings.rows();
  const int np = cfg_.n_patches;
  const int d = cfg_.dim;

  PatchGrid grid;
  grid.n_frames = nf;
  grid.n_patches = np;
  grid.dim = d;
  grid.encoder_layer = 0;
  grid.tokens = Matrix(nf * (np + 1), d);
  for (int i = 0; i < nf; ++i) {
    for (int j = 0; j < d; ++j) grid.tokens(grid.cls_row(i), j) = frame_embeddings(i, j);
    for (int p = 0; p < np; ++p) {
      for (int j = 0; j < d; ++j) {
        double v = 0.0;
        for (int c = 0; c < d; ++c) v += frame_embeddings(i, c) * patch_proj_[p](c, j);
        grid.tokens(grid.patch_row(i, p), j) = v;
      }
    }
  }

  std::vector<PatchGrid> out;
  if (first_layer == 0) out.push_back(grid);

  Tape t;  // frozen forward only; no gradients leave this function
  for (int l = 1; l <= cfg_.encoder_layers; ++l) {
    const AttentionWeights& w = blocks_[l - 1];
    const Tape::Var wq = t.leaf(w.wq);
    const Tape::Var wk = t.leaf(w.wk);
    const Tape::Var wv = t.leaf(w.wv);
    Matrix next = grid.tokens;
    for (int i = 0; i < nf; ++i) {
      std::vector<int> rows;
      rows.reserve(np + 1);
      for (int sl = 0; sl <= np; ++sl) rows.push_back(i * (np + 1) + sl);
      const Tape::Var x = t.gather_rows(t.leaf(grid.tokens), rows);
      const Tape::Var ln = t.layer_norm_rows(x, kStanLnEps);
      const Tape::Var q = t.matmul(ln, wq);
      const Tape::Var k = t.matmul(ln, wk);
      const Tape::Var v = t.matmul(ln, wv);
      const Tape::Var attn =
          t.row_softmax(t.matmul(q, t.transpose(k)), 1.0 / std::sqrt(static_cast<double>(d)));
      const Matrix& block = t.val(t.add(t.matmul(attn, v), x));
      for (int sl = 0; sl <= np; ++sl)
        for (int j = 0; j < d; ++j) next(i * (np + 1) + sl, j) = block(sl, j);
    }
    grid.tokens = std::move(next);
    grid.encoder_layer = l;
    if (l >= first_layer) out.push_back(grid);
  }
  return out;
}

std::vector<AttentionWeights> FrozenVisualEncoder::inherit_weights(int anchor,
                                                                   int n_layers) const {
  std::vector<AttentionWeights> out;
  for (int k = 0; k < n_layers; ++k) {
    const int layer = anchor + k;
    if (layer < 1 || layer > cfg_.encoder_layers)
      throw std::domain_error("visual encoder: no block for layer " + std::to_string(layer));
    out.push_back(blocks_[layer - 1]);
  }
  return out;
}

}  // namespace vtr
