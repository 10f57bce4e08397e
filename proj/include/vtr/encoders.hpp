#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vtr/rng.hpp"
#include "vtr/stan.hpp"

namespace vtr {

// Frozen toy encoders. Both sides are deterministic functions of a world
// seed: the text encoder hashes whitespace tokens into unit vectors (with a
// fixed known vocabulary), the visual encoder runs a small stack of frozen
// per-frame attention blocks over linear patch projections. A fixed rotation
// separates the two feature spaces, so nothing aligns until the trainable
// branch learns the mapping.

struct ToyWorldConfig {
  int dim = 16;
  int n_patches = 4;
  int encoder_layers = 6;
  int vocab_size = 96;
  std::uint64_t seed = 7777;
};

class TokenVocab {
 public:
  TokenVocab(int size, int dim, Rng rng);
  int size() const { return static_cast<int>(words_.size()); }
  const std::string& word(int i) const { return words_[i]; }
  std::span<const double> embedding(int i) const { return embeddings_.row(i); }
  std::optional<int> lookup(const std::string& word) const;

  // words ranked by agreement with a direction; the generator and the mock
  // captioner both build text this way
  std::vector<int> top_words(std::span<const double> direction, int count) const;

 private:
  std::vector<std::string> words_;
  Matrix embeddings_;  // unit rows
};

class FrozenTextEncoder {
 public:
  FrozenTextEncoder(const ToyWorldConfig& cfg);

  const TokenVocab& vocab() const { return vocab_; }

  // Unit vector for one token: vocabulary word or hash fallback.
  std::vector<double> token_embedding(const std::string& word) const;

  // Row 0 is the CLS (normalized mean of token vectors), rows 1..n_tokens-1
  // the token vectors in order, zero-padded.
  TokenFeatures encode(const std::string& text, int n_tokens) const;
  std::vector<double> encode_cls(const std::string& text) const;
  CaptionFeatures encode_captions(const std::vector<std::string>& captions) const;

 private:
  ToyWorldConfig cfg_;
  TokenVocab vocab_;
  std::uint64_t hash_salt_;
};

class FrozenVisualEncoder {
 public:
  FrozenVisualEncoder(const ToyWorldConfig& cfg);

  int layer_count() const { return cfg_.encoder_layers; }

  // Grids for encoder layers first_layer..encoder_layers inclusive.
  std::vector<PatchGrid> encode(const Matrix& frame_embeddings, int first_layer) const;

  // Per-branch-layer attention weights to inherit: encoder layers
  // anchor..anchor+n_layers-1.
  std::vector<AttentionWeights> inherit_weights(int anchor, int n_layers) const;

  // The frozen feature-space rotation between text space and frame space.
  const Matrix& rotation() const { return rotation_; }

 private:
  ToyWorldConfig cfg_;
  std::vector<Matrix> patch_proj_;           // n_patches projections, d x d
  std::vector<AttentionWeights> blocks_;     // encoder_layers blocks
  Matrix rotation_;                          // d x d orthonormal
};

struct ToyWorld {
  explicit ToyWorld(const ToyWorldConfig& cfg) : config(cfg), text(cfg), vision(cfg) {}
  ToyWorldConfig config;
  FrozenTextEncoder text;
  FrozenVisualEncoder vision;
};

// Orthonormal matrix from Gram-Schmidt over seeded Gaussian columns.
Matrix random_rotation(int dim, Rng rng);

std::uint64_t fnv1a_hash(std::string_view s);

}  // namespace vtr
