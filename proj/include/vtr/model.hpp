#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vtr/config.hpp"
#include "vtr/encoders.hpp"
#include "vtr/optim.hpp"

namespace vtr {

// The trainable retrieval model: frozen toy encoders feeding a trainable
// temporal branch (the only learnable parameters), with caption-guided and
// mutual-guided enhancement ahead of the contrastive objectives. Ablation
// flags bypass individual pieces; with everything ablated the evaluation
// path reduces exactly to mean-pooled encoder CLS features against the text
// CLS.

struct EncodedItem {
  std::string id;
  std::vector<PatchGrid> grids;  // encoder layers anchor..L
  TokenFeatures tokens;          // n_tokens x d, CLS row 0
  CaptionFeatures captions;      // n_frames x d (rows may be absent)
  bool has_captions = false;
  int n_frames = 0;
};

struct StepLoss {
  double total = 0.0;
  double vtc = 0.0;
  double fcc = 0.0;
};

class Model {
 public:
  Model(const RunConfig& cfg, std::shared_ptr<const ToyWorld> world);

  static std::shared_ptr<const ToyWorld> make_world(const RunConfig& cfg);

  const RunConfig& config() const { return cfg_; }
  const ToyWorld& world() const { return *world_; }
  StanParams& stan_params() { return stan_; }
  const StanParams& stan_params() const { return stan_; }
  int anchor_layer() const { return stan_.anchor_layer; }

  // Frozen encoding of one corpus item.
  EncodedItem encode_item(const Matrix& frame_embeddings, const std::string& text,
                          const std::vector<std::string>& captions, int n_tokens) const;

  // One optimizer step on the batch; throws NumericError naming the term
  // that went non-finite.
  StepLoss train_step(const std::vector<const EncodedItem*>& batch, AdamW& opt,
                      double lr_factor);
  StepLoss batch_loss(const std::vector<const EncodedItem*>& batch) const;

  // Per-frame video features (branch output, or encoder CLS when the branch
  // is ablated).
  FrameFeatures video_frame_features(const EncodedItem& item) const;

  // Full pairwise similarity over items: row = video of item i, column =
  // text of item j. Enhancement is pairwise because both enhancement paths
  // condition on the query text.
  Matrix similarity(const std::vector<EncodedItem>& items) const;

  void save_checkpoint(const std::string& path, const AdamW* opt,
                       const nlohmann::ordered_json& resolved_config) const;
  static Model load_checkpoint(const std::string& path, const RunConfig& cfg,
                               std::shared_ptr<const ToyWorld> world, AdamW* opt_out = nullptr);

 private:
  struct ItemForward {
    Tape::Var frame_features;  // n_frames x d, pre-enhancement
    Tape::Var video;           // 1 x d pooled / enhanced
    Tape::Var text;            // 1 x d
  };
  ItemForward forward_item(Tape& t, const StanParamVars& pv, const EncodedItem& item) const;
  Tape::Var temporal_pos_for(Tape& t, const StanParamVars& pv, int n_frames) const;
  Tape::Var loss_on_tape(Tape& t, const StanParamVars& pv,
                         const std::vector<const EncodedItem*>& batch, Tape::Var* vtc_out,
                         Tape::Var* fcc_out) const;

  RunConfig cfg_;
  AblationFlags ablate_;
  std::shared_ptr<const ToyWorld> world_;
  StanParams stan_;
};

// Uniform frame selection when a record carries more frames than requested
// and no keyframe indices.
std::vector<int> uniform_frame_indices(int total, int wanted);

}  // namespace vtr
