#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "vtr/pipeline.hpp"

namespace vtr {

// Run configuration: plain-text key-value file merged with CLI flags (flags
// win). The fully resolved config is echoed into every output artifact. The
// training defaults mirror the published recipe at desk scale.
struct RunConfig {
  // model geometry
  int dim = 16;
  int n_patches = 4;
  int encoder_layers = 8;
  int stan_layers = 4;
  int frames_train = 8;
  int frames_eval = 12;
  int tokens_train = 64;
  int tokens_eval = 77;

  // enhancement / objectives
  double tau = 100.0;
  double lambda = 10.0;
  double logit_scale = 100.0;
  double dsl_beta = 100.0;
  bool normalize = true;
  bool symmetric_vtc = false;
  bool batch_mean = false;
  std::string ablate;  // comma list of: stan, mug, acg, fcc

  // training
  double learning_rate = 2e-6;
  double weight_decay = 0.05;
  int epochs = 2;
  int batch_size = 32;
  bool cosine_schedule = true;
  std::uint64_t seed = 42;
  std::uint64_t world_seed = 7777;

  // pipeline
  double top_fraction = 1.0;
  int n_key = 8;
  double cutoff_percentile = 20.0;
  int long_band_min = 40;
  int long_band_max = 160;
  int short_word_max = 15;
  double degenerate_repetition_threshold = 0.5;
  double max_flagged_fraction = 1.0;

  int threads = 1;

  void validate() const;
  nlohmann::ordered_json to_json() const;  // sorted keys, deterministic
  PipelineConfig pipeline_config(const std::string& frames_base_dir) const;
};

struct AblationFlags {
  bool stan = false;
  bool mug = false;
  bool acg = false;
  bool fcc = false;
};

AblationFlags parse_ablate(const std::string& csv);

// `key = value` lines, '#' comments; unknown keys are errors.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// Apply one key=value override (the CLI's --set and flag plumbing).
void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Path from VTR_CONFIG when set, else empty.
std::string default_config_path();

}  // namespace vtr
