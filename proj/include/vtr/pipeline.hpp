#pragma once

#include <string>
#include <vector>

#include "vtr/clients.hpp"
#include "vtr/record.hpp"

namespace vtr {

// The five-step data curation pipeline over line-delimited corpora, split
// into seven CLI stages: score, filter, keyframes, caption, rewrite,
// postprocess, mix. Stages are pure per-record maps except for the global
// sort in filtering; every stage stamps the records it processed and passes
// already-stamped records through untouched, so re-running a stage on its
// own output is a no-op. Dropped and flagged records both land in the
// rejection log with a machine-readable reason; only drops leave the corpus,
// so |input| = |output| + |dropped| holds per stage.

struct PipelineConfig {
  double top_fraction = 1.0;
  int long_band_min = 40;
  int long_band_max = 160;
  int short_word_max = 15;
  double degenerate_repetition_threshold = 0.5;
  int n_key = 8;
  double cutoff_percentile = 20.0;
  double max_flagged_fraction = 1.0;  // stage exit-code threshold, CLI-owned
  std::string frames_base_dir;        // frame_ref paths resolve against this
};

struct StageResult {
  std::vector<VideoTextRecord> output;
  std::vector<RejectionEntry> rejections;

  std::size_t dropped_count() const;
  std::size_t flagged_count() const;
};

StageResult score_stage(const std::vector<VideoTextRecord>& records, AlignmentScorer& scorer,
                        const PipelineConfig& cfg);
StageResult filter_stage(const std::vector<VideoTextRecord>& records, const PipelineConfig& cfg);
StageResult keyframes_stage(const std::vector<VideoTextRecord>& records,
                            const PipelineConfig& cfg);
StageResult caption_stage(const std::vector<VideoTextRecord>& records, Captioner& captioner,
                          const PipelineConfig& cfg);
StageResult rewrite_stage(const std::vector<VideoTextRecord>& records, Rewriter& rewriter,
                          const PipelineConfig& cfg);
StageResult postprocess_stage(const std::vector<VideoTextRecord>& records,
                              const PipelineConfig& cfg);
StageResult mix_stage(const std::vector<VideoTextRecord>& records, const PipelineConfig& cfg);

// Step-5 text validation for one rewrite variant.
struct PostProcessVerdict {
  bool accepted = false;
  std::string reason;  // empty when accepted
};

PostProcessVerdict post_process(const std::string& text, const std::string& template_name,
                                const PipelineConfig& cfg);

// Resolves a frame_ref against the configured base directory.
std::string resolve_frame_ref(const std::string& frame_ref, const PipelineConfig& cfg);

}  // namespace vtr
