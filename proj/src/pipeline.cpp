#include "vtr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "vtr/eval.hpp"
#include "vtr/io.hpp"
#include "vtr/keyframes.hpp"

namespace vtr {

std::size_t StageResult::dropped_count() const {
  std::size_t n = 0;
  for (const auto& r : rejections)
    if (r.disposition == "dropped") ++n;
  return n;
}

std::size_t StageResult::flagged_count() const {
  std::size_t n = 0;
  for (const auto& r : rejections)
    if (r.disposition == "flagged") ++n;
  return n;
}

std::string resolve_frame_ref(const std::string& frame_ref, const PipelineConfig& cfg) {
  const std::filesystem::path p(frame_ref);
  if (p.is_absolute() || cfg.frames_base_dir.empty()) return frame_ref;
  return (std::filesystem::path(cfg.frames_base_dir) / p).string();
}

namespace {

void drop(StageResult& out, VideoTextRecord record, const std::string& stage,
          const std::string& reason) {
  out.rejections.push_back({std::move(record), stage, reason, "dropped"});
}

void flag(StageResult& out, VideoTextRecord& record, const std::string& stage,
          const std::string& reason) {
  record.add_flag(reason);
  out.rejections.push_back({record, stage, reason, "flagged"});
}

Matrix load_frames_or_throw(const VideoTextRecord& r, const PipelineConfig& cfg) {
  if (r.frame_ref().empty()) throw std::runtime_error("record has no frame_ref");
  return load_m2rp(resolve_frame_ref(r.frame_ref(), cfg));
}

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

StageResult score_stage(const std::vector<VideoTextRecord>& records, AlignmentScorer& scorer,
                        const PipelineConfig& cfg) {
  StageResult out;
  for (VideoTextRecord r : records) {
    if (r.has_stage("score")) {
      out.output.push_back(std::move(r));
      continue;
    }
    Matrix frames;
    try {
      frames = load_frames_or_throw(r, cfg);
    } catch (const std::exception& e) {
      r.add_flag("unreadable_frame_ref");
      drop(out, std::move(r), "score", std::string("unreadable_frame_ref: ") + e.what());
      continue;
    }
    try {
      std::vector<double> per_frame(static_cast<std::size_t>(frames.rows()));
      double mean = 0.0;
      for (int i = 0; i < frames.rows(); ++i) {
        per_frame[static_cast<std::size_t>(i)] = scorer.score_frame(frames.row(i), r.raw_text());
        mean += per_frame[static_cast<std::size_t>(i)];
      }
      mean /= frames.rows();
      r.set_alignment_score(mean);
      r.fields()["quality"] = quality_label_name(quality_classify(per_frame));
      r.stamp_stage("score");
      out.output.push_back(std::move(r));
    } catch (const std::exception& e) {
      r.add_flag("scorer_failed");
      drop(out, std::move(r), "score", std::string("scorer_failed: ") + e.what());
    }
  }
  return out;
}

StageResult filter_stage(const std::vector<VideoTextRecord>& records, const PipelineConfig& cfg) {
  if (cfg.top_fraction <= 0.0 || cfg.top_fraction > 1.0)
    throw std::domain_error("filter: top_fraction must be in (0, 1]");

  StageResult out;
  const bool all_stamped = std::all_of(records.begin(), records.end(),
                                       [](const auto& r) { return r.has_stage("filter"); });
  if (all_stamped) {
    out.output = records;
    return out;
  }
  for (const VideoTextRecord& r : records)
    if (!r.alignment_score())
      throw DataQualityError("filter: record '" + r.id() + "' has no alignment score");

  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = *records[a].alignment_score();
    const double sb = *records[b].alignment_score();
    if (sa != sb) return sa > sb;
    return records[a].id() < records[b].id();
  });

  const std::size_t keep = static_cast<std::size_t>(
      std::ceil(cfg.top_fraction * static_cast<double>(records.size())));
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    VideoTextRecord r = records[order[rank]];
    if (rank < keep) {
      r.stamp_stage("filter");
      out.output.push_back(std::move(r));
    } else {
      drop(out, std::move(r), "filter", "below_cutoff");
    }
  }
  return out;
}

StageResult keyframes_stage(const std::vector<VideoTextRecord>& records,
                            const PipelineConfig& cfg) {
  StageResult out;
  for (VideoTextRecord r : records) {
    if (r.has_stage("keyframes")) {
      out.output.push_back(std::move(r));
      continue;
    }
    Matrix frames;
    try {
      frames = load_frames_or_throw(r, cfg);
    } catch (const std::exception& e) {
      r.add_flag("unreadable_frame_ref");
      drop(out, std::move(r), "keyframes", std::string("unreadable_frame_ref: ") + e.what());
      continue;
    }
    const KeyframeSelection sel =
        tsdpc_extract(frames, {.n_key = cfg.n_key, .cutoff_percentile = cfg.cutoff_percentile});
    r.set_keyframe_indices(sel.indices);
    r.fields()["keyframe_scores"] = sel.scores;
    r.stamp_stage("keyframes");
    out.output.push_back(std::move(r));
  }
  return out;
}

StageResult caption_stage(const std::vector<VideoTextRecord>& records, Captioner& captioner,
                          const PipelineConfig& cfg) {
  StageResult out;
  for (VideoTextRecord r : records) {
    if (r.has_stage("caption")) {
      out.output.push_back(std::move(r));
      continue;
    }
    if (!r.has("keyframe_indices"))
      throw DataQualityError("caption: record '" + r.id() +
                             "' has no keyframe_indices; run the keyframes stage first");
    const std::vector<int> idx = r.keyframe_indices();
    if (idx.empty()) {
      r.set_captions({});
      r.stamp_stage("caption");
      flag(out, r, "caption", "no_keyframes");
      out.output.push_back(std::move(r));
      continue;
    }
    Matrix frames;
    try {
      frames = load_frames_or_throw(r, cfg);
    } catch (const std::exception& e) {
      r.add_flag("unreadable_frame_ref");
      drop(out, std::move(r), "caption", std::string("unreadable_frame_ref: ") + e.what());
      continue;
    }
    try {
      std::vector<std::string> captions;
      captions.reserve(idx.size());
      for (int i : idx) {
        if (i < 0 || i >= frames.rows())
          throw std::runtime_error("keyframe index " + std::to_string(i) + " out of range");
        captions.push_back(captioner.caption(frames.row(i)));
      }
      r.set_captions(captions);
      r.stamp_stage("caption");
      out.output.push_back(std::move(r));
    } catch (const std::exception& e) {
      r.stamp_stage("caption");
      flag(out, r, "caption", std::string("caption_failed: ") + e.what());
      out.output.push_back(std::move(r));
    }
  }
  return out;
}

StageResult rewrite_stage(const std::vector<VideoTextRecord>& records, Rewriter& rewriter,
                          const PipelineConfig& cfg) {
  (void)cfg;
  StageResult out;
  for (VideoTextRecord r : records) {
    if (r.has_stage("rewrite")) {
      out.output.push_back(std::move(r));
      continue;
    }
    const std::vector<std::string> captions = r.captions();
    if (captions.empty()) {
      r.stamp_stage("rewrite");
      flag(out, r, "rewrite", "rewrite_skipped_no_captions");
      out.output.push_back(std::move(r));
      continue;
    }
    try {
      r.set_rewritten("long", rewriter.rewrite(long_template_v1(), r.raw_text(), captions));
      r.set_rewritten("short", rewriter.rewrite(short_template_v1(), r.raw_text(), captions));
      r.fields()["rewrite_templates"] =
          std::vector<std::string>{long_template_v1().version, short_template_v1().version};
      r.stamp_stage("rewrite");
      out.output.push_back(std::move(r));
    } catch (const std::exception& e) {
      r.stamp_stage("rewrite");
      flag(out, r, "rewrite", std::string("rewrite_failed: ") + e.what());
      out.output.push_back(std::move(r));
    }
  }
  return out;
}

PostProcessVerdict post_process(const std::string& text, const std::string& template_name,
                                const PipelineConfig& cfg) {
  const std::vector<std::string> words = split_words(text);
  if (words.empty()) return {false, "empty"};

  const int count = static_cast<int>(words.size());
  if (template_name == "short") {
    if (count > cfg.short_word_max) return {false, "too_long"};
  } else if (template_name == "long") {
    if (count < cfg.long_band_min) return {false, "too_short"};
    if (count > cfg.long_band_max) return {false, "too_long"};
  } else {
    throw std::domain_error("post_process: unknown template '" + template_name + "'");
  }

  std::map<std::string, int> freq;
  int peak = 0;
  for (const std::string& w : words) peak = std::max(peak, ++freq[w]);
  if (static_cast<double>(peak) / count > cfg.degenerate_repetition_threshold)
    return {false, "degenerate"};
  return {true, ""};
}

StageResult postprocess_stage(const std::vector<VideoTextRecord>& records,
                              const PipelineConfig& cfg) {
  StageResult out;
  for (VideoTextRecord r : records) {
    if (r.has_stage("postprocess")) {
      out.output.push_back(std::move(r));
      continue;
    }
    std::vector<std::string> accepted;
    std::vector<std::string> variant_flags;
    for (const std::string variant : {"long", "short"}) {
      const auto text = r.rewritten(variant);
      if (!text) {
        variant_flags.push_back(variant + "_missing");
        continue;
      }
      const PostProcessVerdict v = post_process(*text, variant, cfg);
      if (v.accepted) {
        accepted.push_back(variant);
      } else {
        variant_flags.push_back(variant + "_rejected:" + v.reason);
      }
    }
    r.fields()["accepted_variants"] = accepted;
    r.stamp_stage("postprocess");
    if (accepted.empty()) {
      std::string reason = "no_accepted_rewrite";
      for (const std::string& f : variant_flags) reason += " " + f;
      drop(out, std::move(r), "postprocess", reason);
      continue;
    }
    for (const std::string& f : variant_flags) flag(out, r, "postprocess", f);
    out.output.push_back(std::move(r));
  }
  return out;
}

StageResult mix_stage(const std::vector<VideoTextRecord>& records, const PipelineConfig& cfg) {
  (void)cfg;
  StageResult out;
  std::vector<VideoTextRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.id() < b.id(); });
  std::size_t position = 0;
  for (VideoTextRecord& r : sorted) {
    if (r.has_stage("mix")) {
      out.output.push_back(std::move(r));
      ++position;
      continue;
    }
    const std::string preferred = position % 2 == 0 ? "long" : "short";
    const std::string other = position % 2 == 0 ? "short" : "long";
    ++position;

    std::vector<std::string> accepted;
    if (r.fields().contains("accepted_variants"))
      accepted = r.fields()["accepted_variants"].get<std::vector<std::string>>();
    auto is_accepted = [&](const std::string& v) {
      return std::find(accepted.begin(), accepted.end(), v) != accepted.end() &&
             r.rewritten(v).has_value();
    };

    std::string chosen;
    if (is_accepted(preferred)) {
      chosen = preferred;
    } else if (is_accepted(other)) {
      chosen = other;
      flag(out, r, "mix", "mix_fallback_to_" + other);
    } else {
      drop(out, std::move(r), "mix", "no_accepted_rewrite");
      continue;
    }
    r.fields()["text_variant"] = chosen;
    r.fields()["training_text"] = *r.rewritten(chosen);
    r.stamp_stage("mix");
    out.output.push_back(std::move(r));
  }
  return out;
}

}  // namespace vtr
