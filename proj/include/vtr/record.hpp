#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace vtr {

// One corpus entry, stored as the full JSON object so unknown keys survive
// round trips. Corpus files are UTF-8, one record per line; an optional first
// line carries the resolved run configuration for provenance.

class VideoTextRecord {
 public:
  VideoTextRecord() : fields_(nlohmann::ordered_json::object()) {}
  explicit VideoTextRecord(nlohmann::ordered_json fields) : fields_(std::move(fields)) {}

  static VideoTextRecord parse_line(const std::string& line, long line_number);
  std::string to_line() const;

  const nlohmann::ordered_json& fields() const { return fields_; }
  nlohmann::ordered_json& fields() { return fields_; }

  std::string id() const { return fields_.value("video_id", std::string()); }
  std::string raw_text() const { return fields_.value("raw_text", std::string()); }
  std::string frame_ref() const { return fields_.value("frame_ref", std::string()); }

  bool has(const char* key) const { return fields_.contains(key) && !fields_[key].is_null(); }

  std::optional<double> alignment_score() const;
  void set_alignment_score(double s) { fields_["alignment_score"] = s; }

  std::vector<int> keyframe_indices() const;
  void set_keyframe_indices(const std::vector<int>& idx) { fields_["keyframe_indices"] = idx; }

  std::vector<std::string> captions() const;
  void set_captions(const std::vector<std::string>& c) { fields_["captions"] = c; }

  std::optional<std::string> rewritten(const std::string& variant) const;  // "long" | "short"
  void set_rewritten(const std::string& variant, const std::string& text);

  std::string training_text() const { return fields_.value("training_text", std::string()); }

  // stage stamps for idempotence
  bool has_stage(const std::string& stage) const;
  void stamp_stage(const std::string& stage);

  void add_flag(const std::string& flag);
  std::vector<std::string> flags() const;

 private:
  nlohmann::ordered_json fields_;
};

struct RejectionEntry {
  VideoTextRecord record;
  std::string stage;
  std::string reason;
  std::string disposition;  // "dropped" | "flagged"
};

struct Corpus {
  std::optional<nlohmann::ordered_json> header;  // config echo, when present
  std::vector<VideoTextRecord> records;
};

Corpus read_corpus(const std::string& path);
void write_corpus(const std::string& path, const Corpus& corpus);
void write_rejections(const std::string& path, const std::vector<RejectionEntry>& rejections,
                      const std::optional<nlohmann::ordered_json>& header);

nlohmann::ordered_json make_header(const nlohmann::ordered_json& resolved_config);

}  // namespace vtr
