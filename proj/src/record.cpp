#include "vtr/record.hpp"

#include <fstream>

#include "vtr/common.hpp"

namespace vtr {

VideoTextRecord VideoTextRecord::parse_line(const std::string& line, long line_number) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw DataQualityError("malformed record at line " + std::to_string(line_number));
  return VideoTextRecord(std::move(j));
}

std::string VideoTextRecord::to_line() const { return fields_.dump(); }

std::optional<double> VideoTextRecord::alignment_score() const {
  if (!has("alignment_score")) return std::nullopt;
  return fields_["alignment_score"].get<double>();
}

std::vector<int> VideoTextRecord::keyframe_indices() const {
  if (!has("keyframe_indices")) return {};
  return fields_["keyframe_indices"].get<std::vector<int>>();
}

std::vector<std::string> VideoTextRecord::captions() const {
  if (!has("captions")) return {};
  return fields_["captions"].get<std::vector<std::string>>();
}

std::optional<std::string> VideoTextRecord::rewritten(const std::string& variant) const {
  const std::string key = "rewritten_" + variant;
  if (!fields_.contains(key) || fields_[key].is_null()) return std::nullopt;
  return fields_[key].get<std::string>();
}

void VideoTextRecord::set_rewritten(const std::string& variant, const std::string& text) {
  fields_["rewritten_" + variant] = text;
}

bool VideoTextRecord::has_stage(const std::string& stage) const {
  if (!fields_.contains("stages") || !fields_["stages"].is_array()) return false;
  for (const auto& s : fields_["stages"])
    if (s.is_string() && s.get<std::string>() == stage) return true;
  return false;
}

void VideoTextRecord::stamp_stage(const std::string& stage) {
  if (has_stage(stage)) return;
  if (!fields_.contains("stages") || !fields_["stages"].is_array())
    fields_["stages"] = nlohmann::ordered_json::array();
  fields_["stages"].push_back(stage);
}

void VideoTextRecord::add_flag(const std::string& flag) {
  if (!fields_.contains("flags") || !fields_["flags"].is_array())
    fields_["flags"] = nlohmann::ordered_json::array();
  for (const auto& f : fields_["flags"])
    if (f.is_string() && f.get<std::string>() == flag) return;
  fields_["flags"].push_back(flag);
}

std::vector<std::string> VideoTextRecord::flags() const {
  if (!fields_.contains("flags") || !fields_["flags"].is_array()) return {};
  return fields_["flags"].get<std::vector<std::string>>();
}

nlohmann::ordered_json make_header(const nlohmann::ordered_json& resolved_config) {
  nlohmann::ordered_json h;
  h["vtr_header"] = nlohmann::ordered_json::object();
  h["vtr_header"]["config"] = resolved_config;
  return h;
}

namespace {

bool is_header(const nlohmann::ordered_json& j) {
  return j.is_object() && j.contains("vtr_header");
}

}  // namespace

Corpus read_corpus(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("corpus: cannot open " + path);
  Corpus c;
  std::string line;
  long line_number = 0;
  while (std::getline(is, line)) {
    ++line_number;
    if (line.empty()) continue;
    if (line_number == 1) {
      nlohmann::ordered_json j = nlohmann::ordered_json::parse(line, nullptr, false);
      if (!j.is_discarded() && is_header(j)) {
        c.header = std::move(j);
        continue;
      }
    }
    c.records.push_back(VideoTextRecord::parse_line(line, line_number));
  }
  return c;
}

void write_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream os(path, std::ios::binary);  // binary: byte-stable newlines
  if (!os) throw std::runtime_error("corpus: cannot open for writing " + path);
  if (corpus.header) os << corpus.header->dump() << "\n";
  for (const VideoTextRecord& r : corpus.records) os << r.to_line() << "\n";
  if (!os) throw std::runtime_error("corpus: write failed " + path);
}

void write_rejections(const std::string& path, const std::vector<RejectionEntry>& rejections,
                      const std::optional<nlohmann::ordered_json>& header) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("rejections: cannot open for writing " + path);
  if (header) os << header->dump() << "\n";
  for (const RejectionEntry& e : rejections) {
    nlohmann::ordered_json j = e.record.fields();
    j["stage"] = e.stage;
    j["reason"] = e.reason;
    j["disposition"] = e.disposition;
    os << j.dump() << "\n";
  }
  if (!os) throw std::runtime_error("rejections: write failed " + path);
}

}  // namespace vtr
