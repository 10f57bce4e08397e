#include "vtr/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vtr {

void RunConfig::validate() const {
  if (dim < 2) throw ConfigError("dim must be >= 2");
  if (n_patches < 1) throw ConfigError("n_patches must be >= 1");
  if (stan_layers < 1) throw ConfigError("stan_layers must be >= 1");
  if (encoder_layers < stan_layers + 1)
    throw ConfigError("encoder_layers must exceed stan_layers (branch anchor needs room)");
  if (frames_train < 1 || frames_eval < 1) throw ConfigError("frame counts must be >= 1");
  if (tokens_train < 2 || tokens_eval < 2) throw ConfigError("token counts must be >= 2");
  if (tau <= 0.0 || lambda <= 0.0) throw ConfigError("temperatures must be positive");
  if (logit_scale <= 0.0) throw ConfigError("logit_scale must be positive");
  if (dsl_beta <= 0.0) throw ConfigError("dsl_beta must be positive");
  if (learning_rate <= 0.0) throw ConfigError("learning_rate must be positive");
  if (epochs < 0) throw ConfigError("epochs must be >= 0");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (top_fraction <= 0.0 || top_fraction > 1.0) throw ConfigError("top_fraction must be in (0,1]");
  if (n_key < 1) throw ConfigError("n_key must be >= 1");
  if (long_band_min >= long_band_max) throw ConfigError("long band min must be below max");
  if (short_word_max < 1) throw ConfigError("short_word_max must be >= 1");
  if (degenerate_repetition_threshold <= 0.0 || degenerate_repetition_threshold > 1.0)
    throw ConfigError("degenerate_repetition_threshold must be in (0,1]");
  if (max_flagged_fraction < 0.0 || max_flagged_fraction > 1.0)
    throw ConfigError("max_flagged_fraction must be in [0,1]");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  parse_ablate(ablate);  // validates token names
}

nlohmann::ordered_json RunConfig::to_json() const {
  // alphabetical keys keep the provenance echo byte-stable
  nlohmann::ordered_json j;
  j["ablate"] = ablate;
  j["batch_mean"] = batch_mean;
  j["batch_size"] = batch_size;
  j["cosine_schedule"] = cosine_schedule;
  j["cutoff_percentile"] = cutoff_percentile;
  j["degenerate_repetition_threshold"] = degenerate_repetition_threshold;
  j["dim"] = dim;
  j["dsl_beta"] = dsl_beta;
  j["encoder_layers"] = encoder_layers;
  j["epochs"] = epochs;
  j["frames_eval"] = frames_eval;
  j["frames_train"] = frames_train;
  j["lambda"] = lambda;
  j["learning_rate"] = learning_rate;
  j["logit_scale"] = logit_scale;
  j["long_band_max"] = long_band_max;
  j["long_band_min"] = long_band_min;
  j["max_flagged_fraction"] = max_flagged_fraction;
  j["n_key"] = n_key;
  j["n_patches"] = n_patches;
  j["normalize"] = normalize;
  j["seed"] = seed;
  j["short_word_max"] = short_word_max;
  j["stan_layers"] = stan_layers;
  j["symmetric_vtc"] = symmetric_vtc;
  j["threads"] = threads;
  j["tokens_eval"] = tokens_eval;
  j["tokens_train"] = tokens_train;
  j["top_fraction"] = top_fraction;
  j["tau"] = tau;
  j["weight_decay"] = weight_decay;
  j["world_seed"] = world_seed;
  return j;
}

PipelineConfig RunConfig::pipeline_config(const std::string& frames_base_dir) const {
  PipelineConfig p;
  p.top_fraction = top_fraction;
  p.long_band_min = long_band_min;
  p.long_band_max = long_band_max;
  p.short_word_max = short_word_max;
  p.degenerate_repetition_threshold = degenerate_repetition_threshold;
  p.n_key = n_key;
  p.cutoff_percentile = cutoff_percentile;
  p.max_flagged_fraction = max_flagged_fraction;
  p.frames_base_dir = frames_base_dir;
  return p;
}

AblationFlags parse_ablate(const std::string& csv) {
  AblationFlags f;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    // trim
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.erase(tok.begin());
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
    if (tok.empty()) continue;
    if (tok == "stan") f.stan = true;
    else if (tok == "mug") f.mug = true;
    else if (tok == "acg") f.acg = true;
    else if (tok == "fcc") f.fcc = true;
    else throw ConfigError("unknown ablation token '" + tok + "' (expected stan, mug, acg, fcc)");
  }
  return f;
}

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean for " + key + ": '" + v + "'");
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + key + ": '" + v + "'");
  }
}

int parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const int i = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const unsigned long long u = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return static_cast<std::uint64_t>(u);
  } catch (const std::exception&) {
    throw ConfigError("invalid unsigned integer for " + key + ": '" + v + "'");
  }
}

}  // namespace

void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "dim") cfg.dim = parse_int(value, key);
  else if (key == "n_patches") cfg.n_patches = parse_int(value, key);
  else if (key == "encoder_layers") cfg.encoder_layers = parse_int(value, key);
  else if (key == "stan_layers") cfg.stan_layers = parse_int(value, key);
  else if (key == "frames_train") cfg.frames_train = parse_int(value, key);
  else if (key == "frames_eval") cfg.frames_eval = parse_int(value, key);
  else if (key == "tokens_train") cfg.tokens_train = parse_int(value, key);
  else if (key == "tokens_eval") cfg.tokens_eval = parse_int(value, key);
  else if (key == "tau") cfg.tau = parse_double(value, key);
  else if (key == "lambda") cfg.lambda = parse_double(value, key);
  else if (key == "logit_scale") cfg.logit_scale = parse_double(value, key);
  else if (key == "dsl_beta") cfg.dsl_beta = parse_double(value, key);
  else if (key == "normalize") cfg.normalize = parse_bool(value, key);
  else if (key == "symmetric_vtc") cfg.symmetric_vtc = parse_bool(value, key);
  else if (key == "batch_mean") cfg.batch_mean = parse_bool(value, key);
  else if (key == "ablate") cfg.ablate = value;
  else if (key == "learning_rate") cfg.learning_rate = parse_double(value, key);
  else if (key == "weight_decay") cfg.weight_decay = parse_double(value, key);
  else if (key == "epochs") cfg.epochs = parse_int(value, key);
  else if (key == "batch_size") cfg.batch_size = parse_int(value, key);
  else if (key == "cosine_schedule") cfg.cosine_schedule = parse_bool(value, key);
  else if (key == "seed") cfg.seed = parse_u64(value, key);
  else if (key == "world_seed") cfg.world_seed = parse_u64(value, key);
  else if (key == "top_fraction") cfg.top_fraction = parse_double(value, key);
  else if (key == "n_key") cfg.n_key = parse_int(value, key);
  else if (key == "cutoff_percentile") cfg.cutoff_percentile = parse_double(value, key);
  else if (key == "long_band_min") cfg.long_band_min = parse_int(value, key);
  else if (key == "long_band_max") cfg.long_band_max = parse_int(value, key);
  else if (key == "short_word_max") cfg.short_word_max = parse_int(value, key);
  else if (key == "degenerate_repetition_threshold")
    cfg.degenerate_repetition_threshold = parse_double(value, key);
  else if (key == "max_flagged_fraction") cfg.max_flagged_fraction = parse_double(value, key);
  else if (key == "threads") cfg.threads = parse_int(value, key);
  else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  std::string line;
  long n = 0;
  while (std::getline(is, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key, eq, value;
    std::istringstream ls(line);
    if (!(ls >> key)) continue;  // blank
    const auto eq_pos = line.find('=');
    if (eq_pos == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(n) + ": expected key = value");
    key = line.substr(0, eq_pos);
    value = line.substr(eq_pos + 1);
    auto trim = [](std::string& s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
    };
    trim(key);
    trim(value);
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(n) + ": empty key");
    apply_config_value(base, key, value);
  }
  return base;
}

std::string default_config_path() {
  const char* env = std::getenv("VTR_CONFIG");
  return env ? std::string(env) : std::string();
}

}  // namespace vtr
