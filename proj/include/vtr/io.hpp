#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vtr/matrix.hpp"

namespace vtr {

// "M2RP" embedding file: 4-byte magic, u32 version=1, u32 rows, u32 cols,
// then rows*cols little-endian float32, row-major. Round-trips bit-exactly
// at float32 precision.
void save_m2rp(const std::string& path, const Matrix& m);
Matrix load_m2rp(const std::string& path);

// Multi-matrix container: a text manifest (one line per entry with name,
// rows, cols, byte offset into the data section) followed by raw float32
// payloads. Used for parameter sets and checkpoints; entry order is
// preserved. The optional meta line carries one JSON object (resolved
// config echo).
class M2rpContainer {
 public:
  void put(const std::string& name, Matrix m);
  const Matrix& get(const std::string& name) const;
  bool contains(const std::string& name) const;
  const std::vector<std::pair<std::string, Matrix>>& entries() const { return entries_; }

  void set_meta(std::string json_line) { meta_ = std::move(json_line); }
  const std::string& meta() const { return meta_; }

  void save(const std::string& path) const;
  static M2rpContainer load(const std::string& path);

 private:
  std::vector<std::pair<std::string, Matrix>> entries_;
  std::string meta_;
};

}  // namespace vtr
