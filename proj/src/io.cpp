#include "vtr/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace vtr {

namespace {

constexpr char kMagic[4] = {'M', '2', 'R', 'P'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw std::runtime_error("m2rp: truncated header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_f32_payload(std::ostream& os, const Matrix& m) {
  for (double d : m.data()) {
    const float f = static_cast<float>(d);
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    write_u32(os, bits);
  }
}

void read_f32_payload(std::istream& is, Matrix& m) {
  for (double& d : m.data()) {
    const std::uint32_t bits = read_u32(is);
    float f;
    std::memcpy(&f, &bits, 4);
    d = static_cast<double>(f);
  }
}

}  // namespace

void save_m2rp(const std::string& path, const Matrix& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("m2rp: cannot open for writing: " + path);
  os.write(kMagic, 4);
  write_u32(os, kVersion);
  write_u32(os, static_cast<std::uint32_t>(m.rows()));
  write_u32(os, static_cast<std::uint32_t>(m.cols()));
  write_f32_payload(os, m);
  if (!os) throw std::runtime_error("m2rp: write failed: " + path);
}

Matrix load_m2rp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("m2rp: cannot open: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("m2rp: bad magic in " + path);
  const std::uint32_t version = read_u32(is);
  if (version != kVersion)
    throw std::runtime_error("m2rp: unsupported version " + std::to_string(version));
  const std::uint32_t rows = read_u32(is);
  const std::uint32_t cols = read_u32(is);
  Matrix m(static_cast<int>(rows), static_cast<int>(cols));
  read_f32_payload(is, m);
  if (!is) throw std::runtime_error("m2rp: truncated payload in " + path);
  return m;
}

void M2rpContainer::put(const std::string& name, Matrix m) {
  for (auto& [n, v] : entries_) {
    if (n == name) {
      v = std::move(m);
      return;
    }
  }
  entries_.emplace_back(name, std::move(m));
}

const Matrix& M2rpContainer::get(const std::string& name) const {
  for (const auto& [n, v] : entries_)
    if (n == name) return v;
  throw std::runtime_error("m2rp container: missing entry " + name);
}

bool M2rpContainer::contains(const std::string& name) const {
  for (const auto& [n, v] : entries_)
    if (n == name) return true;
  return false;
}

void M2rpContainer::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("m2rp container: cannot open for writing: " + path);
  os << "M2RPDIR 1\n";
  if (!meta_.empty()) os << "meta " << meta_ << "\n";
  std::uint64_t offset = 0;
  for (const auto& [name, m] : entries_) {
    os << "entry " << name << " " << m.rows() << " " << m.cols() << " " << offset << "\n";
    offset += m.size() * 4;
  }
  os << "data\n";
  for (const auto& [name, m] : entries_) write_f32_payload(os, m);
  if (!os) throw std::runtime_error("m2rp container: write failed: " + path);
}

M2rpContainer M2rpContainer::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("m2rp container: cannot open: " + path);
  std::string line;
  if (!std::getline(is, line) || line != "M2RPDIR 1")
    throw std::runtime_error("m2rp container: bad header in " + path);
  M2rpContainer c;
  struct Entry {
    std::string name;
    int rows, cols;
    std::uint64_t offset;
  };
  std::vector<Entry> manifest;
  while (std::getline(is, line)) {
    if (line == "data") break;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "meta") {
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
      c.meta_ = rest;
    } else if (tag == "entry") {
      Entry e;
      ls >> e.name >> e.rows >> e.cols >> e.offset;
      if (!ls) throw std::runtime_error("m2rp container: malformed manifest line: " + line);
      manifest.push_back(std::move(e));
    } else {
      throw std::runtime_error("m2rp container: unknown manifest tag: " + tag);
    }
  }
  const std::streampos data_start = is.tellg();
  for (const auto& e : manifest) {
    is.seekg(data_start + static_cast<std::streamoff>(e.offset));
    Matrix m(e.rows, e.cols);
    read_f32_payload(is, m);
    if (!is) throw std::runtime_error("m2rp container: truncated payload in " + path);
    c.entries_.emplace_back(e.name, std::move(m));
  }
  return c;
}

}  // namespace vtr
