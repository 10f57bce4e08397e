#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vtr/io.hpp"
#include "vtr/rng.hpp"

using namespace vtr;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string read_bytes(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("rng determinism and splitting") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng parent(7);
  Rng c1 = parent.split(1);
  Rng c2 = parent.split(2);
  Rng c1_again = parent.split(1);
  CHECK(c1.next_u64() == c1_again.next_u64());
  CHECK(c1.next_u64() != c2.next_u64());
}

TEST_CASE("rng uniform and normal ranges") {
  Rng rng(5);
  double sum = 0.0, sumsq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  CHECK(sum / n == doctest::Approx(0.0).epsilon(0.05));
  CHECK(sumsq / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("m2rp round trip is bit exact") {
  Matrix m(3, 2, {1.5, -2.25, 0.0, 3.141592653589793, 1e-7, -1e7});
  const std::string p1 = temp_path("vtr_io_a.m2rp");
  const std::string p2 = temp_path("vtr_io_b.m2rp");
  save_m2rp(p1, m);
  const Matrix loaded = load_m2rp(p1);
  CHECK(loaded.rows() == 3);
  CHECK(loaded.cols() == 2);
  save_m2rp(p2, loaded);
  CHECK(read_bytes(p1) == read_bytes(p2));
  // float32 interchange: doubles representable in f32 survive exactly
  CHECK(loaded(0, 0) == 1.5);
  CHECK(loaded(0, 1) == -2.25);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("m2rp rejects garbage") {
  const std::string p = temp_path("vtr_io_bad.m2rp");
  {
    std::ofstream os(p, std::ios::binary);
    os << "not a matrix";
  }
  CHECK_THROWS(load_m2rp(p));
  std::remove(p.c_str());
}

TEST_CASE("m2rp container manifest round trip") {
  M2rpContainer c;
  c.put("layer0.wq", Matrix{{1, 2}, {3, 4}});
  c.put("layer0.wk", Matrix{{5, 6, 7}});
  c.set_meta(R"({"seed":42})");
  const std::string p = temp_path("vtr_io_container.m2rp");
  c.save(p);

  const M2rpContainer loaded = M2rpContainer::load(p);
  CHECK(loaded.entries().size() == 2);
  CHECK(loaded.entries()[0].first == "layer0.wq");
  CHECK(loaded.get("layer0.wk")(0, 2) == 7.0);
  CHECK(loaded.meta() == R"({"seed":42})");

  const std::string p2 = temp_path("vtr_io_container2.m2rp");
  loaded.save(p2);
  CHECK(read_bytes(p) == read_bytes(p2));
  std::remove(p.c_str());
  std::remove(p2.c_str());
}
