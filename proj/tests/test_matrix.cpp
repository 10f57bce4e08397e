#include <doctest.h>

#include <cmath>

#include "vtr/matrix.hpp"
#include "vtr/rng.hpp"

using namespace vtr;

namespace {

Matrix random_matrix(Rng& rng, int r, int c, double scale = 1.0) {
  Matrix m(r, c);
  for (double& v : m.data()) v = scale * rng.normal();
  return m;
}

}  // namespace

TEST_CASE("matmul basics") {
  CHECK(matmul(Matrix::identity(2), Matrix{{3, 4}, {5, 6}})(0, 1) == 4.0);
  const Matrix p = matmul(Matrix{{1, 2}}, Matrix{{3}, {4}});
  CHECK(p.rows() == 1);
  CHECK(p.cols() == 1);
  CHECK(p(0, 0) == doctest::Approx(11.0));
  CHECK(matmul(Matrix{{0, 0}}, Matrix{{3}, {4}})(0, 0) == 0.0);
  CHECK_THROWS_AS(matmul(Matrix(2, 3), Matrix(2, 3)), ShapeError);
  CHECK_THROWS_WITH(matmul(Matrix(2, 3), Matrix(2, 3)),
                    doctest::Contains("2x3"));
}

TEST_CASE("matmul associativity on random matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 3, 4);
    const Matrix b = random_matrix(rng, 4, 2);
    const Matrix c = random_matrix(rng, 2, 5);
    const Matrix left = matmul(matmul(a, b), c);
    const Matrix right = matmul(a, matmul(b, c));
    for (std::size_t i = 0; i < left.size(); ++i)
      CHECK(std::fabs(left.data()[i] - right.data()[i]) < 1e-9);
  }
}

TEST_CASE("softmax_scaled examples") {
  const std::vector<double> zeros{0, 0, 0};
  for (double s : {0.5, 1.0, 100.0}) {
    const auto out = softmax_scaled(zeros, s);
    for (double v : out) CHECK(v == doctest::Approx(1.0 / 3.0));
  }
  const std::vector<double> x{1, 0};
  const auto out = softmax_scaled(x, 1.0);
  CHECK(out[0] == doctest::Approx(0.731059).epsilon(1e-5));
  CHECK(out[1] == doctest::Approx(0.268941).epsilon(1e-5));

  const std::vector<double> y{0.6, 0.5};
  const auto sharp = softmax_scaled(y, 100.0);
  CHECK(sharp[0] == doctest::Approx(0.999955).epsilon(1e-5));
  CHECK(sharp[1] == doctest::Approx(0.000045).epsilon(1e-2));

  CHECK_THROWS_AS(softmax_scaled(std::vector<double>{}, 1.0), std::domain_error);
}

TEST_CASE("softmax_scaled stability and invariants") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(1, 8);
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform(-100.0, 100.0);
    const double s = rng.uniform(0.1, 100.0);  // |scale*x| up to 1e4
    const auto out = softmax_scaled(x, s);

    double sum = 0.0;
    int argmax_in = 0, argmax_out = 0;
    for (int i = 0; i < n; ++i) {
      CHECK(out[i] > 0.0);
      CHECK(out[i] <= 1.0);
      sum += out[i];
      if (x[i] > x[argmax_in]) argmax_in = i;
      if (out[i] > out[argmax_out]) argmax_out = i;
    }
    CHECK(std::fabs(sum - 1.0) < 1e-9);
    CHECK(argmax_in == argmax_out);

    // shift invariance
    const double c = rng.uniform(-50.0, 50.0);
    std::vector<double> shifted = x;
    for (double& v : shifted) v += c;
    const auto out2 = softmax_scaled(shifted, s);
    for (int i = 0; i < n; ++i) CHECK(std::fabs(out[i] - out2[i]) < 1e-9);
  }
}

TEST_CASE("mean_pool") {
  const auto m = mean_pool(Matrix{{1, 3}, {3, 5}});
  CHECK(m[0] == doctest::Approx(2.0));
  CHECK(m[1] == doctest::Approx(4.0));
  const auto single = mean_pool(Matrix{{7, 8}});
  CHECK(single[0] == 7.0);
  CHECK(single[1] == 8.0);
  const auto sym = mean_pool(Matrix{{1, 1}, {-1, -1}});
  CHECK(sym[0] == 0.0);
  CHECK(sym[1] == 0.0);
  CHECK_THROWS_AS(mean_pool(Matrix(0, 3)), std::domain_error);
}

TEST_CASE("layer_norm") {
  const std::vector<double> constant{5, 5, 5};
  for (double v : layer_norm(constant, 1e-5)) CHECK(v == doctest::Approx(0.0));

  const std::vector<double> pm{1, -1};
  const auto ln = layer_norm(pm, 1e-12);
  CHECK(ln[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ln[1] == doctest::Approx(-1.0).epsilon(1e-9));

  const std::vector<double> x{2, 0};
  const auto out = layer_norm(x, 1e-5);
  CHECK(out[0] == doctest::Approx(0.999995).epsilon(1e-8));
  CHECK(out[1] == doctest::Approx(-0.999995).epsilon(1e-8));

  CHECK_THROWS_AS(layer_norm(std::vector<double>{}, 1e-5), std::domain_error);
  CHECK_THROWS_AS(layer_norm(pm, 0.0), std::domain_error);
}

TEST_CASE("l2_normalize_rows leaves zero rows alone") {
  const Matrix m{{3, 4}, {0, 0}};
  const Matrix n = l2_normalize_rows(m);
  CHECK(n(0, 0) == doctest::Approx(0.6));
  CHECK(n(0, 1) == doctest::Approx(0.8));
  CHECK(n(1, 0) == 0.0);
  CHECK(n(1, 1) == 0.0);
}
