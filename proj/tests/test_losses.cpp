#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vtr/gradcheck.hpp"
#include "vtr/losses.hpp"
#include "vtr/rng.hpp"

using namespace vtr;

namespace {

const double kTwoLog1pInvE = 2.0 * std::log(1.0 + std::exp(-1.0));  // 0.626523...

Matrix random_matrix(Rng& rng, int r, int c) {
  Matrix m(r, c);
  for (double& v : m.data()) v = rng.normal();
  return m;
}

}  // namespace

TEST_CASE("vtc_loss closed forms") {
  SUBCASE("single pair is exactly zero") {
    Rng rng(1);
    const Matrix v = random_matrix(rng, 1, 8);
    const Matrix t = random_matrix(rng, 1, 8);
    CHECK(vtc_loss(v, t, 100.0) == 0.0);
  }
  SUBCASE("orthonormal matched pairs at scale 1") {
    const Matrix v = Matrix::identity(2);
    const Matrix t = Matrix::identity(2);
    CHECK(vtc_loss(v, t, 1.0) == doctest::Approx(kTwoLog1pInvE).epsilon(1e-9));
    CHECK(vtc_loss(v, t, 1.0) == doctest::Approx(0.626523).epsilon(1e-5));
  }
  SUBCASE("scale 100 drives the loss below 1e-40") {
    const Matrix v = Matrix::identity(2);
    const Matrix t = Matrix::identity(2);
    CHECK(vtc_loss(v, t, 100.0) < 1e-40);
    CHECK(vtc_loss(v, t, 100.0) >= 0.0);
  }
  SUBCASE("empty batch throws") {
    CHECK_THROWS_AS(vtc_loss(Matrix(0, 4), Matrix(0, 4), 1.0), std::domain_error);
  }
  SUBCASE("symmetric flag averages both directions") {
    Rng rng(2);
    const Matrix v = random_matrix(rng, 3, 6);
    const Matrix t = random_matrix(rng, 3, 6);
    const double sym = vtc_loss(v, t, 10.0, true);
    const double want = oracle::vtc_oracle(v, t, 10.0, true, true);
    CHECK(sym == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("vtc_loss is nonnegative and matches the oracle") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int b = rng.uniform_int(1, 6);
    const int d = rng.uniform_int(2, 8);
    const Matrix v = random_matrix(rng, b, d);
    const Matrix t = random_matrix(rng, b, d);
    const double scale = rng.uniform(0.5, 100.0);
    for (bool symmetric : {false, true}) {
      for (bool normalize : {false, true}) {
        const double got = vtc_loss(v, t, scale, symmetric, normalize);
        CHECK(got >= 0.0);
        CHECK(got ==
              doctest::Approx(oracle::vtc_oracle(v, t, scale, symmetric, normalize)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("vtc loss is invariant to shifting an anchor's logit column") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int b = rng.uniform_int(2, 5);
    Matrix logits(b, b);
    for (double& v : logits.data()) v = rng.normal();
    const double base = vtc_loss_from_logits(logits);

    Matrix shifted = logits;
    const int col = rng.uniform_int(0, b - 1);
    const double c = rng.uniform(-5.0, 5.0);
    for (int row = 0; row < b; ++row) shifted(row, col) += c;
    CHECK(vtc_loss_from_logits(shifted) == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("fcc_loss closed forms") {
  SUBCASE("single item is exactly zero") {
    Rng rng(5);
    CHECK(fcc_loss({random_matrix(rng, 4, 6)}, {random_matrix(rng, 4, 6)}) == 0.0);
  }
  SUBCASE("per-frame orthonormal matched pairs") {
    // two items, two frames; every (item, frame) pair has unit matched
    // similarity and zero across the batch
    Matrix f1(2, 4, 0.0), f2(2, 4, 0.0);
    f1(0, 0) = 1.0;  // item 1 frame 0 -> e1
    f1(1, 1) = 1.0;  // item 1 frame 1 -> e2
    f2(0, 2) = 1.0;  // item 2 frame 0 -> e3
    f2(1, 3) = 1.0;  // item 2 frame 1 -> e4
    const double got = fcc_loss({f1, f2}, {f1, f2}, 1.0);
    CHECK(got == doctest::Approx(kTwoLog1pInvE).epsilon(1e-9));
    CHECK(got == doctest::Approx(0.626523).epsilon(1e-5));
  }
  SUBCASE("identical items across the batch give B log B") {
    Rng rng(6);
    const Matrix item = l2_normalize_rows(random_matrix(rng, 3, 5));
    const double got = fcc_loss({item, item}, {item, item}, 1.0);
    CHECK(got == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
    CHECK(got == doctest::Approx(1.386294).epsilon(1e-5));
  }
  SUBCASE("empty batch or zero frames throw") {
    CHECK_THROWS_AS(fcc_loss({}, {}), std::domain_error);
    CHECK_THROWS_AS(fcc_loss({Matrix(0, 4)}, {Matrix(0, 4)}), std::domain_error);
  }
}

TEST_CASE("fcc_loss matches the oracle on random batches") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int b = rng.uniform_int(1, 4);
    const int nf = rng.uniform_int(1, 4);
    const int d = rng.uniform_int(2, 6);
    std::vector<Matrix> frames, captions;
    for (int e = 0; e < b; ++e) {
      frames.push_back(random_matrix(rng, nf, d));
      captions.push_back(random_matrix(rng, nf, d));
    }
    const double scale = rng.uniform(0.5, 20.0);
    const double got = fcc_loss(frames, captions, scale);
    CHECK(got >= 0.0);
    CHECK(got == doctest::Approx(oracle::fcc_oracle(frames, captions, scale, true)).epsilon(1e-9));
  }
}

TEST_CASE("loss gradients match central differences") {
  Rng rng(8);
  const int b = 3, d = 6, nf = 2;

  const double vtc_err = grad_check(
      [&](Tape& t, const std::vector<Tape::Var>& l) {
        return vtc_loss(t, l[0], l[1], 3.0, true, true);
      },
      {random_matrix(rng, b, d), random_matrix(rng, b, d)}, 1e-4);
  CHECK(vtc_err <= 1e-4);

  const double fcc_err = grad_check(
      [&](Tape& t, const std::vector<Tape::Var>& l) {
        return fcc_loss(t, {l[0], l[1], l[2]}, {l[3], l[4], l[5]}, 2.0, true);
      },
      {random_matrix(rng, nf, d), random_matrix(rng, nf, d), random_matrix(rng, nf, d),
       random_matrix(rng, nf, d), random_matrix(rng, nf, d), random_matrix(rng, nf, d)},
      1e-4);
  CHECK(fcc_err <= 1e-4);
}
