#pragma once

// Synthetic data families shared by tests and the acceptance suite.

#include <vector>

#include "vtr/matrix.hpp"
#include "vtr/rng.hpp"

namespace synth_data {

using vtr::Matrix;
using vtr::Rng;

struct ClusterFamily {
  Matrix embeddings;               // frames in timeline order
  std::vector<int> cluster_of;     // cluster id per frame
  std::vector<int> sizes;
};

// Frames grouped into contiguous clusters around well-separated unit centers
// (pairwise distance >= 1 in cosine terms), with Gaussian jitter sigma.
inline ClusterFamily make_cluster_family(Rng rng, const std::vector<int>& sizes, int dim,
                                         double sigma) {
  const int k = static_cast<int>(sizes.size());
  int total = 0;
  for (int s : sizes) total += s;

  // orthogonal-ish centers: distinct basis vectors keep 1 - cos >= 1
  std::vector<std::vector<double>> centers;
  for (int c = 0; c < k; ++c) {
    std::vector<double> v(dim, 0.0);
    v[c % dim] = (c / dim) % 2 == 0 ? 1.0 : -1.0;
    centers.push_back(v);
  }

  ClusterFamily fam;
  fam.sizes = sizes;
  fam.embeddings = Matrix(total, dim);
  int row = 0;
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < sizes[c]; ++i, ++row) {
      for (int j = 0; j < dim; ++j)
        fam.embeddings(row, j) = centers[c][j] + sigma * rng.normal();
      fam.cluster_of.push_back(c);
    }
  }
  return fam;
}

inline ClusterFamily make_three_cluster_family(Rng rng, int frames_per_cluster = 10,
                                               int dim = 8, double sigma = 0.01) {
  return make_cluster_family(rng, {frames_per_cluster, frames_per_cluster, frames_per_cluster},
                             dim, sigma);
}

}  // namespace synth_data
