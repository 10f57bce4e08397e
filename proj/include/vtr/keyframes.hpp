#pragma once

#include <vector>

#include "vtr/matrix.hpp"

namespace vtr {

// Key-frame selection via density peaks over cosine distances, with the
// timeline split into equal contiguous segments and one peak taken per
// segment. Frame order is the timestamp order (row index).

struct KeyframeSelection {
  std::vector<int> indices;    // strictly increasing frame positions
  std::vector<double> scores;  // gamma = rho * delta for each selected frame
};

struct TsdpcConfig {
  int n_key = 8;
  double cutoff_percentile = 20.0;  // percentile of pairwise distances for d_c
};

// 1 - cos(e_i, e_j) for every pair; zero-norm rows score distance 1 to
// everything except themselves.
Matrix cosine_distance_matrix(const Matrix& embeddings);

// rho_i = sum_{j != i} exp(-(d(i,j)/d_c)^2), d_c the given percentile of all
// pairwise distances. A single frame gets rho = [0].
std::vector<double> local_density(const Matrix& embeddings, double cutoff_percentile);

// delta_i = min distance to any frame of strictly higher density; ties in rho
// treat the lower index as higher. The global density peak gets the set
// diameter.
std::vector<double> separation_distance(const std::vector<double>& rho, const Matrix& distances);

KeyframeSelection tsdpc_extract(const Matrix& embeddings, const TsdpcConfig& cfg = {});

// Equal contiguous timeline segments: segment s covers
// [floor(s*T/n), floor((s+1)*T/n)).
std::vector<std::pair<int, int>> segment_bounds(int total, int segments);

}  // namespace vtr
