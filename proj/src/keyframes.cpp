#include "vtr/keyframes.hpp"

#include <algorithm>
#include <cmath>

namespace vtr {

Matrix cosine_distance_matrix(const Matrix& embeddings) {
  const int n = embeddings.rows();
  Matrix d(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dist = 1.0 - cosine_similarity(embeddings.row(i), embeddings.row(j));
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return d;
}

namespace {

double percentile_nearest_rank(std::vector<double> values, double pct) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double rank = pct / 100.0 * static_cast<double>(values.size());
  std::size_t idx = static_cast<std::size_t>(std::ceil(rank));
  if (idx > 0) --idx;
  idx = std::min(idx, values.size() - 1);
  return values[idx];
}

std::vector<double> density_from_distances(const Matrix& d, double cutoff_percentile) {
  const int n = d.rows();
  std::vector<double> rho(n, 0.0);
  if (n < 2) return rho;

  std::vector<double> pairwise;
  pairwise.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairwise.push_back(d(i, j));
  const double dc = std::max(percentile_nearest_rank(pairwise, cutoff_percentile), 1e-12);

  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double r = d(i, j) / dc;
      sum += std::exp(-r * r);
    }
    rho[i] = sum;
  }
  return rho;
}

}  // namespace

std::vector<double> local_density(const Matrix& embeddings, double cutoff_percentile) {
  return density_from_distances(cosine_distance_matrix(embeddings), cutoff_percentile);
}

std::vector<double> separation_distance(const std::vector<double>& rho, const Matrix& d) {
  const int n = static_cast<int>(rho.size());
  std::vector<double> delta(n, 0.0);
  if (n == 0) return delta;

  double diameter = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) diameter = std::max(diameter, d(i, j));

  auto denser = [&](int j, int i) {  // does j count as denser than i
    return rho[j] > rho[i] || (rho[j] == rho[i] && j < i);
  };

  for (int i = 0; i < n; ++i) {
    double best = -1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i || !denser(j, i)) continue;
      if (best < 0.0 || d(i, j) < best) best = d(i, j);
    }
    delta[i] = best < 0.0 ? diameter : best;  // global peak gets the diameter
  }
  return delta;
}

std::vector<std::pair<int, int>> segment_bounds(int total, int segments) {
  std::vector<std::pair<int, int>> out;
  out.reserve(segments);
  for (int s = 0; s < segments; ++s) {
    const int lo = static_cast<int>(static_cast<long long>(s) * total / segments);
    const int hi = static_cast<int>(static_cast<long long>(s + 1) * total / segments);
    out.emplace_back(lo, hi);
  }
  return out;
}

KeyframeSelection tsdpc_extract(const Matrix& embeddings, const TsdpcConfig& cfg) {
  const int total = embeddings.rows();
  if (total < 1) throw std::domain_error("tsdpc_extract: empty frame sequence");
  if (cfg.n_key < 1) throw std::domain_error("tsdpc_extract: n_key must be >= 1");

  const Matrix d = cosine_distance_matrix(embeddings);
  const std::vector<double> rho = density_from_distances(d, cfg.cutoff_percentile);
  const std::vector<double> delta = separation_distance(rho, d);

  std::vector<double> gamma(total);
  for (int i = 0; i < total; ++i) gamma[i] = rho[i] * delta[i];

  KeyframeSelection sel;
  if (total <= cfg.n_key) {
    for (int i = 0; i < total; ++i) {
      sel.indices.push_back(i);
      sel.scores.push_back(gamma[i]);
    }
    return sel;
  }

  for (const auto& [lo, hi] : segment_bounds(total, cfg.n_key)) {
    int best = lo;
    for (int i = lo + 1; i < hi; ++i)
      if (gamma[i] > gamma[best]) best = i;
    sel.indices.push_back(best);
    sel.scores.push_back(gamma[best]);
  }
  return sel;
}

}  // namespace vtr
