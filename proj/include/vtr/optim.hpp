#pragma once

#include <vector>

#include "vtr/matrix.hpp"

namespace vtr {

// Adaptive-moment optimizer with decoupled weight decay. Both the moment
// update and the decay are scaled by the step's learning rate, so lr = 0
// leaves parameters bit-identical.
struct AdamWConfig {
  double learning_rate = 2e-6;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.05;
};

class AdamW {
 public:
  explicit AdamW(AdamWConfig cfg) : cfg_(cfg) {}

  // lr_factor multiplies the configured rate (cosine schedule hook).
  void step(const std::vector<Matrix*>& params, const std::vector<Matrix>& grads,
            double lr_factor = 1.0);

  long step_count() const { return step_; }
  const std::vector<Matrix>& first_moments() const { return m_; }
  const std::vector<Matrix>& second_moments() const { return v_; }
  void restore_moments(std::vector<Matrix> m, std::vector<Matrix> v, long step);

 private:
  AdamWConfig cfg_;
  std::vector<Matrix> m_, v_;
  long step_ = 0;
};

// 0.5 * (1 + cos(pi * step / total)): factor 1 at step 0 decaying to ~0.
double cosine_lr_factor(long step, long total_steps);

}  // namespace vtr
