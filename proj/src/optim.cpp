#include "vtr/optim.hpp"

#include <cmath>
#include <numbers>

namespace vtr {

void AdamW::step(const std::vector<Matrix*>& params, const std::vector<Matrix>& grads,
                 double lr_factor) {
  if (params.size() != grads.size())
    throw ShapeError("optimizer: parameter/gradient count mismatch");
  if (m_.empty()) {
    for (const Matrix* p : params) {
      m_.emplace_back(p->rows(), p->cols(), 0.0);
      v_.emplace_back(p->rows(), p->cols(), 0.0);
    }
  }
  if (m_.size() != params.size())
    throw ShapeError("optimizer: parameter set changed between steps");

  ++step_;
  const double lr = cfg_.learning_rate * lr_factor;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_));

  for (std::size_t p = 0; p < params.size(); ++p) {
    Matrix& w = *params[p];
    const Matrix& g = grads[p];
    if (!w.same_shape(g))
      throw ShapeError("optimizer: gradient shape " + g.shape_str() + " for parameter " +
                       w.shape_str());
    for (std::size_t i = 0; i < w.size(); ++i) {
      double& m = m_[p].data()[i];
      double& v = v_[p].data()[i];
      const double gi = g.data()[i];
      m = cfg_.beta1 * m + (1.0 - cfg_.beta1) * gi;
      v = cfg_.beta2 * v + (1.0 - cfg_.beta2) * gi * gi;
      const double m_hat = m / bc1;
      const double v_hat = v / bc2;
      double& wi = w.data()[i];
      wi -= lr * (m_hat / (std::sqrt(v_hat) + cfg_.eps) + cfg_.weight_decay * wi);
    }
  }
}

void AdamW::restore_moments(std::vector<Matrix> m, std::vector<Matrix> v, long step) {
  m_ = std::move(m);
  v_ = std::move(v);
  step_ = step;
}

double cosine_lr_factor(long step, long total_steps) {
  if (total_steps <= 0) return 1.0;
  const double frac = static_cast<double>(step) / static_cast<double>(total_steps);
  return 0.5 * (1.0 + std::cos(std::numbers::pi * std::min(frac, 1.0)));
}

}  // namespace vtr
