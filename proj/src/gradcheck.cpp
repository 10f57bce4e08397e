#include "vtr/gradcheck.hpp"

#include <cmath>

namespace vtr {

namespace {

double eval_scalar(const std::function<Tape::Var(Tape&, const std::vector<Tape::Var>&)>& f,
                   const std::vector<Matrix>& point) {
  Tape tape;
  std::vector<Tape::Var> leaves;
  leaves.reserve(point.size());
  for (const Matrix& m : point) leaves.push_back(tape.leaf(m));
  const Tape::Var out = f(tape, leaves);
  const Matrix& v = tape.val(out);
  if (v.rows() != 1 || v.cols() != 1) throw ShapeError("grad_check: f must return a scalar");
  const double s = v(0, 0);
  if (!std::isfinite(s)) throw NumericError("grad_check: non-finite function value");
  return s;
}

}  // namespace

double grad_check(const std::function<Tape::Var(Tape&, const std::vector<Tape::Var>&)>& f,
                  const std::vector<Matrix>& point, double h) {
  if (h < 1e-6 || h > 1e-3) throw std::domain_error("grad_check: h must be in [1e-6, 1e-3]");

  Tape tape;
  std::vector<Tape::Var> leaves;
  leaves.reserve(point.size());
  for (const Matrix& m : point) leaves.push_back(tape.leaf(m));
  const Tape::Var out = f(tape, leaves);
  const std::vector<Matrix> analytic = tape.grad(out, leaves);

  double max_rel = 0.0;
  std::vector<Matrix> perturbed = point;
  for (std::size_t p = 0; p < point.size(); ++p) {
    for (std::size_t i = 0; i < point[p].size(); ++i) {
      const double orig = perturbed[p].data()[i];
      perturbed[p].data()[i] = orig + h;
      const double fp = eval_scalar(f, perturbed);
      perturbed[p].data()[i] = orig - h;
      const double fm = eval_scalar(f, perturbed);
      perturbed[p].data()[i] = orig;

      const double numeric = (fp - fm) / (2.0 * h);
      const double a = analytic[p].data()[i];
      const double denom = std::max({1.0, std::fabs(a), std::fabs(numeric)});
      max_rel = std::max(max_rel, std::fabs(a - numeric) / denom);
    }
  }
  return max_rel;
}

}  // namespace vtr
