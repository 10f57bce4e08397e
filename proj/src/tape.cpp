#include "vtr/tape.hpp"

#include <cmath>

namespace vtr {

Tape::Var Tape::push(Node n) {
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Tape::Var Tape::leaf(Matrix value) {
  return push({Op::kLeaf, std::move(value), {}, {}, 0.0});
}

const Matrix& Tape::val(Var v) const { return nodes_.at(v.id).value; }

Tape::Var Tape::matmul(Var a, Var b) {
  Matrix out = vtr::matmul(val(a), val(b));
  return push({Op::kMatmul, std::move(out), {a.id, b.id}, {}, 0.0});
}

Tape::Var Tape::add(Var a, Var b) {
  return push({Op::kAdd, vtr::add(val(a), val(b)), {a.id, b.id}, {}, 0.0});
}

Tape::Var Tape::sub(Var a, Var b) {
  return push({Op::kSub, vtr::sub(val(a), val(b)), {a.id, b.id}, {}, 0.0});
}

Tape::Var Tape::hadamard(Var a, Var b) {
  const Matrix& x = val(a);
  const Matrix& y = val(b);
  if (!x.same_shape(y))
    throw ShapeError("hadamard shape mismatch: " + x.shape_str() + " vs " + y.shape_str());
  Matrix out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= y.data()[i];
  return push({Op::kHadamard, std::move(out), {a.id, b.id}, {}, 0.0});
}

Tape::Var Tape::scale(Var a, double s) {
  return push({Op::kScale, vtr::scale(val(a), s), {a.id}, {}, s});
}

Tape::Var Tape::transpose(Var a) {
  return push({Op::kTranspose, vtr::transpose(val(a)), {a.id}, {}, 0.0});
}

Tape::Var Tape::row_softmax(Var a, double s) {
  const Matrix& x = val(a);
  Matrix out(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i) {
    auto sm = softmax_scaled(x.row(i), s);
    for (int j = 0; j < x.cols(); ++j) out(i, j) = sm[j];
  }
  return push({Op::kRowSoftmax, std::move(out), {a.id}, {}, s});
}

Tape::Var Tape::vec_softmax(Var a, double s) {
  const Matrix& x = val(a);
  if (x.rows() != 1 && x.cols() != 1)
    throw ShapeError("vec_softmax expects a vector, got " + x.shape_str());
  auto sm = softmax_scaled(std::span<const double>(x.data().data(), x.size()), s);
  Matrix out(x.rows(), x.cols(), std::move(sm));
  // same backward as a single softmax row
  return push({Op::kRowSoftmax, std::move(out), {a.id}, {1}, s});
}

Tape::Var Tape::mean_rows(Var a) {
  auto m = mean_pool(val(a));
  return push({Op::kMeanRows, Matrix::row_vector(m), {a.id}, {}, 0.0});
}

Tape::Var Tape::sum_all(Var a) {
  double s = 0.0;
  for (double v : val(a).data()) s += v;
  return push({Op::kSumAll, Matrix(1, 1, {s}), {a.id}, {}, 0.0});
}

Tape::Var Tape::row_sum(Var a) {
  const Matrix& x = val(a);
  Matrix out(x.rows(), 1);
  for (int i = 0; i < x.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < x.cols(); ++j) s += x(i, j);
    out(i, 0) = s;
  }
  return push({Op::kRowSum, std::move(out), {a.id}, {}, 0.0});
}

Tape::Var Tape::layer_norm_rows(Var a, double eps) {
  const Matrix& x = val(a);
  Matrix out(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i) {
    auto ln = layer_norm(x.row(i), eps);
    for (int j = 0; j < x.cols(); ++j) out(i, j) = ln[j];
  }
  return push({Op::kLayerNorm, std::move(out), {a.id}, {}, eps});
}

Tape::Var Tape::l2_normalize_rows(Var a) {
  return push({Op::kL2NormalizeRows, vtr::l2_normalize_rows(val(a)), {a.id}, {}, 0.0});
}

Tape::Var Tape::gather_rows(Var a, std::vector<int> idx) {
  const Matrix& x = val(a);
  Matrix out(static_cast<int>(idx.size()), x.cols());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < x.cols(); ++j) out(static_cast<int>(i), j) = x(idx[i], j);
  return push({Op::kGatherRows, std::move(out), {a.id}, std::move(idx), 0.0});
}

Tape::Var Tape::concat_rows(const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("concat_rows: no parts");
  int rows = 0;
  const int cols = val(parts[0]).cols();
  std::vector<int> counts;
  std::vector<int> ids;
  for (Var p : parts) {
    const Matrix& m = val(p);
    if (m.cols() != cols) throw ShapeError("concat_rows: column mismatch");
    rows += m.rows();
    counts.push_back(m.rows());
    ids.push_back(p.id);
  }
  Matrix out(rows, cols);
  int r = 0;
  for (Var p : parts) {
    const Matrix& m = val(p);
    for (int i = 0; i < m.rows(); ++i, ++r)
      for (int j = 0; j < cols; ++j) out(r, j) = m(i, j);
  }
  Node n{Op::kConcatRows, std::move(out), std::move(ids), std::move(counts), 0.0};
  return push(std::move(n));
}

Tape::Var Tape::repeat_row(Var a, int n) {
  const Matrix& x = val(a);
  if (x.rows() != 1) throw ShapeError("repeat_row expects 1 row, got " + x.shape_str());
  Matrix out(n, x.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < x.cols(); ++j) out(i, j) = x(0, j);
  return push({Op::kRepeatRow, std::move(out), {a.id}, {}, 0.0});
}

Tape::Var Tape::scale_rows(Var a, Var w) {
  const Matrix& x = val(a);
  const Matrix& s = val(w);
  if (s.cols() != 1 || s.rows() != x.rows())
    throw ShapeError("scale_rows: weight shape " + s.shape_str() + " does not match " +
                     x.shape_str());
  Matrix out = x;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out(i, j) *= s(i, 0);
  return push({Op::kScaleRows, std::move(out), {a.id, w.id}, {}, 0.0});
}

Tape::Var Tape::diag(Var a) {
  const Matrix& x = val(a);
  if (x.rows() != x.cols()) throw ShapeError("diag expects a square matrix, got " + x.shape_str());
  Matrix out(x.rows(), 1);
  for (int i = 0; i < x.rows(); ++i) out(i, 0) = x(i, i);
  return push({Op::kDiag, std::move(out), {a.id}, {}, 0.0});
}

Tape::Var Tape::row_logsumexp(Var a) {
  const Matrix& x = val(a);
  Matrix out(x.rows(), 1);
  for (int i = 0; i < x.rows(); ++i) {
    double hi = x(i, 0);
    for (int j = 0; j < x.cols(); ++j) hi = std::max(hi, x(i, j));
    double s = 0.0;
    for (int j = 0; j < x.cols(); ++j) s += std::exp(x(i, j) - hi);
    out(i, 0) = hi + std::log(s);
  }
  return push({Op::kRowLogsumexp, std::move(out), {a.id}, {}, 0.0});
}

void Tape::backward_into(const Node& n, const Matrix& g, std::vector<Matrix>& adj) const {
  auto accumulate = [&](int parent, const Matrix& delta) {
    Matrix& slot = adj[parent];
    if (slot.rows() == 0) {
      slot = delta;
    } else {
      for (std::size_t i = 0; i < slot.size(); ++i) slot.data()[i] += delta.data()[i];
    }
  };

  switch (n.op) {
    case Op::kLeaf:
      break;
    case Op::kMatmul: {
      const Matrix& a = pval(n, 0);
      const Matrix& b = pval(n, 1);
      accumulate(n.parents[0], vtr::matmul(g, vtr::transpose(b)));
      accumulate(n.parents[1], vtr::matmul(vtr::transpose(a), g));
      break;
    }
    case Op::kAdd:
      accumulate(n.parents[0], g);
      accumulate(n.parents[1], g);
      break;
    case Op::kSub:
      accumulate(n.parents[0], g);
      accumulate(n.parents[1], vtr::scale(g, -1.0));
      break;
    case Op::kHadamard: {
      const Matrix& a = pval(n, 0);
      const Matrix& b = pval(n, 1);
      Matrix ga = g, gb = g;
      for (std::size_t i = 0; i < g.size(); ++i) {
        ga.data()[i] *= b.data()[i];
        gb.data()[i] *= a.data()[i];
      }
      accumulate(n.parents[0], ga);
      accumulate(n.parents[1], gb);
      break;
    }
    case Op::kScale:
      accumulate(n.parents[0], vtr::scale(g, n.aux));
      break;
    case Op::kTranspose:
      accumulate(n.parents[0], vtr::transpose(g));
      break;
    case Op::kRowSoftmax: {
      // treats a vec_softmax node (aux_idx non-empty) as one flattened row
      const Matrix& s = n.value;
      Matrix gx(s.rows(), s.cols());
      if (!n.aux_idx.empty()) {
        double gs = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) gs += g.data()[i] * s.data()[i];
        for (std::size_t i = 0; i < s.size(); ++i)
          gx.data()[i] = n.aux * s.data()[i] * (g.data()[i] - gs);
      } else {
        for (int i = 0; i < s.rows(); ++i) {
          double gs = 0.0;
          for (int j = 0; j < s.cols(); ++j) gs += g(i, j) * s(i, j);
          for (int j = 0; j < s.cols(); ++j) gx(i, j) = n.aux * s(i, j) * (g(i, j) - gs);
        }
      }
      accumulate(n.parents[0], gx);
      break;
    }
    case Op::kMeanRows: {
      const Matrix& a = pval(n, 0);
      Matrix gx(a.rows(), a.cols());
      const double inv = 1.0 / a.rows();
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) gx(i, j) = g(0, j) * inv;
      accumulate(n.parents[0], gx);
      break;
    }
    case Op::kSumAll: {
      const Matrix& a = pval(n, 0);
      accumulate(n.parents[0], Matrix(a.rows(), a.cols(), g(0, 0)));
      break;
    }
    case Op::kRowSum: {
      const Matrix& a = pval(n, 0);
      Matrix gx(a.rows(), a.cols());
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) gx(i, j) = g(i, 0);
      accumulate(n.parents[0], gx);
      break;
    }
    case Op::kLayerNorm: {
      const Matrix& x = pval(n, 0);
      const Matrix& y = n.value;
      Matrix gx(x.rows(), x.cols());
      const int c = x.cols();
      for (int i = 0; i < x.rows(); ++i) {
        double mean = 0.0, var = 0.0;
        for (int j = 0; j < c; ++j) mean += x(i, j);
        mean /= c;
        for (int j = 0; j < c; ++j) var += (x(i, j) - mean) * (x(i, j) - mean);
        var /= c;
        const double inv = 1.0 / std::sqrt(var + n.aux);
        double gmean = 0.0, gy = 0.0;
        for (int j = 0; j < c; ++j) {
          gmean += g(i, j);
          gy += g(i, j) * y(i, j);
        }
        gmean /= c;
        gy /= c;
        for (int j = 0; j < c; ++j) gx(i, j) = inv * (g(i, j) - gmean - y(i, j) * gy);
      }
      accumulate(n.parents[0], gx);
      break;
    }
    case Op::kL2NormalizeRows: {
      const Matrix& x = pval(n, 0);
      const Matrix& y = n.value;
      Matrix gx(x.rows(), x.cols());
      for (int i = 0; i < x.rows(); ++i) {
        const double norm = l2_norm(x.row(i));
        if (norm < 1e-300) {
          for (int j = 0; j < x.cols(); ++j) gx(i, j) = g(i, j);
          continue;
        }
        double gy = 0.0;
        for (int j = 0; j < x.cols(); ++j) gy += g(i, j) * y(i, j);
        for (int j = 0; j < x.cols(); ++j) gx(i, j) = (g(i, j) - gy * y(i, j)) / norm;
      }
      accumulate(n.parents[0], gx);
      break;
    }
    case Op::kGatherRows: {
      const Matrix& a = pval(n, 0);
      Matrix gx(a.rows(), a.cols(), 0.0);
      for (std::size_t i = 0; i < n.aux_idx.size(); ++i)
        for (int j = 0; j < a.cols(); ++j) gx(n.aux_idx[i], j) += g(static_cast<int>(i), j);
      accumulate(n.parents[0], gx);
      break;
    }
    case Op::kConcatRows: {
      int r = 0;
      for (std::size_t p = 0; p < n.parents.size(); ++p) {
        const int count = n.aux_idx[p];
        Matrix gp(count, g.cols());
        for (int i = 0; i < count; ++i, ++r)
          for (int j = 0; j < g.cols(); ++j) gp(i, j) = g(r, j);
        accumulate(n.parents[p], gp);
      }
      break;
    }
    case Op::kRepeatRow: {
      Matrix gx(1, g.cols(), 0.0);
      for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) gx(0, j) += g(i, j);
      accumulate(n.parents[0], gx);
      break;
    }
    case Op::kScaleRows: {
      const Matrix& a = pval(n, 0);
      const Matrix& w = pval(n, 1);
      Matrix ga(a.rows(), a.cols());
      Matrix gw(w.rows(), 1, 0.0);
      for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
          ga(i, j) = g(i, j) * w(i, 0);
          gw(i, 0) += g(i, j) * a(i, j);
        }
      }
      accumulate(n.parents[0], ga);
      accumulate(n.parents[1], gw);
      break;
    }
    case Op::kDiag: {
      const Matrix& a = pval(n, 0);
      Matrix gx(a.rows(), a.cols(), 0.0);
      for (int i = 0; i < a.rows(); ++i) gx(i, i) = g(i, 0);
      accumulate(n.parents[0], gx);
      break;
    }
    case Op::kRowLogsumexp: {
      const Matrix& a = pval(n, 0);
      const Matrix& lse = n.value;
      Matrix gx(a.rows(), a.cols());
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
          gx(i, j) = g(i, 0) * std::exp(a(i, j) - lse(i, 0));
      accumulate(n.parents[0], gx);
      break;
    }
  }
}

std::vector<Matrix> Tape::grad(Var loss, const std::vector<Var>& wrt) {
  const Matrix& lv = val(loss);
  if (lv.rows() != 1 || lv.cols() != 1)
    throw ShapeError("grad: loss must be 1x1, got " + lv.shape_str());
  if (!std::isfinite(lv(0, 0))) throw NumericError("grad: loss is non-finite");

  std::vector<Matrix> adj(nodes_.size());
  adj[loss.id] = Matrix(1, 1, {1.0});
  for (int i = loss.id; i >= 0; --i) {
    if (adj[i].rows() == 0) continue;
    backward_into(nodes_[i], adj[i], adj);
  }

  std::vector<Matrix> out;
  out.reserve(wrt.size());
  for (Var v : wrt) {
    const Matrix& shape = val(v);
    if (adj[v.id].rows() == 0) {
      out.emplace_back(shape.rows(), shape.cols(), 0.0);
    } else {
      if (!adj[v.id].all_finite()) throw NumericError("grad: non-finite adjoint");
      out.push_back(adj[v.id]);
    }
  }
  return out;
}

}  // namespace vtr
