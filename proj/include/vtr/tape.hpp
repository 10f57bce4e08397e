#pragma once

#include <vector>

#include "vtr/matrix.hpp"

namespace vtr {

// Reverse-mode gradient tape over a small fixed operator set. Forward values
// are computed eagerly; grad() replays the node list backward and accumulates
// an adjoint of matching shape for every requested leaf. Tapes are
// single-owner and not shared across threads.
class Tape {
 public:
  struct Var {
    int id = -1;
    bool valid() const { return id >= 0; }
  };

  Var leaf(Matrix value);
  const Matrix& val(Var v) const;
  std::size_t node_count() const { return nodes_.size(); }

  // --- primitive operations -------------------------------------------------
  Var matmul(Var a, Var b);
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var hadamard(Var a, Var b);
  Var scale(Var a, double s);
  Var transpose(Var a);
  // softmax(scale * row) applied independently to each row
  Var row_softmax(Var a, double scale);
  // softmax over all entries of a 1xn or nx1 matrix, keeping its shape
  Var vec_softmax(Var a, double scale);
  Var mean_rows(Var a);   // 1 x cols
  Var sum_all(Var a);     // 1 x 1
  Var row_sum(Var a);     // rows x 1
  Var layer_norm_rows(Var a, double eps);
  Var l2_normalize_rows(Var a);
  Var gather_rows(Var a, std::vector<int> idx);
  Var concat_rows(const std::vector<Var>& parts);
  Var repeat_row(Var a, int n);   // 1 x c -> n x c
  Var scale_rows(Var a, Var w);   // row i of a times w(i, 0)
  Var diag(Var a);                // n x 1 diagonal of a square matrix
  Var row_logsumexp(Var a);       // rows x 1

  // Adjoint of `loss` (must be 1x1) for each Var in `wrt`, in order.
  std::vector<Matrix> grad(Var loss, const std::vector<Var>& wrt);

 private:
  enum class Op {
    kLeaf,
    kMatmul,
    kAdd,
    kSub,
    kHadamard,
    kScale,
    kTranspose,
    kRowSoftmax,
    kMeanRows,
    kSumAll,
    kRowSum,
    kLayerNorm,
    kL2NormalizeRows,
    kGatherRows,
    kConcatRows,
    kRepeatRow,
    kScaleRows,
    kDiag,
    kRowLogsumexp,
  };

  struct Node {
    Op op;
    Matrix value;
    std::vector<int> parents;
    std::vector<int> aux_idx;  // gather indices / concat row counts
    double aux = 0.0;          // scale factors, eps
  };

  Var push(Node n);
  const Matrix& pval(const Node& n, int i) const { return nodes_[n.parents[i]].value; }
  void backward_into(const Node& n, const Matrix& g, std::vector<Matrix>& adj) const;

  std::vector<Node> nodes_;
};

}  // namespace vtr
