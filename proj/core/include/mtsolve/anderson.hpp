#pragma once

#include <deque>
#include <vector>

#include "mtsolve/tensor.hpp"

namespace mtsolve {

/// Affine weights for the extrapolation step. alpha has one entry per stored
/// history column (m_k + 1), zeta one fewer. alpha is derived from zeta by
///   alpha_0 = zeta_0, alpha_i = zeta_i - zeta_{i-1}, alpha_{m_k} = 1 - zeta_{m_k-1},
/// so the weights sum to one by construction.
struct AlphaSolution {
  Vector alpha;
  Vector zeta;
  double sum_abs_alpha = 0.0;
  bool rank_deficient = false;
  /// Columns of the difference matrix kept by the pivoted QR.
  int rank = 0;
};

/// History of map values g(z_i) and residuals f_i = g(z_i) - z_i for the last
/// m + 1 iterates, oldest first.
class AndersonWindow {
 public:
  /// Relative pivot threshold below which difference columns are dropped.
  static constexpr double kPivotCutoff = 1e-12;

  AndersonWindow(int depth, int dim);

  int depth() const { return depth_; }
  int dim() const { return dim_; }
  /// Number of stored columns, at most depth + 1.
  int size() const { return static_cast<int>(g_.size()); }
  bool empty() const { return g_.empty(); }

  /// Total number of pushes so far (the index of the next entry).
  long pushes() const { return pushes_; }

  const Vector& g(int j) const { return g_[static_cast<std::size_t>(j)]; }
  const Vector& f(int j) const { return f_[static_cast<std::size_t>(j)]; }

  void push(Vector g_val, Vector f_val);

  /// Drops everything but the newest column.
  void keep_newest();
  void clear();

  /// Solves min ||f_k - F_k zeta|| with F_k the residual differences, by QR
  /// with column pivoting, and maps zeta to alpha. Throws InsufficientHistory
  /// with fewer than two columns.
  AlphaSolution solve_alpha() const;

  /// y = mu - G_k zeta, with G_k the differences of the stored map values.
  Vector combine(const AlphaSolution& sol) const;

  /// y = sum_i alpha_i g(z_{k-m_k+i}). Same point as combine(), different
  /// rounding.
  Vector combine_weighted(const AlphaSolution& sol) const;

  /// ||Q_k beta|| where Q_k stacks the stored residuals.
  double objective(const Vector& beta) const;

 private:
  void check_solution(const AlphaSolution& sol) const;

  int depth_;
  int dim_;
  long pushes_ = 0;
  std::deque<Vector> g_;
  std::deque<Vector> f_;
};

/// Accept the extrapolated point iff every entry of y is >= 0 (no slack) and
/// sum |alpha_i| <= kappa.
bool safeguard(const Vector& y, const AlphaSolution& sol, double kappa);

}  // namespace mtsolve
