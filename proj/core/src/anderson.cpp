#include "mtsolve/anderson.hpp"

#include <string>

#include "mtsolve/errors.hpp"

namespace mtsolve {

AndersonWindow::AndersonWindow(int depth, int dim) : depth_(depth), dim_(dim) {
  if (depth < 1) throw Error("Anderson window depth must be at least 1");
  if (dim < 1) throw Error("Anderson window dimension must be at least 1");
}

void AndersonWindow::push(Vector g_val, Vector f_val) {
  if (g_val.size() != dim_ || f_val.size() != dim_) {
    throw DimensionMismatch("AndersonWindow::push: expected vectors of length " +
                            std::to_string(dim_));
  }
  g_.push_back(std::move(g_val));
  f_.push_back(std::move(f_val));
  while (static_cast<int>(g_.size()) > depth_ + 1) {
    g_.pop_front();
    f_.pop_front();
  }
  ++pushes_;
}

void AndersonWindow::keep_newest() {
  while (g_.size() > 1) {
    g_.pop_front();
    f_.pop_front();
  }
}

void AndersonWindow::clear() {
  g_.clear();
  f_.clear();
}

AlphaSolution AndersonWindow::solve_alpha() const {
  const int columns = size() - 1;
  if (columns < 1) {
    throw InsufficientHistory("solve_alpha needs at least two stored residuals, have " +
                              std::to_string(size()));
  }
  Matrix diffs(dim_, columns);
  for (int i = 0; i < columns; ++i) diffs.col(i) = f_[i + 1] - f_[i];
  const Vector& newest = f_.back();

  Eigen::ColPivHouseholderQR<Matrix> qr(diffs);
  qr.setThreshold(kPivotCutoff);

  AlphaSolution sol;
  sol.rank = static_cast<int>(qr.rank());
  sol.rank_deficient = sol.rank < columns;
  // With a reduced rank the solver returns the basic solution: coefficients
  // of the dropped columns are exactly zero.
  sol.zeta = sol.rank > 0 ? Vector(qr.solve(newest)) : Vector(Vector::Zero(columns));

  sol.alpha.resize(columns + 1);
  sol.alpha[0] = sol.zeta[0];
  for (int i = 1; i < columns; ++i) sol.alpha[i] = sol.zeta[i] - sol.zeta[i - 1];
  sol.alpha[columns] = 1.0 - sol.zeta[columns - 1];
  sol.sum_abs_alpha = sol.alpha.cwiseAbs().sum();
  return sol;
}

void AndersonWindow::check_solution(const AlphaSolution& sol) const {
  if (sol.alpha.size() != size() || sol.zeta.size() != size() - 1) {
    throw Error("Anderson solution does not match the current window (alpha has " +
                std::to_string(sol.alpha.size()) + " entries, window has " +
                std::to_string(size()) + ")");
  }
}

Vector AndersonWindow::combine(const AlphaSolution& sol) const {
  check_solution(sol);
  Vector y = g_.back();
  for (int i = 0; i + 1 < size(); ++i) {
    if (sol.zeta[i] != 0.0) y -= sol.zeta[i] * (g_[i + 1] - g_[i]);
  }
  return y;
}

Vector AndersonWindow::combine_weighted(const AlphaSolution& sol) const {
  check_solution(sol);
  Vector y = Vector::Zero(dim_);
  for (int i = 0; i < size(); ++i) y += sol.alpha[i] * g_[i];
  return y;
}

double AndersonWindow::objective(const Vector& beta) const {
  if (beta.size() != size()) throw DimensionMismatch("objective: weight count");
  Vector q = Vector::Zero(dim_);
  for (int i = 0; i < size(); ++i) q += beta[i] * f_[i];
  return q.norm();
}

bool safeguard(const Vector& y, const AlphaSolution& sol, double kappa) {
  return (y.array() >= 0.0).all() && sol.sum_abs_alpha <= kappa;
}

}  // namespace mtsolve
