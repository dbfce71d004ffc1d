#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mtsolve/problems.hpp"
#include "mtsolve/splitting.hpp"
#include "mtsolve/tensor.hpp"

namespace mtsolve {

struct SolverConfig {
  /// Window depth; 0 runs the plain splitting iteration.
  int m = 0;
  /// Relaxation between the extrapolated point and the plain step.
  double theta = 1.0;
  /// Optional per-iteration relaxation; overrides theta when set. Must
  /// return values in [0, 1].
  std::function<double(int)> theta_schedule;
  SplittingKind kind = SplittingKind::jacobi();
  double kappa_alpha = 1000.0;
  double tol = 1e-11;
  int max_iter = 1000;
  /// On a rejected extrapolation, drop all history but the newest column.
  bool clear_on_fallback = false;
  /// Classify A and test 0 < A z0^{l-1} <= b before iterating. A tensor that
  /// is not a strong M-tensor is rejected; an infeasible start only warns.
  bool check_initial_feasibility = false;
  /// Keep every iterate in the trace (memory n * IT).
  bool keep_iterates = false;

  /// Throws Error on out-of-range fields.
  void validate() const;
  double theta_at(int k) const;
};

enum class StepKind { Accelerated, Fallback, Plain };

const char* to_string(StepKind k);

struct IterationRecord {
  int k = 0;
  /// ||A z_k^{l-1} - b||.
  double res = 0.0;
  /// ||g_E(z_k) - z_k||; NaN for Newton traces.
  double fixed_point_res = 0.0;
  double elapsed = 0.0;  ///< seconds since the start of the solve
  StepKind step_kind = StepKind::Plain;
  double min_entry = 0.0;  ///< smallest entry of z_k
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  bool converged = false;
  Vector final_x;
  /// Only filled when SolverConfig::keep_iterates is set.
  std::vector<Vector> iterates;
  std::vector<std::string> warnings;

  int iterations() const { return records.empty() ? 0 : records.back().k; }
  double final_residual() const { return records.empty() ? 0.0 : records.back().res; }
  double elapsed() const { return records.empty() ? 0.0 : records.back().elapsed; }
  /// Smallest entry over all recorded iterates.
  double min_entry() const;
};

/// Tensor splitting iteration with restarted, relaxed, safeguarded Anderson
/// acceleration.
///
/// The first step z_1 = g_E(z_0) is plain and counts as iteration 1. From
/// then on, mu_{k+1} = g_E(z_k) and f_k = mu_{k+1} - z_k enter the window,
/// and the extrapolated point y_{k+1} is accepted (blended with mu_{k+1} by
/// theta) only when y_{k+1} >= 0 and sum |alpha| <= kappa_alpha; otherwise
/// z_{k+1} = mu_{k+1}. Stops as soon as ||A z_k^{l-1} - b|| < tol or after
/// max_iter iterations. NonRealRoot inside g_E is rethrown as SolverError.
IterationTrace solve_rtsmraa(const DenseTensor& a, const Vector& b, const Vector& z0,
                             const SolverConfig& cfg);

/// Newton's method on A x^{l-1} = b with Jacobian (l-1) (A-bar x^{l-2}).
/// Throws SolverError on a singular Jacobian.
IterationTrace solve_newton(const DenseTensor& a, const Vector& b, const Vector& z0,
                            double tol = 1e-11, int max_iter = 1000);

/// e for ex1 and ex4, e/n for ex5.
Vector default_initial(const ProblemId& p, int n);

/// 0 < A z0^{l-1} <= b entrywise.
bool check_feasible_start(const DenseTensor& a, const Vector& z0, const Vector& b);

}  // namespace mtsolve
