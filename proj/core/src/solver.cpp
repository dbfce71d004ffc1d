#include "mtsolve/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "mtsolve/anderson.hpp"
#include "mtsolve/errors.hpp"

namespace mtsolve {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_inputs(const DenseTensor& a, const Vector& b, const Vector& z0) {
  if (b.size() != a.dim() || z0.size() != a.dim()) {
    throw DimensionMismatch("solver: b and z0 must have length " + std::to_string(a.dim()));
  }
}

class TraceBuilder {
 public:
  TraceBuilder(const DenseTensor& a, const Vector& b, bool keep_iterates)
      : a_(a), b_(b), keep_(keep_iterates), start_(Clock::now()) {}

  // Records z_k and returns its residual.
  double record(int k, const Vector& z, StepKind kind) {
    IterationRecord r;
    r.k = k;
    r.res = residual(a_, z, b_);
    r.fixed_point_res = std::numeric_limits<double>::quiet_NaN();
    r.elapsed = seconds_since(start_);
    r.step_kind = kind;
    r.min_entry = z.minCoeff();
    trace_.records.push_back(r);
    if (keep_) trace_.iterates.push_back(z);
    return r.res;
  }

  // ||g_E(z_k) - z_k|| becomes known one iteration later.
  void set_fixed_point_res(double value) {
    if (!trace_.records.empty()) trace_.records.back().fixed_point_res = value;
  }

  IterationTrace finish(Vector z, bool converged) {
    trace_.final_x = std::move(z);
    trace_.converged = converged;
    return std::move(trace_);
  }

  IterationTrace& trace() { return trace_; }

 private:
  const DenseTensor& a_;
  const Vector& b_;
  bool keep_;
  Clock::time_point start_;
  IterationTrace trace_;
};

Vector checked_g(const Splitting& s, const Vector& b, const Vector& z, int k) {
  try {
    return eval_g(s, b, z);
  } catch (const NonRealRoot& e) {
    throw SolverError("iterate left the nonnegative cone while computing g_E(z_" +
                          std::to_string(k) + "): " + e.what(),
                      k);
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (m < 0) throw Error("window depth m must be >= 0");
  if (!(theta >= 0.0 && theta <= 1.0)) throw Error("theta must lie in [0, 1]");
  if (!(kappa_alpha >= 1.0)) throw Error("kappa_alpha must be >= 1");
  if (!(tol > 0.0)) throw Error("tolerance must be positive");
  if (max_iter < 1) throw Error("max_iter must be >= 1");
}

double SolverConfig::theta_at(int k) const {
  if (!theta_schedule) return theta;
  const double t = theta_schedule(k);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error("theta schedule returned " + std::to_string(t) + " at k = " +
                std::to_string(k));
  }
  return t;
}

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Accelerated: return "accelerated";
    case StepKind::Fallback: return "fallback";
    case StepKind::Plain: return "plain";
  }
  return "?";
}

double IterationTrace::min_entry() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& r : records) lo = std::min(lo, r.min_entry);
  return lo;
}

IterationTrace solve_rtsmraa(const DenseTensor& a, const Vector& b, const Vector& z0,
                             const SolverConfig& cfg) {
  cfg.validate();
  check_inputs(a, b, z0);
  if ((b.array() <= 0.0).any()) throw Error("solver: b must be entrywise positive");
  if ((z0.array() <= 0.0).any()) throw Error("solver: z0 must be entrywise positive");

  std::vector<std::string> warnings;
  if (cfg.check_initial_feasibility) {
    const TensorClass cls = classify(a);
    if (cls != TensorClass::StrongM) {
      throw Error(std::string("solver: coefficient tensor is ") + to_string(cls) +
                  ", not a strong M-tensor");
    }
    if (!check_feasible_start(a, z0, b)) {
      warnings.emplace_back("initial vector does not satisfy 0 < A z0^{l-1} <= b");
    }
  }

  const Splitting split = build_splitting(a, cfg.kind);
  TraceBuilder tb(a, b, cfg.keep_iterates);
  tb.trace().warnings = std::move(warnings);

  // Seed step: z_1 = g_E(z_0), f_0 = z_1 - z_0.
  Vector mu = checked_g(split, b, z0, 0);
  Vector f = mu - z0;
  Vector z = mu;
  std::optional<AndersonWindow> window;
  if (cfg.m > 0) {
    window.emplace(cfg.m, a.dim());
    window->push(mu, f);
  }
  int k = 1;
  double res = tb.record(k, z, StepKind::Plain);

  while (!(res < cfg.tol) && k < cfg.max_iter) {
    mu = checked_g(split, b, z, k);
    f = mu - z;
    tb.set_fixed_point_res(f.norm());

    StepKind kind = StepKind::Plain;
    if (!window) {
      z = mu;
    } else {
      window->push(mu, f);
      const AlphaSolution sol = window->solve_alpha();
      const Vector y = window->combine(sol);
      if (safeguard(y, sol, cfg.kappa_alpha)) {
        const double theta = cfg.theta_at(k);
        z = theta * y + (1.0 - theta) * mu;
        kind = StepKind::Accelerated;
      } else {
        z = mu;
        kind = StepKind::Fallback;
        if (cfg.clear_on_fallback) window->keep_newest();
      }
    }
    ++k;
    res = tb.record(k, z, kind);
  }

  // One extra map evaluation for the fixed-point residual of the last iterate;
  // not counted as an iteration.
  tb.set_fixed_point_res((checked_g(split, b, z, k) - z).norm());
  const bool converged = res < cfg.tol;
  return tb.finish(std::move(z), converged);
}

IterationTrace solve_newton(const DenseTensor& a, const Vector& b, const Vector& z0,
                            double tol, int max_iter) {
  check_inputs(a, b, z0);
  if (!(tol > 0.0)) throw Error("tolerance must be positive");
  if (max_iter < 1) throw Error("max_iter must be >= 1");

  const DenseTensor a_bar = semi_symmetrize(a);
  const double degree = a.order() - 1;
  TraceBuilder tb(a, b, false);
  Vector z = z0;
  double res = residual(a, z, b);
  int k = 0;
  while (!(res < tol) && k < max_iter) {
    const Matrix jacobian = degree * gradient_slice(a_bar, z);
    const Eigen::PartialPivLU<Matrix> lu(jacobian);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
      throw SolverError("Newton: singular Jacobian at iteration " + std::to_string(k + 1) +
                            " (rcond " + std::to_string(rcond) + ")",
                        k + 1);
    }
    z -= lu.solve(apply(a, z) - b);
    ++k;
    res = tb.record(k, z, StepKind::Plain);
  }
  if (k == 0) res = tb.record(0, z, StepKind::Plain);
  return tb.finish(std::move(z), res < tol);
}

Vector default_initial(const ProblemId& p, int n) {
  if (n < 1) throw Error("default_initial: n must be positive");
  if (p.family == ProblemId::Family::Ex5) return Vector::Constant(n, 1.0 / n);
  return Vector::Ones(n);
}

bool check_feasible_start(const DenseTensor& a, const Vector& z0, const Vector& b) {
  const Vector v = apply(a, z0);
  return (v.array() > 0.0).all() && (v.array() <= b.array()).all();
}

}  // namespace mtsolve
