#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mtsolve/problems.hpp"
#include "mtsolve/solver.hpp"

namespace mtsolve {

enum class Method { Jacobi, GaussSeidel, Sor, Newton };

/// Parses "jacobi", "gs", "sor" or "newton".
Method parse_method(const std::string& name);
const char* to_string(Method m);

struct SweepGrid {
  std::vector<double> thetas;
  std::vector<double> omegas;
  std::vector<int> ms;

  /// theta = 0.1..1.0 and omega = 1.0..2.0 in steps of 0.1.
  static SweepGrid standard(std::vector<int> ms);
  void validate() const;
};

struct RunSpec {
  std::optional<ProblemId> problem;
  std::optional<std::filesystem::path> file;
  int n = 0;
  Method method = Method::Jacobi;
  int m = 0;
  double theta = 1.0;
  double omega = 1.0;
  double kappa_alpha = 1000.0;
  double tol = 1e-11;
  int max_iter = 1000;
  bool clear_on_fallback = false;
  std::optional<std::filesystem::path> out_path;
  std::optional<SweepGrid> sweep;
  int jobs = 1;
  std::size_t max_entries = kDefaultMaxEntries;

  void validate() const;
};

/// One row of a sweep summary.
struct SweepRow {
  Method method = Method::Jacobi;
  int m = 0;
  double theta = 1.0;
  double omega = 1.0;
  int it = 0;
  double res = 0.0;
  double cpu_s = 0.0;
  bool converged = false;
};

/// Orders rows by convergence, then IT, then CPU, then (theta, omega).
bool better_row(const SweepRow& a, const SweepRow& b);

/// Builds the problem, runs one solve, writes the trace CSV to out_path when
/// set and prints a one-line summary to `out`. Returns 0 on convergence, 2
/// on non-convergence and 1 on usage, input or solver errors (reported on
/// `err`).
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Runs the whole grid, writes the summary CSV
/// (method,m,theta,omega,it,res,cpu_s) to out_path or `out`, then prints the
/// best row. Returns 0 if the best row converged, 2 if none did, 1 on errors.
int sweep(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// The grid rows sorted by (m, theta, omega); exposed for tests.
std::vector<SweepRow> sweep_rows(const RunSpec& spec, const DenseTensor& a,
                                 const Vector& b, const Vector& z0);

/// Problem tensor, right-hand side and start vector for a spec.
struct ProblemInstance {
  DenseTensor a;
  Vector b;
  Vector z0;
};
ProblemInstance build_problem(const RunSpec& spec);

}  // namespace mtsolve
