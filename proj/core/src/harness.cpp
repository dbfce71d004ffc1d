#include "mtsolve/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>
#include <tuple>

#include "mtsolve/errors.hpp"
#include "mtsolve/io.hpp"

namespace mtsolve {
namespace {

SplittingKind splitting_for(Method method, double omega) {
  switch (method) {
    case Method::Jacobi: return SplittingKind::jacobi();
    case Method::GaussSeidel: return SplittingKind::gauss_seidel();
    case Method::Sor: return SplittingKind::sor(omega);
    case Method::Newton: break;
  }
  throw Error("Newton's method has no splitting");
}

IterationTrace solve_one(const RunSpec& spec, const DenseTensor& a, const Vector& b,
                         const Vector& z0, int m, double theta, double omega) {
  if (spec.method == Method::Newton) return solve_newton(a, b, z0, spec.tol, spec.max_iter);
  SolverConfig cfg;
  cfg.m = m;
  cfg.theta = theta;
  cfg.kind = splitting_for(spec.method, omega);
  cfg.kappa_alpha = spec.kappa_alpha;
  cfg.tol = spec.tol;
  cfg.max_iter = spec.max_iter;
  cfg.clear_on_fallback = spec.clear_on_fallback;
  return solve_rtsmraa(a, b, z0, cfg);
}

std::string format_real(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string summary_line(Method method, int m, double theta, double omega, int it,
                         double res, double cpu) {
  return std::string("method=") + to_string(method) + " m=" + std::to_string(m) +
         " theta=" + format_real("%g", theta) + " omega=" + format_real("%g", omega) +
         " IT=" + std::to_string(it) + " RES=" + format_real("%.6e", res) +
         " CPU=" + format_real("%.6f", cpu);
}

std::string csv_row(const SweepRow& r) {
  return std::string(to_string(r.method)) + "," + std::to_string(r.m) + "," +
         format_real("%g", r.theta) + "," + format_real("%g", r.omega) + "," +
         std::to_string(r.it) + "," + format_real("%.6e", r.res) + "," +
         format_real("%.6f", r.cpu_s);
}

// Values like 0.1 * k accumulate rounding when summed; build them by division.
std::vector<double> decimal_range(int first_tenths, int last_tenths) {
  std::vector<double> out;
  for (int t = first_tenths; t <= last_tenths; ++t) out.push_back(t / 10.0);
  return out;
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "jacobi") return Method::Jacobi;
  if (name == "gs") return Method::GaussSeidel;
  if (name == "sor") return Method::Sor;
  if (name == "newton") return Method::Newton;
  throw Error("unknown method '" + name + "' (expected jacobi, gs, sor or newton)");
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Jacobi: return "jacobi";
    case Method::GaussSeidel: return "gs";
    case Method::Sor: return "sor";
    case Method::Newton: return "newton";
  }
  return "?";
}

SweepGrid SweepGrid::standard(std::vector<int> ms) {
  return SweepGrid{decimal_range(1, 10), decimal_range(10, 20), std::move(ms)};
}

void SweepGrid::validate() const {
  if (thetas.empty() || omegas.empty() || ms.empty()) {
    throw Error("sweep grid lists must be nonempty");
  }
  for (double t : thetas) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error("sweep theta outside [0, 1]");
  }
  for (double w : omegas) {
    if (!(w > 0.0 && w <= 2.0)) throw Error("sweep omega outside (0, 2]");
  }
  for (int m : ms) {
    if (m < 0) throw Error("sweep m must be >= 0");
  }
}

void RunSpec::validate() const {
  if (problem.has_value() == file.has_value()) {
    throw Error("exactly one of --example and --file must be given");
  }
  if (problem && n < 1) throw Error("--n must be positive");
  if (m < 0) throw Error("--m must be >= 0");
  if (!(theta >= 0.0 && theta <= 1.0)) throw Error("--theta must lie in [0, 1]");
  if (!(omega > 0.0 && omega <= 2.0)) throw Error("--omega must lie in (0, 2]");
  if (!(kappa_alpha >= 1.0)) throw Error("--kappa must be >= 1");
  if (!(tol > 0.0)) throw Error("--tol must be positive");
  if (max_iter < 1) throw Error("--max-iter must be positive");
  if (jobs < 1) throw Error("--jobs must be positive");
  if (sweep) sweep->validate();
}

bool better_row(const SweepRow& a, const SweepRow& b) {
  return std::make_tuple(!a.converged, a.it, a.cpu_s, a.theta, a.omega) <
         std::make_tuple(!b.converged, b.it, b.cpu_s, b.theta, b.omega);
}

ProblemInstance build_problem(const RunSpec& spec) {
  if (spec.file) {
    DenseTensor a = load_tensor(*spec.file, spec.max_entries);
    const int n = a.dim();
    return {std::move(a), Vector::Ones(n), Vector::Ones(n)};
  }
  check_memory_budget(3, spec.n, spec.max_entries);
  DenseTensor a = generate(*spec.problem, spec.n);
  auto [b, z0] = rhs_and_start(*spec.problem, spec.n);
  return {std::move(a), std::move(b), std::move(z0)};
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    spec.validate();
    const ProblemInstance p = build_problem(spec);
    const IterationTrace trace = solve_one(spec, p.a, p.b, p.z0, spec.m, spec.theta, spec.omega);
    for (const auto& w : trace.warnings) err << "warning: " << w << '\n';
    if (spec.out_path) save_trace(trace, *spec.out_path);
    const bool newton = spec.method == Method::Newton;
    out << summary_line(spec.method, newton ? 0 : spec.m, spec.theta, spec.omega,
                        trace.iterations(), trace.final_residual(), trace.elapsed())
        << '\n';
    return trace.converged ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

std::vector<SweepRow> sweep_rows(const RunSpec& spec, const DenseTensor& a, const Vector& b,
                                 const Vector& z0) {
  const SweepGrid grid = spec.sweep ? *spec.sweep
                                    : SweepGrid{{spec.theta}, {spec.omega}, {spec.m}};
  grid.validate();
  std::vector<SweepRow> rows;
  const std::vector<double> omegas =
      spec.method == Method::Sor ? grid.omegas : std::vector<double>{spec.omega};
  const std::vector<double> thetas =
      spec.method == Method::Newton ? std::vector<double>{spec.theta} : grid.thetas;
  const std::vector<int> ms = spec.method == Method::Newton ? std::vector<int>{0} : grid.ms;
  for (int m : ms) {
    for (double theta : thetas) {
      for (double omega : omegas) rows.push_back({spec.method, m, theta, omega});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& r = rows[i];
      try {
        const IterationTrace t = solve_one(spec, a, b, z0, r.m, r.theta, r.omega);
        r.it = t.iterations();
        r.res = t.final_residual();
        r.cpu_s = t.elapsed();
        r.converged = t.converged;
      } catch (const SolverError& e) {
        r.it = e.iteration();
        r.res = std::nan("");
        r.converged = false;
      }
    }
  };
  const int threads = std::min<int>(spec.jobs, static_cast<int>(rows.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::sort(rows.begin(), rows.end(), [](const SweepRow& x, const SweepRow& y) {
    return std::tie(x.m, x.theta, x.omega) < std::tie(y.m, y.theta, y.omega);
  });
  return rows;
}

int sweep(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    spec.validate();
    const ProblemInstance p = build_problem(spec);
    const std::vector<SweepRow> rows = sweep_rows(spec, p.a, p.b, p.z0);

    std::ofstream file;
    if (spec.out_path) {
      file.open(*spec.out_path);
      if (!file) throw Error("cannot write " + spec.out_path->string());
    }
    std::ostream& csv = spec.out_path ? file : out;
    csv << "method,m,theta,omega,it,res,cpu_s\n";
    for (const auto& r : rows) csv << csv_row(r) << '\n';
    if (spec.out_path && !file) throw Error("error while writing " + spec.out_path->string());

    const SweepRow best = *std::min_element(rows.begin(), rows.end(), better_row);
    out << "best: " << summary_line(best.method, best.m, best.theta, best.omega, best.it,
                                    best.res, best.cpu_s)
        << '\n';
    return best.converged ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mtsolve
