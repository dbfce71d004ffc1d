// Acceptance gate: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; otherwise only the listed numbers. Exit status is nonzero
// if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mtsolve/anderson.hpp"
#include "mtsolve/problems.hpp"
#include "mtsolve/solver.hpp"
#include "mtsolve/splitting.hpp"
#include "mtsolve/tensor.hpp"
#include "support/oracles.hpp"

using namespace mtsolve;
using mtsolve::testing::Rng;

namespace {

constexpr int kN = 200;
constexpr double kTol = 1e-11;

// Smallest iterate entry seen by the runs of criteria 1-4.
double g_min_entry = std::numeric_limits<double>::infinity();
int g_traced_runs = 0;

class Report {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) ok_ = false;
    detail_ << "    " << (ok ? "ok   " : "FAIL ") << what << '\n';
  }
  bool ok() const { return ok_; }
  std::string detail() const { return detail_.str(); }

 private:
  bool ok_ = true;
  std::ostringstream detail_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

IterationTrace solve(const ProblemId& id, int n, SplittingKind kind, int m, double theta) {
  const DenseTensor a = generate(id, n);
  const auto [b, z0] = rhs_and_start(id, n);
  SolverConfig cfg;
  cfg.kind = kind;
  cfg.m = m;
  cfg.theta = theta;
  cfg.tol = kTol;
  IterationTrace t = solve_rtsmraa(a, b, z0, cfg);
  g_min_entry = std::min(g_min_entry, t.min_entry());
  ++g_traced_runs;
  return t;
}

IterationTrace solve(const DenseTensor& a, const Vector& b, const Vector& z0, SplittingKind kind,
                     int m, double theta) {
  SolverConfig cfg;
  cfg.kind = kind;
  cfg.m = m;
  cfg.theta = theta;
  cfg.tol = kTol;
  IterationTrace t = solve_rtsmraa(a, b, z0, cfg);
  g_min_entry = std::min(g_min_entry, t.min_entry());
  ++g_traced_runs;
  return t;
}

std::string run_label(const std::string& name, const IterationTrace& t) {
  return name + " IT=" + std::to_string(t.iterations()) +
         " RES=" + fmt("%.2e", t.final_residual());
}

void expect_it(Report& r, const std::string& name, const IterationTrace& t, int reference) {
  r.check(t.converged && t.final_residual() < kTol && std::abs(t.iterations() - reference) <= 1,
          run_label(name, t) + " (reference " + std::to_string(reference) + " +-1)");
}

// 1. ex4, m = 0.
void criterion1(Report& r) {
  const ProblemId ex4 = ProblemId::ex4();
  expect_it(r, "ex4 Jacobi m=0", solve(ex4, kN, SplittingKind::jacobi(), 0, 1.0), 14);
  expect_it(r, "ex4 GS m=0", solve(ex4, kN, SplittingKind::gauss_seidel(), 0, 1.0), 12);
  expect_it(r, "ex4 SOR(1.1) m=0", solve(ex4, kN, SplittingKind::sor(1.1), 0, 1.0), 12);
}

// 2. ex5, m = 0 and m = 3.
void criterion2(Report& r) {
  const DenseTensor a = gen_ex5(kN);
  const auto [b, z0] = rhs_and_start(ProblemId::ex5(), kN);
  expect_it(r, "ex5 Jacobi m=0", solve(a, b, z0, SplittingKind::jacobi(), 0, 1.0), 38);
  expect_it(r, "ex5 GS m=0", solve(a, b, z0, SplittingKind::gauss_seidel(), 0, 1.0), 38);
  expect_it(r, "ex5 SOR(1.5) m=0", solve(a, b, z0, SplittingKind::sor(1.5), 0, 1.0), 22);
  // SOR-RAA(3) uses the weight selected by the (theta, omega) sweep, omega = 1.
  for (const auto& [name, kind] : std::vector<std::pair<std::string, SplittingKind>>{
           {"Jacobi", SplittingKind::jacobi()},
           {"GS", SplittingKind::gauss_seidel()},
           {"SOR(1.0)", SplittingKind::sor(1.0)}}) {
    const IterationTrace t = solve(a, b, z0, kind, 3, 1.0);
    r.check(t.converged && t.final_residual() < kTol && t.iterations() <= 8,
            run_label("ex5 " + name + " m=3 theta=1", t) + " (<= 8)");
  }
}

// 3. ex4, GS-RAA(3) with theta = 0.6 against plain GS.
void criterion3(Report& r) {
  const ProblemId ex4 = ProblemId::ex4();
  const IterationTrace plain = solve(ex4, kN, SplittingKind::gauss_seidel(), 0, 1.0);
  const IterationTrace acc = solve(ex4, kN, SplittingKind::gauss_seidel(), 3, 0.6);
  r.check(plain.converged && plain.iterations() >= 11, run_label("ex4 GS m=0", plain) + " (>= 11)");
  r.check(acc.converged && acc.final_residual() < kTol && acc.iterations() <= 10,
          run_label("ex4 GS m=3 theta=0.6", acc) + " (<= 10)");
}

// 4. ex1 over ten seeds.
void criterion4(Report& r) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseTensor a = gen_ex1(kN, seed);
    const auto [b, z0] = rhs_and_start(ProblemId::ex1(seed), kN);
    const std::string tag = "ex1 seed=" + std::to_string(seed);
    const IterationTrace plain = solve(a, b, z0, SplittingKind::jacobi(), 0, 1.0);
    r.check(plain.converged && plain.final_residual() < kTol && plain.iterations() >= 30 &&
                plain.iterations() <= 50,
            run_label(tag + " Jacobi m=0", plain) + " (in [30, 50])");
    const IterationTrace acc = solve(a, b, z0, SplittingKind::jacobi(), 2, 1.0);
    r.check(acc.converged && acc.final_residual() < kTol && acc.iterations() >= 6 &&
                acc.iterations() <= 14,
            run_label(tag + " Jacobi m=2 theta=1", acc) + " (in [6, 14])");
  }
}

// 5. Positivity of every iterate: the runs above plus a theta sweep at n = 50.
void criterion5(Report& r) {
  if (g_traced_runs == 0) {
    Report scratch;
    criterion1(scratch);
    criterion2(scratch);
    criterion3(scratch);
    criterion4(scratch);
  }
  r.check(g_min_entry > 0.0, "criteria 1-4: " + std::to_string(g_traced_runs) +
                                 " runs, min iterate entry " + fmt("%.3e", g_min_entry));

  struct Family {
    ProblemId id;
    double omega;
  };
  const std::vector<Family> families{
      {ProblemId::ex1(0), 1.0}, {ProblemId::ex4(), 1.1}, {ProblemId::ex5(), 1.5}};
  int runs = 0;
  int violations = 0;
  int unconverged = 0;
  double lowest = std::numeric_limits<double>::infinity();
  for (const Family& f : families) {
    const DenseTensor a = generate(f.id, 50);
    const auto [b, z0] = rhs_and_start(f.id, 50);
    for (auto kind : {SplittingKind::jacobi(), SplittingKind::gauss_seidel(),
                      SplittingKind::sor(f.omega)}) {
      for (int m : {1, 2, 3}) {
        for (int tenth = 1; tenth <= 10; ++tenth) {
          SolverConfig cfg;
          cfg.kind = kind;
          cfg.m = m;
          cfg.theta = tenth / 10.0;
          cfg.keep_iterates = true;
          const IterationTrace t = solve_rtsmraa(a, b, z0, cfg);
          ++runs;
          unconverged += !t.converged;
          for (const Vector& z : t.iterates) {
            violations += !(z.array() > 0.0).all();
            lowest = std::min(lowest, z.minCoeff());
          }
        }
      }
    }
  }
  r.check(violations == 0, "theta sweep at n=50: " + std::to_string(runs) + " runs, " +
                               std::to_string(violations) + " nonpositive iterates, min entry " +
                               fmt("%.3e", lowest));
  r.check(unconverged == 0, "theta sweep at n=50: " + std::to_string(unconverged) +
                                " runs did not converge");
}

// 6. Anderson least-squares optimality and combine agreement.
void criterion6(Report& r) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(6);
  double worst_gap = -std::numeric_limits<double>::infinity();
  double worst_sum = 0.0;
  double worst_combine = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int columns = rng.integer(2, 5);
    AndersonWindow w(4, 6);
    for (int i = 0; i < columns; ++i) w.push(rng.vector(6), rng.vector(6));
    const AlphaSolution sol = w.solve_alpha();
    const double best = w.objective(sol.alpha);
    double sampled = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 1000; ++s) {
      Vector beta(columns);
      for (int i = 0; i < columns; ++i) beta[i] = -std::log(1.0 - rng.uniform());
      beta /= beta.sum();
      sampled = std::min(sampled, w.objective(beta));
    }
    worst_gap = std::max(worst_gap, best - sampled);
    worst_sum = std::max(worst_sum, std::abs(sol.alpha.sum() - 1.0));
    worst_combine = std::max(
        worst_combine, mtsolve::testing::rel_err(w.combine(sol), w.combine_weighted(sol)));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.check(worst_gap <= 1e-10, "max(objective - best sampled) = " + fmt("%.3e", worst_gap));
  r.check(worst_sum <= 1e-14, "max |sum alpha - 1| = " + fmt("%.3e", worst_sum));
  r.check(worst_combine < 1e-12, "max combine disagreement = " + fmt("%.3e", worst_combine));
  r.check(secs < 10.0, "runtime " + fmt("%.2f", secs) + " s");
}

// 7. Analytic Jacobian of g against central differences.
void criterion7(Report& r) {
  Rng rng(7);
  for (const auto& [name, a] : std::vector<std::pair<std::string, DenseTensor>>{
           {"ex4(6)", gen_ex4(6)}, {"ex5(6)", gen_ex5(6)}}) {
    for (auto kind : {SplittingKind::jacobi(), SplittingKind::gauss_seidel()}) {
      const Splitting s = build_splitting(a, kind);
      const Vector b = Vector::Ones(6);
      double worst = 0.0;
      for (int trial = 0; trial < 10; ++trial) {
        const Vector x = rng.vector(6, 0.05, 1.0);
        const Matrix diff = mtsolve::testing::analytic_jacobian_g(s, b, x) -
                            mtsolve::testing::fd_jacobian_g(s, b, x, 1e-6);
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      }
      r.check(worst < 1e-6, name + " " + kind.name() + ": max error " + fmt("%.3e", worst));
    }
  }
}

// 8. Newton and SOR-RAA(3) agree on ex4(50).
void criterion8(Report& r) {
  const DenseTensor a = gen_ex4(50);
  const Vector b = Vector::Ones(50);
  const Vector z0 = Vector::Ones(50);
  const IterationTrace newton = solve_newton(a, b, z0, kTol, 1000);
  const IterationTrace raa = solve(a, b, z0, SplittingKind::sor(1.1), 3, 1.0);
  r.check(newton.converged && newton.iterations() <= 7,
          run_label("Newton", newton) + " (IT <= 7)");
  r.check(raa.converged, run_label("SOR(1.1) m=3", raa));
  const double gap = (newton.final_x - raa.final_x).norm();
  r.check(gap < 1e-8, "||x_newton - x_sor|| = " + fmt("%.3e", gap));
}

// 9. Structural oracles.
void criterion9(Report& r) {
  Rng rng(9);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int order = rng.integer(2, 4);
    const int dim = rng.integer(2, 6);
    const DenseTensor t = rng.tensor(order, dim);
    const Vector x = rng.vector(dim);
    worst = std::max(worst, mtsolve::testing::rel_err(apply(semi_symmetrize(t), x),
                                                       mtsolve::testing::brute_apply(t, x)));
  }
  r.check(worst < 1e-12, "semi-symmetrization keeps apply: max rel err " + fmt("%.3e", worst));

  double worst_rho = 0.0;
  for (int n = 2; n <= 10; ++n) {
    DenseTensor ones(3, n);
    for (double& v : ones.entries()) v = 1.0;
    const double want = static_cast<double>(n) * n;
    worst_rho = std::max(worst_rho, std::abs(spectral_radius_nonneg(ones).value - want) / want);
  }
  r.check(worst_rho < 1e-6, "spectral radius of all-ones: max rel err " + fmt("%.3e", worst_rho));

  for (int n : {3, 10, 50}) {
    const bool ok = classify(gen_ex1(n, 0)) == TensorClass::StrongM &&
                    classify(gen_ex4(n)) == TensorClass::StrongM &&
                    classify(gen_ex5(n)) == TensorClass::StrongM;
    r.check(ok, "ex1, ex4, ex5 classify as strong M at n=" + std::to_string(n));
  }
}

// 10. Acceleration wins in iterations and wall time at n = 200.
void criterion10(Report& r) {
  auto best_of = [](const DenseTensor& a, const Vector& b, const Vector& z0, SplittingKind kind,
                    int m, double theta) {
    IterationTrace fastest;
    double t_min = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 3; ++rep) {
      IterationTrace t = solve(a, b, z0, kind, m, theta);
      if (t.elapsed() < t_min) {
        t_min = t.elapsed();
        fastest = std::move(t);
      }
    }
    return fastest;
  };
  struct Pair {
    std::string name;
    ProblemId id;
    SplittingKind kind;
    double theta;
  };
  for (const Pair& p : std::vector<Pair>{
           {"ex4 GS", ProblemId::ex4(), SplittingKind::gauss_seidel(), 0.6},
           {"ex4 SOR(1.1)", ProblemId::ex4(), SplittingKind::sor(1.1), 1.0},
           {"ex5 Jacobi", ProblemId::ex5(), SplittingKind::jacobi(), 1.0},
           {"ex5 SOR(1.5)", ProblemId::ex5(), SplittingKind::sor(1.5), 1.0}}) {
    const DenseTensor a = generate(p.id, kN);
    const auto [b, z0] = rhs_and_start(p.id, kN);
    const IterationTrace plain = best_of(a, b, z0, p.kind, 0, 1.0);
    const IterationTrace acc = best_of(a, b, z0, p.kind, 3, p.theta);
    r.check(acc.converged && plain.converged && acc.iterations() < plain.iterations() &&
                acc.elapsed() < plain.elapsed(),
            p.name + ": m=3 IT=" + std::to_string(acc.iterations()) + " " +
                fmt("%.4f", acc.elapsed()) + " s vs m=0 IT=" +
                std::to_string(plain.iterations()) + " " + fmt("%.4f", plain.elapsed()) + " s");
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<void(Report&)>>> criteria{
      {1, {"ex4 plain splitting iteration counts", criterion1}},
      {2, {"ex5 plain and accelerated iteration counts", criterion2}},
      {3, {"ex4 acceleration effect", criterion3}},
      {4, {"ex1 iteration bands over ten seeds", criterion4}},
      {5, {"positivity of all iterates", criterion5}},
      {6, {"Anderson least-squares oracle", criterion6}},
      {7, {"Jacobian of g against finite differences", criterion7}},
      {8, {"Newton and SOR-RAA(3) agree", criterion8}},
      {9, {"structural oracles", criterion9}},
      {10, {"acceleration wins in iterations and wall time", criterion10}},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (const auto& [id, _] : criteria) selected.push_back(id);
  }

  bool all_ok = true;
  for (int id : selected) {
    const auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 1;
    }
    Report report;
    try {
      it->second.second(report);
    } catch (const std::exception& e) {
      report.check(false, std::string("exception: ") + e.what());
    }
    all_ok = all_ok && report.ok();
    std::printf("%s %2d: %s\n%s", report.ok() ? "PASS" : "FAIL", id, it->second.first,
                report.detail().c_str());
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
