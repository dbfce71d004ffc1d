// mtsolve: benchmark driver for M-tensor multilinear systems.
//
//   mtsolve run   --example 4 --n 200 --method gs --m 3 --theta 0.6 --out trace.csv
//   mtsolve sweep --example 5 --n 200 --method sor --m 3 --out sweep.csv
//   mtsolve classify --file tensor.coo
//   mtsolve export --example 4 --n 10 --out ex4.coo
//
// Exit codes: 0 converged, 2 not converged, 1 usage or input error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mtsolve/errors.hpp"
#include "mtsolve/harness.hpp"
#include "mtsolve/io.hpp"

namespace {

struct Flags {
  std::optional<int> example;
  std::optional<std::string> file;
  int n = 200;
  std::string method = "jacobi";
  int m = 0;
  double theta = 1.0;
  double omega = 1.0;
  double kappa = 1000.0;
  double tol = 1e-11;
  int max_iter = 1000;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  bool sweep = false;
  bool clear_on_fallback = false;
  int jobs = 1;
  std::size_t max_entries = mtsolve::kDefaultMaxEntries;
  std::vector<double> thetas;
  std::vector<double> omegas;
  std::vector<int> ms;
};

void add_problem_options(CLI::App* cmd, Flags& f) {
  auto* ex = cmd->add_option("--example", f.example, "Benchmark family: 1, 4 or 5")
                 ->check(CLI::IsMember({1, 4, 5}));
  cmd->add_option("--file", f.file, "COO tensor file (1-based indices)")->excludes(ex);
  cmd->add_option("--n", f.n, "Problem dimension")->capture_default_str();
  cmd->add_option("--seed", f.seed, "RNG seed for example 1")->capture_default_str();
  cmd->add_option("--max-entries", f.max_entries, "Refuse tensors with more entries")
      ->capture_default_str();
}

void add_solver_options(CLI::App* cmd, Flags& f) {
  add_problem_options(cmd, f);
  cmd->add_option("--method", f.method, "jacobi, gs, sor or newton")
      ->check(CLI::IsMember({"jacobi", "gs", "sor", "newton"}))
      ->capture_default_str();
  cmd->add_option("--m", f.m, "Anderson window depth (0 = plain splitting)")
      ->capture_default_str();
  cmd->add_option("--theta", f.theta, "Relaxation in [0,1]")->capture_default_str();
  cmd->add_option("--omega", f.omega, "SOR weight in (0,2]")->capture_default_str();
  cmd->add_option("--kappa", f.kappa, "Bound on sum |alpha|")->capture_default_str();
  cmd->add_option("--tol", f.tol, "Residual tolerance")->capture_default_str();
  cmd->add_option("--max-iter", f.max_iter, "Iteration cap")->capture_default_str();
  cmd->add_option("--out", f.out, "Output CSV path");
  cmd->add_flag("--clear-on-fallback", f.clear_on_fallback,
                "Drop Anderson history when an extrapolation is rejected");
  cmd->add_option("--jobs", f.jobs, "Concurrent grid points in a sweep")
      ->capture_default_str();
  cmd->add_option("--thetas", f.thetas, "Sweep theta values (default 0.1..1.0)")
      ->delimiter(',');
  cmd->add_option("--omegas", f.omegas, "Sweep omega values (default 1.0..2.0)")
      ->delimiter(',');
  cmd->add_option("--ms", f.ms, "Sweep window depths (default: --m)")->delimiter(',');
}

mtsolve::RunSpec to_spec(const Flags& f, bool with_sweep) {
  mtsolve::RunSpec spec;
  if (f.example) spec.problem = mtsolve::ProblemId::from_number(*f.example, f.seed);
  if (f.file) spec.file = *f.file;
  spec.n = f.n;
  spec.method = mtsolve::parse_method(f.method);
  spec.m = f.m;
  spec.theta = f.theta;
  spec.omega = f.omega;
  spec.kappa_alpha = f.kappa;
  spec.tol = f.tol;
  spec.max_iter = f.max_iter;
  spec.clear_on_fallback = f.clear_on_fallback;
  spec.jobs = f.jobs;
  spec.max_entries = f.max_entries;
  if (f.out) spec.out_path = *f.out;
  if (with_sweep) {
    mtsolve::SweepGrid grid = mtsolve::SweepGrid::standard(f.ms.empty() ? std::vector<int>{f.m} : f.ms);
    if (!f.thetas.empty()) grid.thetas = f.thetas;
    if (!f.omegas.empty()) grid.omegas = f.omegas;
    spec.sweep = grid;
  }
  return spec;
}

int classify_command(const Flags& f) {
  mtsolve::RunSpec spec = to_spec(f, false);
  spec.validate();
  const mtsolve::ProblemInstance p = mtsolve::build_problem(spec);
  const auto cls = mtsolve::classify(p.a);
  std::cout << "class=" << mtsolve::to_string(cls) << '\n';
  if (cls == mtsolve::TensorClass::StrongM) {
    for (auto kind : {mtsolve::SplittingKind::jacobi(), mtsolve::SplittingKind::gauss_seidel()}) {
      const auto s = mtsolve::build_splitting(p.a, kind);
      std::cout << kind.name() << "=" << mtsolve::to_string(mtsolve::validate_splitting(s, p.a))
                << '\n';
    }
  }
  return 0;
}

int export_command(const Flags& f) {
  mtsolve::RunSpec spec = to_spec(f, false);
  spec.validate();
  if (!f.out) throw mtsolve::Error("export needs --out");
  mtsolve::save_tensor(mtsolve::build_problem(spec).a, *f.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor splitting solvers with safeguarded Anderson acceleration"};
  app.require_subcommand(1);
  Flags flags;

  auto* run = app.add_subcommand("run", "Solve one problem and print a summary line");
  add_solver_options(run, flags);
  run->add_flag("--sweep", flags.sweep, "Run the parameter grid instead of a single point");

  auto* sweep = app.add_subcommand("sweep", "Run a theta x omega x m parameter grid");
  add_solver_options(sweep, flags);

  auto* classify = app.add_subcommand("classify", "Report the Z/M class and splitting types");
  add_problem_options(classify, flags);

  auto* exporter = app.add_subcommand("export", "Write a generated tensor as COO text");
  add_problem_options(exporter, flags);
  exporter->add_option("--out", flags.out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed() || sweep->parsed()) {
      const bool grid = sweep->parsed() || flags.sweep;
      const mtsolve::RunSpec spec = to_spec(flags, grid);
      return grid ? mtsolve::sweep(spec, std::cout, std::cerr)
                  : mtsolve::run(spec, std::cout, std::cerr);
    }
    if (classify->parsed()) return classify_command(flags);
    if (exporter->parsed()) return export_command(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
