#include "mtsolve/problems.hpp"

#include <cmath>

#include "mtsolve/errors.hpp"
#include "mtsolve/solver.hpp"

namespace mtsolve {

ProblemId ProblemId::from_number(int number, std::uint64_t seed) {
  switch (number) {
    case 1: return ex1(seed);
    case 4: return ex4();
    case 5: return ex5();
    default: throw Error("unknown example " + std::to_string(number) + " (expected 1, 4 or 5)");
  }
}

int ProblemId::number() const {
  switch (family) {
    case Family::Ex1: return 1;
    case Family::Ex4: return 4;
    case Family::Ex5: return 5;
  }
  return 0;
}

std::string ProblemId::name() const { return "ex" + std::to_string(number()); }

DenseTensor gen_ex1(int n, std::uint64_t seed) {
  if (n < 1) throw Error("gen_ex1: n must be at least 1");
  DenseTensor a(3, n);
  PortableUniform uniform(seed);
  for (double& v : a.entries()) v = uniform();

  const Vector row_sums = apply(a, Vector::Ones(n));
  const double s = 2.0 * row_sums.maxCoeff();
  for (double& v : a.entries()) v = -v;
  for (int i = 0; i < n; ++i) a({i, i, i}) += s;
  return a;
}

DenseTensor gen_ex4(int n) {
  if (n < 3) throw Error("gen_ex4: n must be at least 3, got " + std::to_string(n));
  DenseTensor a(3, n);
  constexpr double kOff = -1.0 / 3.0;
  for (int i = 0; i < n; ++i) a({i, i, i}) = 8.0;
  // 1-based i = 2..n-1 is 0-based i = 1..n-2.
  for (int i = 1; i <= n - 2; ++i) {
    a({i + 1, i, i}) = kOff;
    a({i, i - 1, i}) = kOff;
    a({i, i, i + 1}) = kOff;
  }
  return a;
}

DenseTensor gen_ex5(int n) {
  if (n < 1) throw Error("gen_ex5: n must be at least 1");
  DenseTensor a(3, n);
  const double s = static_cast<double>(n) * n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        a({i, j, k}) = -std::abs(std::sin(static_cast<double>(i + j + k + 3)));
      }
    }
  }
  for (int i = 0; i < n; ++i) a({i, i, i}) += s;
  return a;
}

DenseTensor generate(const ProblemId& p, int n) {
  switch (p.family) {
    case ProblemId::Family::Ex1: return gen_ex1(n, p.seed);
    case ProblemId::Family::Ex4: return gen_ex4(n);
    case ProblemId::Family::Ex5: return gen_ex5(n);
  }
  throw Error("unknown problem family");
}

std::pair<Vector, Vector> rhs_and_start(const ProblemId& p, int n) {
  return {Vector::Ones(n), default_initial(p, n)};
}

}  // namespace mtsolve
