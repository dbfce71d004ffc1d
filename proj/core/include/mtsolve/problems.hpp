#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "mtsolve/tensor.hpp"

namespace mtsolve {

/// The three benchmark families: a random strong M-tensor (ex1), a banded
/// tensor with diagonal 8 (ex4) and a dense sine tensor (ex5).
struct ProblemId {
  enum class Family { Ex1, Ex4, Ex5 };

  Family family = Family::Ex4;
  std::uint64_t seed = 0;  ///< used by Ex1 only

  static ProblemId ex1(std::uint64_t seed) { return {Family::Ex1, seed}; }
  static ProblemId ex4() { return {Family::Ex4, 0}; }
  static ProblemId ex5() { return {Family::Ex5, 0}; }

  /// Parses the CLI example number 1, 4 or 5.
  static ProblemId from_number(int number, std::uint64_t seed = 0);
  int number() const;
  std::string name() const;
};

/// Uniform [0,1) doubles from the top 53 bits of std::mt19937_64, whose
/// output sequence is fixed by the C++ standard. Entries are drawn in
/// row-major order.
class PortableUniform {
 public:
  explicit PortableUniform(std::uint64_t seed) : engine_(seed) {}
  double operator()() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

/// A = s I_3 - B with B_{ijk} uniform on [0,1) and s = 2 max_i (B e^2)_i.
DenseTensor gen_ex1(int n, std::uint64_t seed);

/// Order 3, a_iii = 8, and for i = 2..n-1 (1-based)
/// a_{i+1,i,i} = a_{i,i-1,i} = a_{i,i,i+1} = -1/3. Requires n >= 3.
DenseTensor gen_ex4(int n);

/// A = n^2 I_3 - B with b_{ijk} = |sin(i + j + k)|, 1-based indices.
DenseTensor gen_ex5(int n);

DenseTensor generate(const ProblemId& p, int n);

/// (b, z0): b = e, z0 from default_initial.
std::pair<Vector, Vector> rhs_and_start(const ProblemId& p, int n);

}  // namespace mtsolve
