#pragma once

#include <memory>
#include <string>

#include "mtsolve/tensor.hpp"

namespace mtsolve {

/// Which splitting A = E - F to build. E = D (Jacobi), D - L (Gauss-Seidel)
/// or (1/omega)(D - omega L) (SOR), where D and -L are the diagonal and
/// strictly lower parts of M(A).
class SplittingKind {
 public:
  enum class Tag { Jacobi, GaussSeidel, Sor };

  static SplittingKind jacobi() { return SplittingKind(Tag::Jacobi, 1.0); }
  static SplittingKind gauss_seidel() { return SplittingKind(Tag::GaussSeidel, 1.0); }
  /// Throws Error unless 0 < omega <= 2.
  static SplittingKind sor(double omega);

  Tag tag() const { return tag_; }
  /// Relaxation weight; 1 for Jacobi and Gauss-Seidel.
  double omega() const { return omega_; }

  /// "jacobi", "gs" or "sor".
  std::string name() const;

  bool operator==(const SplittingKind&) const = default;

 private:
  SplittingKind(Tag tag, double omega) : tag_(tag), omega_(omega) {}
  Tag tag_;
  double omega_;
};

enum class SplittingClass { Regular, WeakRegular, NotRegular };

const char* to_string(SplittingClass c);

/// A = E - F with E = M(E) I_l. Only M(E) (lower triangular) and F are
/// stored; E is materialized on request.
class Splitting {
 public:
  Splitting(Matrix me, DenseTensor f_tensor, SplittingKind kind);

  const Matrix& me() const { return me_; }
  const DenseTensor& f_tensor() const { return f_tensor_; }
  SplittingKind kind() const { return kind_; }
  int order() const { return f_tensor_.order(); }
  int dim() const { return f_tensor_.dim(); }

  /// Semi-symmetrized F, computed on first use and shared between copies.
  const DenseTensor& f_bar() const;

  /// E = M(E) I_l as a full tensor.
  DenseTensor e_tensor() const;

 private:
  struct Cache;
  Matrix me_;
  DenseTensor f_tensor_;
  SplittingKind kind_;
  std::shared_ptr<Cache> cache_;
};

/// Throws SingularSplitting when a diagonal entry of M(A) is not positive.
Splitting build_splitting(const DenseTensor& a, SplittingKind kind);

/// Regular when M(E)^{-1} >= 0 and F >= 0; WeakRegular when M(E)^{-1} >= 0
/// and M(E)^{-1} F >= 0. Sign checks allow -1e-13 of rounding.
SplittingClass validate_splitting(const Splitting& s, const DenseTensor& a);

/// g_E(x) = (M(E)^{-1} (F x^{l-1} + b))^{[1/(l-1)]}, with M(E) applied by
/// forward substitution.
Vector eval_g(const Splitting& s, const Vector& b, const Vector& x);

/// ||A x^{l-1} - b||_2.
double residual(const DenseTensor& a, const Vector& x, const Vector& b);

}  // namespace mtsolve
