#include "mtsolve/splitting.hpp"

#include <algorithm>
#include <mutex>

#include "mtsolve/errors.hpp"

namespace mtsolve {
namespace {

constexpr double kSignSlack = -1e-13;

bool all_nonnegative(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return v >= kSignSlack; });
}

}  // namespace

SplittingKind SplittingKind::sor(double omega) {
  if (!(omega > 0.0 && omega <= 2.0)) {
    throw Error("SOR weight must lie in (0, 2], got " + std::to_string(omega));
  }
  return SplittingKind(Tag::Sor, omega);
}

std::string SplittingKind::name() const {
  switch (tag_) {
    case Tag::Jacobi: return "jacobi";
    case Tag::GaussSeidel: return "gs";
    case Tag::Sor: return "sor";
  }
  return "?";
}

const char* to_string(SplittingClass c) {
  switch (c) {
    case SplittingClass::Regular: return "regular";
    case SplittingClass::WeakRegular: return "weak-regular";
    case SplittingClass::NotRegular: return "not-regular";
  }
  return "?";
}

struct Splitting::Cache {
  std::once_flag once;
  std::unique_ptr<DenseTensor> f_bar;
};

Splitting::Splitting(Matrix me, DenseTensor f_tensor, SplittingKind kind)
    : me_(std::move(me)),
      f_tensor_(std::move(f_tensor)),
      kind_(kind),
      cache_(std::make_shared<Cache>()) {
  if (me_.rows() != me_.cols() || me_.rows() != f_tensor_.dim()) {
    throw DimensionMismatch("splitting: M(E) shape does not match F");
  }
  for (Eigen::Index i = 0; i < me_.rows(); ++i) {
    if (!(me_(i, i) > 0.0)) {
      throw SingularSplitting("splitting: M(E) has non-positive pivot " +
                              std::to_string(me_(i, i)) + " in row " +
                              std::to_string(i + 1));
    }
    for (Eigen::Index j = i + 1; j < me_.cols(); ++j) {
      if (me_(i, j) != 0.0) throw Error("splitting: M(E) must be lower triangular");
    }
  }
}

const DenseTensor& Splitting::f_bar() const {
  std::call_once(cache_->once, [this] {
    cache_->f_bar = std::make_unique<DenseTensor>(semi_symmetrize(f_tensor_));
  });
  return *cache_->f_bar;
}

DenseTensor Splitting::e_tensor() const {
  return matrix_tensor_product(me_, unit_tensor(order(), dim()));
}

Splitting build_splitting(const DenseTensor& a, SplittingKind kind) {
  const Matrix ma = majorization(a);
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    if (!(ma(i, i) > 0.0)) {
      throw SingularSplitting("build_splitting: diagonal entry " + std::to_string(i + 1) +
                              " of M(A) is " + std::to_string(ma(i, i)) +
                              ", must be positive");
    }
  }

  Matrix me = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    switch (kind.tag()) {
      case SplittingKind::Tag::Jacobi:
        me(i, i) = ma(i, i);
        break;
      case SplittingKind::Tag::GaussSeidel:
        for (int j = 0; j <= i; ++j) me(i, j) = ma(i, j);
        break;
      case SplittingKind::Tag::Sor:
        me(i, i) = ma(i, i) / kind.omega();
        for (int j = 0; j < i; ++j) me(i, j) = ma(i, j);
        break;
    }
  }

  // F = E - A, where E only touches the positions (i, j, j, ..., j).
  DenseTensor f(a.order(), n);
  std::transform(a.entries().begin(), a.entries().end(), f.entries().begin(),
                 [](double v) { return -v; });
  std::vector<int> index(a.order());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (me(i, j) == 0.0) continue;
      index[0] = i;
      std::fill(index.begin() + 1, index.end(), j);
      f.at(index) += me(i, j);
    }
  }
  return Splitting(std::move(me), std::move(f), kind);
}

SplittingClass validate_splitting(const Splitting& s, const DenseTensor& a) {
  if (a.dim() != s.dim() || a.order() != s.order()) {
    throw DimensionMismatch("validate_splitting: splitting does not match tensor");
  }
  const int n = s.dim();
  const Matrix inverse =
      s.me().triangularView<Eigen::Lower>().solve(Matrix::Identity(n, n));
  if (!inverse.allFinite()) throw SingularSplitting("validate_splitting: M(E) is singular");
  if (!all_nonnegative(std::span<const double>(inverse.data(), inverse.size()))) {
    return SplittingClass::NotRegular;
  }
  if (all_nonnegative(s.f_tensor().entries())) return SplittingClass::Regular;
  const DenseTensor scaled = matrix_tensor_product(inverse, s.f_tensor());
  return all_nonnegative(scaled.entries()) ? SplittingClass::WeakRegular
                                           : SplittingClass::NotRegular;
}

Vector eval_g(const Splitting& s, const Vector& b, const Vector& x) {
  if (b.size() != s.dim() || x.size() != s.dim()) {
    throw DimensionMismatch("eval_g: vector length does not match splitting dimension");
  }
  Vector w = apply(s.f_tensor(), x);
  w += b;
  s.me().triangularView<Eigen::Lower>().solveInPlace(w);
  return entrywise_root(w, s.order() - 1);
}

double residual(const DenseTensor& a, const Vector& x, const Vector& b) {
  if (b.size() != a.dim()) throw DimensionMismatch("residual: b length");
  return (apply(a, x) - b).norm();
}

}  // namespace mtsolve
