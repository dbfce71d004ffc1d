#include "mtsolve/tensor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "mtsolve/errors.hpp"

namespace mtsolve {
namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Offset step between consecutive diagonal entries (i,...,i) -> (i+1,...,i+1).
std::size_t diagonal_stride(int order, int dim) {
  std::size_t stride = 0;
  std::size_t power = 1;
  for (int k = 0; k < order; ++k) {
    stride += power;
    power *= static_cast<std::size_t>(dim);
  }
  return stride;
}

// Contracts the last index of a block of `rows` rows of length n against x,
// writing `rows` values to out.
void contract_last(const double* in, std::size_t rows, const Vector& x,
                   double* out) {
  const Eigen::Index n = x.size();
  for (std::size_t r = 0; r < rows; ++r) {
    out[r] = Eigen::Map<const Vector>(in + r * n, n).dot(x);
  }
}

// Contracts the trailing `levels` indices of a block of n^depth entries.
// Returns the n^(depth - levels) remaining values in `scratch`.
const double* contract_trailing(const double* block, int depth, int levels,
                                const Vector& x, std::vector<double>& scratch,
                                std::vector<double>& scratch2) {
  const std::size_t n = static_cast<std::size_t>(x.size());
  std::size_t len = 1;
  for (int k = 0; k < depth; ++k) len *= n;
  const double* src = block;
  for (int level = 0; level < levels; ++level) {
    len /= n;
    std::vector<double>& dst = (level % 2 == 0) ? scratch : scratch2;
    dst.resize(len);
    contract_last(src, len, x, dst.data());
    src = dst.data();
  }
  return src;
}

void require_same_dim(const DenseTensor& a, Eigen::Index n, const char* what) {
  if (a.dim() != n) {
    throw DimensionMismatch(std::string(what) + ": tensor dimension " +
                            std::to_string(a.dim()) + " vs vector length " +
                            std::to_string(n));
  }
}

}  // namespace

std::size_t entry_count(int order, int dim) {
  if (order < 1 || dim < 1) throw Error("tensor order and dimension must be positive");
  std::size_t count = 1;
  for (int k = 0; k < order; ++k) {
    if (count > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(dim)) {
      throw Error("tensor size n^l overflows");
    }
    count *= static_cast<std::size_t>(dim);
  }
  return count;
}

void check_memory_budget(int order, int dim, std::size_t max_entries) {
  const std::size_t count = entry_count(order, dim);
  if (count > max_entries) {
    throw Error("tensor of order " + std::to_string(order) + " and dimension " +
                std::to_string(dim) + " needs " + std::to_string(count) +
                " entries, above the budget of " + std::to_string(max_entries));
  }
}

DenseTensor::DenseTensor(int order, int dim)
    : DenseTensor(order, dim, std::vector<double>(entry_count(order, dim), 0.0)) {}

DenseTensor::DenseTensor(int order, int dim, std::vector<double> entries)
    : order_(order), dim_(dim), entries_(std::move(entries)) {
  if (order < 2) throw Error("tensor order must be at least 2");
  if (dim < 1) throw Error("tensor dimension must be at least 1");
  if (entries_.size() != entry_count(order, dim)) {
    throw DimensionMismatch("tensor entry count " + std::to_string(entries_.size()) +
                            " does not match n^l = " +
                            std::to_string(entry_count(order, dim)));
  }
  slice_size_ = entries_.size() / static_cast<std::size_t>(dim);
}

std::size_t DenseTensor::offset(std::span<const int> index) const {
  assert(static_cast<int>(index.size()) == order_);
  std::size_t off = 0;
  for (int i : index) {
    assert(i >= 0 && i < dim_);
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

double DenseTensor::operator()(std::initializer_list<int> index) const {
  if (static_cast<int>(index.size()) != order_) throw DimensionMismatch("index arity");
  return entries_[offset(std::span<const int>(index.begin(), index.size()))];
}

double& DenseTensor::operator()(std::initializer_list<int> index) {
  if (static_cast<int>(index.size()) != order_) throw DimensionMismatch("index arity");
  return entries_[offset(std::span<const int>(index.begin(), index.size()))];
}

std::size_t DenseTensor::nonzeros() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](double v) { return v != 0.0; }));
}

Vector apply(const DenseTensor& a, const Vector& x) {
  require_same_dim(a, x.size(), "apply");
  const int n = a.dim();
  Vector out(n);
  std::vector<double> s1, s2;
  const double* data = a.entries().data();
  for (int i = 0; i < n; ++i) {
    const double* slice = data + static_cast<std::size_t>(i) * a.slice_size();
    out[i] = *contract_trailing(slice, a.order() - 1, a.order() - 1, x, s1, s2);
  }
  return out;
}

DenseTensor unit_tensor(int order, int dim) {
  DenseTensor t(order, dim);
  const std::size_t stride = diagonal_stride(order, dim);
  for (int i = 0; i < dim; ++i) t.entries()[static_cast<std::size_t>(i) * stride] = 1.0;
  return t;
}

Matrix majorization(const DenseTensor& a) {
  const int n = a.dim();
  Matrix m(n, n);
  // Offset of (0, j, j, ..., j) is j * (1 + n + ... + n^{l-2}).
  const std::size_t trailing = diagonal_stride(a.order() - 1, n);
  const auto data = a.entries();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = data[static_cast<std::size_t>(i) * a.slice_size() +
                     static_cast<std::size_t>(j) * trailing];
    }
  }
  return m;
}

DenseTensor matrix_tensor_product(const Matrix& m, const DenseTensor& b) {
  if (m.rows() != m.cols() || m.cols() != b.dim()) {
    throw DimensionMismatch("matrix_tensor_product: matrix is " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            ", tensor dimension " + std::to_string(b.dim()));
  }
  const auto n = static_cast<Eigen::Index>(b.dim());
  const auto cols = static_cast<Eigen::Index>(b.slice_size());
  DenseTensor c(b.order(), b.dim());
  Eigen::Map<const RowMajorMatrix> src(b.entries().data(), n, cols);
  Eigen::Map<RowMajorMatrix> dst(c.entries().data(), n, cols);
  dst.noalias() = m * src;
  return c;
}

DenseTensor semi_symmetrize(const DenseTensor& a) {
  const int n = a.dim();
  const int depth = a.order() - 1;
  const std::size_t slice = a.slice_size();

  // For every trailing multi-index, the offset of its sorted representative.
  std::vector<std::size_t> representative(slice);
  std::vector<int> count(slice, 0);
  std::vector<int> index(depth, 0);
  std::vector<int> sorted(depth);
  for (std::size_t off = 0; off < slice; ++off) {
    std::size_t rem = off;
    for (int k = depth - 1; k >= 0; --k) {
      index[k] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    sorted = index;
    std::sort(sorted.begin(), sorted.end());
    std::size_t key = 0;
    for (int v : sorted) key = key * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
    representative[off] = key;
    ++count[key];
  }

  DenseTensor out(a.order(), n);
  std::vector<double> sums(slice);
  for (int i = 0; i < n; ++i) {
    const double* src = a.entries().data() + static_cast<std::size_t>(i) * slice;
    double* dst = out.entries().data() + static_cast<std::size_t>(i) * slice;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t off = 0; off < slice; ++off) sums[representative[off]] += src[off];
    for (std::size_t off = 0; off < slice; ++off) {
      const std::size_t key = representative[off];
      dst[off] = sums[key] / count[key];
    }
  }
  return out;
}

Matrix gradient_slice(const DenseTensor& t, const Vector& x) {
  require_same_dim(t, x.size(), "gradient_slice");
  const int n = t.dim();
  Matrix g(n, n);
  std::vector<double> s1, s2;
  for (int i = 0; i < n; ++i) {
    const double* slice = t.entries().data() + static_cast<std::size_t>(i) * t.slice_size();
    const double* row = contract_trailing(slice, t.order() - 1, t.order() - 2, x, s1, s2);
    for (int j = 0; j < n; ++j) g(i, j) = row[j];
  }
  return g;
}

Vector entrywise_root(const Vector& y, int p) {
  if (p < 1) throw Error("entrywise_root: exponent must be at least 1");
  if (p == 1) return y;
  Vector out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double v = y[i];
    if (p % 2 == 0) {
      if (v < 0.0) {
        throw NonRealRoot("entrywise_root: entry " + std::to_string(i + 1) + " = " +
                          std::to_string(v) + " is negative under an even root");
      }
      out[i] = p == 2 ? std::sqrt(v) : std::pow(v, 1.0 / p);
    } else {
      out[i] = p == 3 ? std::cbrt(v) : std::copysign(std::pow(std::abs(v), 1.0 / p), v);
    }
  }
  return out;
}

namespace {

// Shifted power iteration. Also stops once the bracket [lower, upper] lies
// entirely on one side of `separate_from` (when given), which is all that
// classification needs.
SpectralEstimate power_iteration(const DenseTensor& b, double tol, int max_iter,
                                 const double* separate_from) {
  for (double v : b.entries()) {
    if (v < 0.0) throw Error("spectral_radius_nonneg: tensor has a negative entry");
  }
  constexpr double kShift = 1.0;
  DenseTensor shifted = b;
  const std::size_t stride = diagonal_stride(b.order(), b.dim());
  for (int i = 0; i < b.dim(); ++i) {
    shifted.entries()[static_cast<std::size_t>(i) * stride] += kShift;
  }

  const int p = b.order() - 1;
  Vector y = Vector::Ones(b.dim());
  SpectralEstimate est;
  for (int it = 1; it <= max_iter; ++it) {
    const Vector w = apply(shifted, y);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double ratio = w[i] / std::pow(y[i], p);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    est.lower = std::max(lo - kShift, 0.0);
    est.upper = hi - kShift;
    est.iterations = it;
    if (hi - lo < tol) {
      est.converged = true;
      est.value = 0.5 * (est.lower + est.upper);
      return est;
    }
    if (separate_from != nullptr &&
        (est.upper < *separate_from || est.lower > *separate_from)) {
      est.value = est.upper;
      return est;
    }
    y = entrywise_root(w, p);
    y /= y.maxCoeff();
  }
  est.value = est.upper;
  return est;
}

}  // namespace

SpectralEstimate spectral_radius_nonneg(const DenseTensor& b, double tol, int max_iter) {
  return power_iteration(b, tol, max_iter, nullptr);
}

const char* to_string(TensorClass c) {
  switch (c) {
    case TensorClass::NotZ: return "not-Z";
    case TensorClass::Z: return "Z";
    case TensorClass::M: return "M";
    case TensorClass::StrongM: return "strong-M";
  }
  return "?";
}

TensorClass classify(const DenseTensor& a, double tol) {
  const std::size_t stride = diagonal_stride(a.order(), a.dim());
  const auto data = a.entries();
  double eta = -std::numeric_limits<double>::infinity();
  for (std::size_t off = 0; off < data.size(); ++off) {
    if (off % stride == 0) {
      eta = std::max(eta, data[off]);
    } else if (data[off] > 0.0) {
      return TensorClass::NotZ;
    }
  }

  // B = eta I - A is nonnegative because eta dominates the diagonal and the
  // off-diagonal part of a Z-tensor is nonpositive.
  DenseTensor b(a.order(), a.dim());
  for (std::size_t off = 0; off < data.size(); ++off) {
    b.entries()[off] = (off % stride == 0) ? eta - data[off] : -data[off];
  }
  const double strong_threshold = eta - tol;
  const SpectralEstimate rho = power_iteration(b, 0.1 * tol, 20000, &strong_threshold);
  if (rho.upper < strong_threshold) return TensorClass::StrongM;
  if (rho.lower > eta + tol) return TensorClass::Z;
  if (std::abs(eta - rho.value) <= tol) return TensorClass::M;
  return rho.value < eta ? TensorClass::StrongM : TensorClass::Z;
}

}  // namespace mtsolve
