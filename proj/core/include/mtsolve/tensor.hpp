#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mtsolve {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default cap on the number of stored entries (600^3, about 1.7 GB of
/// doubles). Loaders and the benchmark harness refuse larger tensors.
inline constexpr std::size_t kDefaultMaxEntries = 600ull * 600ull * 600ull;

/// Dense order-l, dimension-n real tensor stored in row-major index order
/// (first index slowest, last index fastest). Indices are 0-based here; the
/// file formats are 1-based and convert at the boundary.
class DenseTensor {
 public:
  DenseTensor(int order, int dim);
  DenseTensor(int order, int dim, std::vector<double> entries);

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }

  std::span<const double> entries() const { return entries_; }
  std::span<double> entries() { return entries_; }

  /// Flat offset of a multi-index (no bounds checks beyond debug asserts).
  std::size_t offset(std::span<const int> index) const;

  double operator()(std::initializer_list<int> index) const;
  double& operator()(std::initializer_list<int> index);
  double at(std::span<const int> index) const { return entries_[offset(index)]; }
  double& at(std::span<const int> index) { return entries_[offset(index)]; }

  /// Number of entries in a trailing slice, n^(l-1).
  std::size_t slice_size() const { return slice_size_; }

  std::size_t nonzeros() const;

  bool operator==(const DenseTensor& other) const = default;

 private:
  int order_;
  int dim_;
  std::size_t slice_size_;
  std::vector<double> entries_;
};

/// n^l, throwing on overflow of std::size_t.
std::size_t entry_count(int order, int dim);

/// Throws Error when a tensor of this shape would exceed max_entries.
void check_memory_budget(int order, int dim,
                         std::size_t max_entries = kDefaultMaxEntries);

/// (A x^{l-1})_i = sum over i2..il of a_{i i2..il} x_{i2} ... x_{il}.
Vector apply(const DenseTensor& a, const Vector& x);

DenseTensor unit_tensor(int order, int dim);

/// M(A)_{ij} = a_{i j j ... j}.
Matrix majorization(const DenseTensor& a);

/// c_{j i2..il} = sum_k m_{jk} b_{k i2..il}.
DenseTensor matrix_tensor_product(const Matrix& m, const DenseTensor& b);

/// Averages every entry over the permutations of its trailing l-1 indices.
/// The result is symmetric in those indices and defines the same map
/// x -> A x^{l-1}.
DenseTensor semi_symmetrize(const DenseTensor& a);

/// (T x^{l-2})_{ij} = sum over i3..il of t_{i j i3..il} x_{i3} ... x_{il}.
/// For order 2 this is the tensor itself as a matrix.
Matrix gradient_slice(const DenseTensor& t, const Vector& x);

/// Entrywise p-th root. Odd p keeps the sign; even p throws NonRealRoot on
/// any negative entry.
Vector entrywise_root(const Vector& y, int p);

struct SpectralEstimate {
  double value = 0.0;  ///< best estimate of rho(B)
  double lower = 0.0;  ///< Collatz-Wielandt lower bound
  double upper = 0.0;  ///< Collatz-Wielandt upper bound
  int iterations = 0;
  bool converged = false;
};

/// Spectral radius of a nonnegative tensor by the shifted power iteration
/// on B + I_l. Stops when upper - lower < tol. If not converged, value is the
/// (conservative) upper bound. Throws Error on a negative entry.
SpectralEstimate spectral_radius_nonneg(const DenseTensor& b, double tol = 1e-10,
                                        int max_iter = 5000);

enum class TensorClass { NotZ, Z, M, StrongM };

const char* to_string(TensorClass c);

/// Z / M / strong-M classification with eta = max diagonal entry and
/// B = eta I - A.
TensorClass classify(const DenseTensor& a, double tol = 1e-8);

}  // namespace mtsolve
