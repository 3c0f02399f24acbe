#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "sympert/errors.hpp"

namespace sympert {

/// Dense real matrix, row-major. Rectangular in general; operations that
/// need a square argument check it and throw DomainError.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of `data` (row-major). Throws DomainError when the size
  /// does not match or any entry is NaN/Inf.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix diagonal(std::initializer_list<double> d) { return diagonal(std::span<const double>(d.begin(), d.size())); }
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  std::vector<double> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> v);

  Matrix transpose() const;
  /// Copy of the rows/cols listed (0-based, in the given order).
  Matrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  /// Copy of the listed columns (0-based).
  Matrix select_columns(std::span<const std::size_t> col_idx) const;

  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Throws DomainError unless the matrix is square.
void require_square(const Matrix& m, const char* what);
/// Throws DomainError unless the matrix is square with even dimension; returns the half dimension.
std::size_t require_even_square(const Matrix& m, const char* what);

/// The standard form J_2n = [[0, I_n], [-I_n, 0]].
class SymplecticForm {
 public:
  explicit SymplecticForm(std::size_t n);

  std::size_t half_dim() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  Matrix matrix() const;

  /// J * m without materializing J. m must have 2n rows.
  Matrix apply_left(const Matrix& m) const;
  /// m * J without materializing J. m must have 2n columns.
  Matrix apply_right(const Matrix& m) const;

 private:
  std::size_t n_;
};

/// Sorted, duplicate-free set of 1-based positions.
class IndexSet {
 public:
  IndexSet() = default;
  /// Throws DomainError if the positions are not strictly increasing or contain 0.
  explicit IndexSet(std::vector<std::size_t> one_based);
  IndexSet(std::initializer_list<std::size_t> one_based)
      : IndexSet(std::vector<std::size_t>(one_based)) {}

  /// {first, first+1, ..., first+count-1}
  static IndexSet range(std::size_t first, std::size_t count);

  const std::vector<std::size_t>& indices() const { return idx_; }
  std::size_t size() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  std::size_t max() const { return idx_.empty() ? 0 : idx_.back(); }

  std::vector<std::size_t> zero_based() const;
  IndexSet shifted(std::size_t offset) const;
  IndexSet united(const IndexSet& other) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> idx_;
};

/// Distinct symplectic eigenvalues mu_1 < ... < mu_r with the index sets
/// alpha_i (positions in the first half), beta_i = alpha_i + n and
/// gamma_i = alpha_i U beta_i.
struct ClusterStructure {
  std::size_t n = 0;
  std::vector<double> mus;
  std::vector<IndexSet> alphas;
  std::vector<IndexSet> betas;
  std::vector<IndexSet> gammas;
  double tolerance = 0.0;

  std::size_t count() const { return mus.size(); }
  /// Cluster index (0-based) owning first-half position j (0-based).
  std::size_t cluster_of(std::size_t j) const;
};

inline constexpr double kDefaultClusterTol = 1e-8;

/// Single-linkage grouping of an ascending spectrum: consecutive values d, d'
/// share a cluster iff d' - d <= rel_tol * max(d, 1). mu_i is the cluster mean.
ClusterStructure build_clusters(std::span<const double> spectrum, double rel_tol = kDefaultClusterTol);

/// Largest singular value.
double spectral_norm(const Matrix& m);
double frobenius_norm(const Matrix& m);

}  // namespace sympert
