#include "sympert/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sympert/numerics.hpp"

namespace sympert {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DomainError("matrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                      std::to_string(data_.size()));
  }
  if (!all_finite()) throw DomainError("matrix: non-finite entry");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DomainError("matrix: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return {r, c, std::move(data)};
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, std::span<const double> v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  Matrix out(row_idx.size(), col_idx.size());
  for (std::size_t a = 0; a < row_idx.size(); ++a) {
    if (row_idx[a] >= rows_) throw DomainError("select: row index out of range");
    for (std::size_t b = 0; b < col_idx.size(); ++b) {
      if (col_idx[b] >= cols_) throw DomainError("select: column index out of range");
      out(a, b) = (*this)(row_idx[a], col_idx[b]);
    }
  }
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> col_idx) const {
  Matrix out(rows_, col_idx.size());
  for (std::size_t b = 0; b < col_idx.size(); ++b) {
    if (col_idx[b] >= cols_) throw DomainError("select: column index out of range");
    for (std::size_t a = 0; a < rows_; ++a) out(a, b) = (*this)(a, col_idx[b]);
  }
  return out;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DomainError("matrix +: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DomainError("matrix -: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix *: inner dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square() || m.rows() == 0) {
    throw DomainError(std::string(what) + ": expected a non-empty square matrix, got " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

std::size_t require_even_square(const Matrix& m, const char* what) {
  require_square(m, what);
  if (m.rows() % 2 != 0) {
    throw DomainError(std::string(what) + ": expected even dimension, got " + std::to_string(m.rows()));
  }
  return m.rows() / 2;
}

SymplecticForm::SymplecticForm(std::size_t n) : n_(n) {
  if (n == 0) throw DomainError("symplectic form: half dimension must be positive");
}

Matrix SymplecticForm::matrix() const {
  Matrix j(2 * n_, 2 * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    j(i, n_ + i) = 1.0;
    j(n_ + i, i) = -1.0;
  }
  return j;
}

Matrix SymplecticForm::apply_left(const Matrix& m) const {
  if (m.rows() != 2 * n_) throw DomainError("J*M: row count must equal 2n");
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(i, c) = m(n_ + i, c);
      out(n_ + i, c) = -m(i, c);
    }
  }
  return out;
}

Matrix SymplecticForm::apply_right(const Matrix& m) const {
  if (m.cols() != 2 * n_) throw DomainError("M*J: column count must equal 2n");
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t i = 0; i < n_; ++i) {
      out(r, i) = -m(r, n_ + i);
      out(r, n_ + i) = m(r, i);
    }
  }
  return out;
}

IndexSet::IndexSet(std::vector<std::size_t> one_based) : idx_(std::move(one_based)) {
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (idx_[k] == 0) throw DomainError("index set: positions are 1-based");
    if (k > 0 && idx_[k] <= idx_[k - 1]) throw DomainError("index set: positions must be strictly increasing");
  }
}

IndexSet IndexSet::range(std::size_t first, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t k = 0; k < count; ++k) v[k] = first + k;
  return IndexSet(std::move(v));
}

std::vector<std::size_t> IndexSet::zero_based() const {
  std::vector<std::size_t> v(idx_.size());
  for (std::size_t k = 0; k < idx_.size(); ++k) v[k] = idx_[k] - 1;
  return v;
}

IndexSet IndexSet::shifted(std::size_t offset) const {
  std::vector<std::size_t> v(idx_);
  for (auto& x : v) x += offset;
  return IndexSet(std::move(v));
}

IndexSet IndexSet::united(const IndexSet& other) const {
  std::vector<std::size_t> v;
  v.reserve(idx_.size() + other.idx_.size());
  std::set_union(idx_.begin(), idx_.end(), other.idx_.begin(), other.idx_.end(), std::back_inserter(v));
  return IndexSet(std::move(v));
}

std::size_t ClusterStructure::cluster_of(std::size_t j) const {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const auto& a = alphas[i].indices();
    if (std::binary_search(a.begin(), a.end(), j + 1)) return i;
  }
  throw DomainError("cluster_of: position " + std::to_string(j + 1) + " not covered");
}

ClusterStructure build_clusters(std::span<const double> spectrum, double rel_tol) {
  if (spectrum.empty()) throw DomainError("build_clusters: empty spectrum");
  if (!(rel_tol >= 0.0)) throw DomainError("build_clusters: tolerance must be nonnegative");
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    if (!(spectrum[j] > 0.0) || !std::isfinite(spectrum[j])) {
      throw DomainError("build_clusters: spectrum entries must be positive and finite");
    }
    if (j > 0 && spectrum[j] < spectrum[j - 1]) throw DomainError("build_clusters: spectrum must be ascending");
  }

  ClusterStructure cs;
  cs.n = spectrum.size();
  cs.tolerance = rel_tol;

  std::size_t start = 0;
  auto close_cluster = [&](std::size_t end) {
    double sum = 0.0;
    for (std::size_t j = start; j < end; ++j) sum += spectrum[j];
    cs.mus.push_back(sum / static_cast<double>(end - start));
    IndexSet alpha = IndexSet::range(start + 1, end - start);
    IndexSet beta = alpha.shifted(cs.n);
    cs.gammas.push_back(alpha.united(beta));
    cs.alphas.push_back(std::move(alpha));
    cs.betas.push_back(std::move(beta));
    start = end;
  };
  for (std::size_t j = 1; j < spectrum.size(); ++j) {
    const double d = spectrum[j - 1];
    if (spectrum[j] - d > rel_tol * std::max(d, 1.0)) close_cluster(j);
  }
  close_cluster(spectrum.size());
  return cs;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double x : m.data()) s += x * x;
  return std::sqrt(s);
}

double spectral_norm(const Matrix& m) {
  if (m.empty()) return 0.0;
  const Matrix gram = m.transpose() * m;
  // M^T M is symmetric up to rounding; enforce exactly before the eigensolver's check.
  Matrix sym = gram;
  for (std::size_t i = 0; i < sym.rows(); ++i)
    for (std::size_t j = i + 1; j < sym.cols(); ++j) sym(i, j) = sym(j, i) = 0.5 * (gram(i, j) + gram(j, i));
  const auto eig = sym_eigen(sym);
  return std::sqrt(std::max(eig.values.back(), 0.0));
}

}  // namespace sympert
