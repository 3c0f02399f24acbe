#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "sympert/core.hpp"

namespace sympert {

/// Eigenvalues ascending; column k of `vectors` belongs to `values[k]`.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};

/// Complex matrix stored as separate real and imaginary parts.
struct ComplexPair {
  Matrix re;
  Matrix im;

  std::size_t rows() const { return re.rows(); }
  std::size_t cols() const { return re.cols(); }
};

/// Cyclic Jacobi (row-cyclic sweep order). Converges when the off-diagonal
/// Frobenius mass drops to 1e-14 * ||A||_F. Throws DomainError on a
/// non-symmetric input, NumericError after 100 sweeps.
SymmetricEigen sym_eigen(const Matrix& a);

/// V diag(lambda^p) V^T for p in {1/2, -1/2, -1}. Throws NotPositiveDefinite
/// when an eigenvalue is not positive.
Matrix pd_power(const Matrix& a, double p);
/// Same, reusing an existing eigendecomposition of A.
Matrix pd_power(const SymmetricEigen& eig, double p);

/// Modified Gram-Schmidt with one re-orthogonalization pass over the columns
/// of a complex matrix, in index order. The implied R has a positive real
/// diagonal. Throws DegenerateInput when a column norm falls below
/// `min_norm` after projection.
ComplexPair complex_gram_schmidt(const ComplexPair& z, double min_norm = 1e-12);

/// Haar-like unitary from a complex Gaussian sample; deterministic in seed.
ComplexPair random_unitary(std::size_t n, std::uint64_t seed);

/// ||X^T X + Y^T Y - I|| and ||X^T Y - Y^T X|| combined (max of the two, spectral norm).
double unitarity_defect(const ComplexPair& u);

/// Determinant via LU with partial pivoting.
double determinant(const Matrix& a);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points_used = 0;
};

inline constexpr double kDefaultDropBelow = 1e-13;

/// Least-squares line through (log t, log y) over the points with y > drop_below.
/// Throws InsufficientData when fewer than 3 points remain, DomainError on
/// mismatched lengths or nonpositive t.
SlopeFit fit_loglog_slope(std::span<const double> ts, std::span<const double> ys,
                          double drop_below = kDefaultDropBelow);

namespace detail {
/// Independent 64-bit stream from a (seed, tag) pair.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t tag);
}  // namespace detail

}  // namespace sympert
