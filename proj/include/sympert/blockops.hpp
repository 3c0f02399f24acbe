#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "sympert/core.hpp"
#include "sympert/numerics.hpp"

namespace sympert {

/// Row/column index sets (1-based, within {1..m}) selecting a symplectic
/// block of a 2m x 2m matrix.
struct SymplecticBlockSpec {
  IndexSet row_set;
  IndexSet col_set;
  std::size_t ambient_half_dim = 0;
};

/// For T = [[W, X], [Y, Z]] with m x m blocks, returns
/// [[W_IJ, X_IJ], [Y_IJ, Z_IJ]] (2|I| x 2|J|).
Matrix symplectic_block(const Matrix& t, const SymplecticBlockSpec& spec);
/// symplectic_block with I = J.
Matrix symplectic_diagonal_block(const Matrix& t, const IndexSet& set);

/// [[W (+) W', X (+) X'], [Y (+) Y', Z (+) Z']].
Matrix symplectic_direct_sum(const Matrix& t, const Matrix& t2);
/// Left fold of symplectic_direct_sum over a non-empty list.
Matrix symplectic_direct_sum(std::span<const Matrix> parts);

/// (p_1..p_k, q_1..q_k) <> (x_1..x_l, y_1..y_l) = (p, x, q, y).
/// Either argument may have zero columns.
Matrix symplectic_concat(const Matrix& m, const Matrix& n);
/// Inverse of symplectic_concat: splits a 2n x 2(k+l) frame into its first k
/// and last l canonical pairs.
std::pair<Matrix, Matrix> symplectic_split(const Matrix& frame, std::size_t k);

struct SymplecticCheck {
  bool pass = false;
  double residual = 0.0;  ///< ||M^T J_2n M - J_2k||
};

struct OrthoSymplecticCheck {
  bool pass = false;
  double orthogonality = 0.0;  ///< ||Q^T Q - I||
  double symplecticity = 0.0;  ///< ||Q^T J Q - J||
};

/// 1e-8 * dim: the predicates' default tolerance.
inline double default_tolerance(std::size_t dim) { return 1e-8 * static_cast<double>(dim); }

/// Frame test M^T J_2n M = J_2k for a 2n x 2k matrix with k <= n.
SymplecticCheck is_symplectic(const Matrix& m, double tol);
OrthoSymplecticCheck is_orthosymplectic(const Matrix& q, double tol);

/// [[X, Y], [-Y, X]] from a unitary X + iY. Throws DomainError when the
/// input is not unitary to 1e-10.
Matrix orthosymplectic_from_unitary(const ComplexPair& u);

/// S^{-1} = -J S^T J for a symplectic S (no general inversion).
Matrix symplectic_inverse(const Matrix& s);

/// ||M^T J_2n N||: zero iff M <> N is a symplectic frame (for symplectic M, N).
double concat_compatibility(const Matrix& m, const Matrix& n);

}  // namespace sympert
