#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sympert/core.hpp"

namespace sympert {

/// S^T A S = D (+) D with S symplectic and D ascending.
struct WilliamsonResult {
  Matrix S;
  std::vector<double> D;
  ClusterStructure clusters;
  double residual_diag = 0.0;   ///< ||S^T A S - D (+) D||
  double residual_sympl = 0.0;  ///< ||S^T J S - J||
};

/// Largest condition number williamson_decompose accepts.
inline constexpr double kMaxCondition = 1e12;

/// Williamson normal form of a symmetric positive definite 2n x 2n matrix.
///
/// With R = A^{-1/2} the matrix K = R J R is skew-symmetric and -K^2 has
/// eigenvalues 1/d_j^2, each twice. Each eigenspace is split into canonical
/// pairs (u, -d K u), which gives an orthogonal O with
/// O^T K O = [[0, D^{-1}], [-D^{-1}, 0]], and S = R O (D^{1/2} (+) D^{1/2}).
///
/// Throws NotPositiveDefinite, NumericError when kappa(A) > 1e12 or when an
/// eigenspace of -K^2 cannot be split into pairs.
WilliamsonResult williamson_decompose(const Matrix& a, double cluster_tol = kDefaultClusterTol);

/// Symplectic eigenvalues from the spectrum of (A^{1/2} J A^{1/2})^T (A^{1/2} J A^{1/2}),
/// without forming S. Ascending.
std::vector<double> symplectic_spectrum_oracle(const Matrix& a);

/// K1 (L (+) L^{-1}) K2 with K1, K2 random orthosymplectic and L diagonal,
/// entries log-uniform in [1, conditioning].
Matrix random_symplectic(std::size_t n, std::uint64_t seed, double conditioning);

/// Gaussian symmetric matrix scaled to unit spectral norm.
Matrix random_symmetric(std::size_t dim, std::uint64_t seed);

struct InstanceSpec {
  std::size_t n = 0;
  std::vector<double> spectrum;  ///< ascending, positive
  std::uint64_t seed = 0;
  double conditioning = 1.0;
};

struct Instance {
  Matrix A;
  Matrix S_true;  ///< S_true^T A S_true = D (+) D
};

/// A = G^{-T} (D (+) D) G^{-1} for G = random_symplectic(n, seed, conditioning).
Instance make_instance(const InstanceSpec& spec);

}  // namespace sympert
