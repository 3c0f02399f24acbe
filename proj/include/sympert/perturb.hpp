#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympert/core.hpp"
#include "sympert/numerics.hpp"

namespace sympert {

/// Block diagnostics of C = S^{-1} S~ against the clusters of A.
/// Cluster indices are 0-based in every container.
struct PerturbationReport {
  /// (i, j), i != j  ->  ||C_{gamma_i gamma_j}||
  std::map<std::pair<std::size_t, std::size_t>, double> offdiag;
  /// ||C_{alpha_i alpha_i} - C_{beta_i beta_i}||
  std::vector<double> sym_defect;
  /// ||C_{alpha_i beta_i} + C_{beta_i alpha_i}||
  std::vector<double> antisym_defect;
  /// ||B_i^T B_i - I|| with B_i = C_{gamma_i gamma_i}
  std::vector<double> ortho_defect;
  /// ||B_i^T J B_i - J||
  std::vector<double> sympl_defect;
  double h_norm = 0.0;

  double max_offdiag() const;
  double max_sym_defect() const;
  double max_antisym_defect() const;
  double max_ortho_defect() const;
  double max_sympl_defect() const;
};

/// Q = Q_1 (+)s ... (+)s Q_r with Q_i in OrSp(2|alpha_i|).
struct AlignmentResult {
  Matrix Q;
  std::vector<Matrix> blocks;
  double residual = 0.0;  ///< ||S~ - S Q||
};

struct CorrectionResult {
  std::vector<Matrix> blocks;     ///< N_i in Sp(2|alpha_i|)
  std::vector<double> residuals;  ///< ||C_{gamma_i gamma_i} - N_i||

  double max_residual() const;
};

struct EsrResult {
  Matrix S;  ///< 2n x 2, symplectic frame
  Matrix R;  ///< diag(1, u^T J v)
};

inline constexpr double kDefaultIsoTol = 1e-12;

/// Throws DomainError when S or S~ is not symplectic at 1e-8 * n or the
/// shapes disagree with the clusters.
PerturbationReport perturbation_report(const Matrix& a, const Matrix& h, const Matrix& s, const Matrix& s_tilde,
                                       const ClusterStructure& clusters);

/// Per cluster, Gram-Schmidt on the columns of C_{alpha alpha} + i C_{alpha beta}
/// gives U + iV, and Q_i = [[U, V], [-V, U]].
AlignmentResult align_orthosymplectic(const Matrix& s, const Matrix& s_tilde, const ClusterStructure& clusters);

/// M Q with Q from align_orthosymplectic(M, S~, clusters). M must diagonalize A.
Matrix nearest_diagonalizer(const Matrix& a, const Matrix& m, const Matrix& s_tilde,
                            const ClusterStructure& clusters);

/// Elementary SR decomposition W = S R of a 2n x 2 matrix W = [u, v].
/// Throws IsotropicRange when |u^T J v| / (||u|| ||v||) <= iso_tol.
EsrResult esr(const Matrix& w, double iso_tol = kDefaultIsoTol);

/// Symplectic frame N_i near each diagonal block C_{gamma_i gamma_i}, built
/// pair by pair: project the next column pair against the frame so far,
/// normalize it with esr and append it by symplectic concatenation.
CorrectionResult symplectic_correction(const Matrix& s, const Matrix& s_tilde, const ClusterStructure& clusters,
                                       double iso_tol = kDefaultIsoTol);

/// Metric names, in CSV column order.
inline const std::vector<std::string>& scaling_metrics() {
  static const std::vector<std::string> names = {
      "offdiag_max",      "sym_defect_max", "antisym_defect_max",      "ortho_defect_max",
      "sympl_defect_max", "align_residual", "correction_residual_max", "spectrum_drift"};
  return names;
}

struct ScalingConfig {
  std::vector<double> spectrum;
  std::uint64_t seed = 0;
  std::vector<double> ts;
  double conditioning = 4.0;
  double drop_below = kDefaultDropBelow;
  double cluster_tol = kDefaultClusterTol;
  /// Zero scales the perturbation to nothing (H = 0); used for floor checks.
  bool zero_perturbation = false;
  unsigned threads = 1;
};

struct ScalingStudy {
  std::vector<double> ts;  ///< valid scales only, ascending
  std::map<std::string, std::vector<double>> curves;
  /// Fitted log-log slope per metric; empty when too few points clear drop_below.
  std::map<std::string, std::optional<double>> slopes;
  /// Scales for which A + tH was not positive definite.
  std::vector<double> dropped_ts;
  /// max(||Q^T Q - I||, ||Q^T J Q - J||) per scale.
  std::vector<double> q_defect;
  /// max_i ||N_i^T J N_i - J|| per scale.
  std::vector<double> n_defect;
  ScalingConfig config;
};

/// Builds (A, S) = make_instance, H = random_symmetric(2n, seed) and for each
/// t records the block metrics of S~(t) = williamson_decompose(A + tH).S.
/// Throws InsufficientData when fewer than 3 scales give a positive definite A + tH.
ScalingStudy scaling_study(const ScalingConfig& config);

/// n logarithmically spaced values from lo to hi inclusive.
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace sympert
