#include "sympert/perturb.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "sympert/blockops.hpp"
#include "sympert/williamson.hpp"

namespace sympert {

namespace {

std::size_t check_pair(const Matrix& s, const Matrix& s_tilde, const ClusterStructure& clusters, const char* what) {
  const std::size_t n = require_even_square(s, what);
  if (s_tilde.rows() != s.rows() || s_tilde.cols() != s.cols()) {
    throw DomainError(std::string(what) + ": S and S~ differ in shape");
  }
  if (clusters.n != n) throw DomainError(std::string(what) + ": cluster structure does not match dimension");
  const double tol = 1e-8 * static_cast<double>(n);
  if (!is_symplectic(s, tol).pass) throw DomainError(std::string(what) + ": S is not symplectic");
  if (!is_symplectic(s_tilde, tol).pass) throw DomainError(std::string(what) + ": S~ is not symplectic");
  return n;
}

Matrix relative_transform(const Matrix& s, const Matrix& s_tilde) { return symplectic_inverse(s) * s_tilde; }

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

}  // namespace

double PerturbationReport::max_offdiag() const {
  double m = 0.0;
  for (const auto& [key, value] : offdiag) m = std::max(m, value);
  return m;
}
double PerturbationReport::max_sym_defect() const { return max_of(sym_defect); }
double PerturbationReport::max_antisym_defect() const { return max_of(antisym_defect); }
double PerturbationReport::max_ortho_defect() const { return max_of(ortho_defect); }
double PerturbationReport::max_sympl_defect() const { return max_of(sympl_defect); }

double CorrectionResult::max_residual() const { return max_of(residuals); }

PerturbationReport perturbation_report(const Matrix& a, const Matrix& h, const Matrix& s, const Matrix& s_tilde,
                                       const ClusterStructure& clusters) {
  const std::size_t n = check_pair(s, s_tilde, clusters, "perturbation_report");
  if (a.rows() != 2 * n || !a.is_square() || h.rows() != 2 * n || !h.is_square()) {
    throw DomainError("perturbation_report: A and H must be 2n x 2n");
  }
  const Matrix c = relative_transform(s, s_tilde);
  const std::size_t r = clusters.count();

  PerturbationReport rep;
  rep.h_norm = spectral_norm(h);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      rep.offdiag[{i, j}] = spectral_norm(symplectic_block(c, {clusters.alphas[i], clusters.alphas[j], n}));
    }
    const auto alpha = clusters.alphas[i].zero_based();
    const auto beta = clusters.betas[i].zero_based();
    rep.sym_defect.push_back(spectral_norm(c.select(alpha, alpha) - c.select(beta, beta)));
    rep.antisym_defect.push_back(spectral_norm(c.select(alpha, beta) + c.select(beta, alpha)));

    const Matrix b = symplectic_diagonal_block(c, clusters.alphas[i]);
    const std::size_t k = clusters.alphas[i].size();
    const Matrix bt = b.transpose();
    rep.ortho_defect.push_back(spectral_norm(bt * b - Matrix::identity(2 * k)));
    const SymplecticForm form(k);
    rep.sympl_defect.push_back(spectral_norm(bt * form.apply_left(b) - form.matrix()));
  }
  return rep;
}

AlignmentResult align_orthosymplectic(const Matrix& s, const Matrix& s_tilde, const ClusterStructure& clusters) {
  check_pair(s, s_tilde, clusters, "align_orthosymplectic");
  const Matrix c = relative_transform(s, s_tilde);

  AlignmentResult out;
  for (std::size_t i = 0; i < clusters.count(); ++i) {
    const auto alpha = clusters.alphas[i].zero_based();
    const auto beta = clusters.betas[i].zero_based();
    const ComplexPair z{c.select(alpha, alpha), c.select(alpha, beta)};
    out.blocks.push_back(orthosymplectic_from_unitary(complex_gram_schmidt(z)));
  }
  out.Q = symplectic_direct_sum(out.blocks);
  out.residual = spectral_norm(s_tilde - s * out.Q);
  return out;
}

Matrix nearest_diagonalizer(const Matrix& a, const Matrix& m, const Matrix& s_tilde,
                            const ClusterStructure& clusters) {
  const std::size_t n = require_even_square(m, "nearest_diagonalizer");
  if (!a.is_square() || a.rows() != 2 * n) throw DomainError("nearest_diagonalizer: A must be 2n x 2n");
  const Matrix x = m.transpose() * a * m;
  std::vector<double> dd(2 * n);
  for (std::size_t j = 0; j < n; ++j) dd[j] = dd[n + j] = 0.5 * (x(j, j) + x(n + j, n + j));
  const double residual = spectral_norm(x - Matrix::diagonal(dd));
  if (residual > 1e-8 * spectral_norm(a) * static_cast<double>(n)) {
    throw DomainError("nearest_diagonalizer: M does not diagonalize A (residual " + std::to_string(residual) + ")");
  }
  const auto alignment = align_orthosymplectic(m, s_tilde, clusters);
  return m * alignment.Q;
}

EsrResult esr(const Matrix& w, double iso_tol) {
  if (w.cols() != 2 || w.rows() == 0 || w.rows() % 2 != 0) throw DomainError("esr: expected a 2n x 2 matrix");
  const std::size_t n = w.rows() / 2;
  const Matrix jw = SymplecticForm(n).apply_left(w);
  double pivot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    pivot += w(i, 0) * jw(i, 1);
    nu += w(i, 0) * w(i, 0);
    nv += w(i, 1) * w(i, 1);
  }
  const double denom = std::sqrt(nu) * std::sqrt(nv);
  if (!(denom > 0.0) || std::abs(pivot) / denom <= iso_tol) {
    throw IsotropicRange("esr: range is isotropic (u^T J v = " + std::to_string(pivot) + ")");
  }
  EsrResult out;
  out.R = Matrix::from_rows({{1.0, 0.0}, {0.0, pivot}});
  out.S = w;
  for (std::size_t i = 0; i < 2 * n; ++i) out.S(i, 1) = w(i, 1) / pivot;
  return out;
}

CorrectionResult symplectic_correction(const Matrix& s, const Matrix& s_tilde, const ClusterStructure& clusters,
                                       double iso_tol) {
  check_pair(s, s_tilde, clusters, "symplectic_correction");
  const Matrix c = relative_transform(s, s_tilde);

  CorrectionResult out;
  for (std::size_t i = 0; i < clusters.count(); ++i) {
    const Matrix b = symplectic_diagonal_block(c, clusters.alphas[i]);
    const std::size_t k = clusters.alphas[i].size();
    const SymplecticForm form(k);
    Matrix frame(2 * k, 0);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t cols[] = {j, k + j};
      Matrix w = b.select_columns(cols);
      if (j > 0) {
        // W = M - F J_2j^T F^T J M; the correction makes F^T J W vanish.
        const Matrix coupling = frame.transpose() * form.apply_left(w);
        w += frame * SymplecticForm(j).apply_left(coupling);
      }
      try {
        frame = symplectic_concat(frame, esr(w, iso_tol).S);
      } catch (const IsotropicRange& e) {
        throw IsotropicRange("symplectic_correction: cluster " + std::to_string(i + 1) + ", step " +
                             std::to_string(j + 1) + ": " + e.what());
      }
    }
    out.residuals.push_back(spectral_norm(b - frame));
    out.blocks.push_back(std::move(frame));
  }
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 2) throw DomainError("logspace: need 0 < lo <= hi and n >= 2");
  std::vector<double> out(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

struct PointResult {
  bool valid = false;
  std::vector<double> metrics;
  double q_defect = 0.0;
  double n_defect = 0.0;
};

PointResult evaluate_point(const Matrix& a, const Matrix& h, const Matrix& s, const std::vector<double>& d,
                           const ClusterStructure& clusters, double t, double cluster_tol) {
  PointResult out;
  Matrix at = a + h * t;
  WilliamsonResult perturbed;
  try {
    perturbed = williamson_decompose(at, cluster_tol);
  } catch (const NotPositiveDefinite&) {
    return out;
  }
  const Matrix& s_tilde = perturbed.S;
  const std::size_t n = clusters.n;

  const auto report = perturbation_report(a, h * t, s, s_tilde, clusters);
  const auto alignment = align_orthosymplectic(s, s_tilde, clusters);
  const auto correction = symplectic_correction(s, s_tilde, clusters);
  double drift = 0.0;
  for (std::size_t j = 0; j < n; ++j) drift = std::max(drift, std::abs(perturbed.D[j] - d[j]));

  out.valid = true;
  out.metrics = {report.max_offdiag(),      report.max_sym_defect(), report.max_antisym_defect(),
                 report.max_ortho_defect(), report.max_sympl_defect(), alignment.residual,
                 correction.max_residual(), drift};

  const auto qc = is_orthosymplectic(alignment.Q, 0.0);
  out.q_defect = std::max(qc.orthogonality, qc.symplecticity);
  for (const auto& nb : correction.blocks) out.n_defect = std::max(out.n_defect, is_symplectic(nb, 0.0).residual);
  return out;
}

}  // namespace

ScalingStudy scaling_study(const ScalingConfig& config) {
  if (config.ts.empty()) throw DomainError("scaling_study: no scales given");
  for (std::size_t k = 0; k < config.ts.size(); ++k) {
    if (!(config.ts[k] > 0.0)) throw DomainError("scaling_study: scales must be positive");
    if (k > 0 && !(config.ts[k] > config.ts[k - 1])) throw DomainError("scaling_study: scales must be ascending");
  }
  const std::size_t n = config.spectrum.size();
  const Instance inst = make_instance({n, config.spectrum, config.seed, config.conditioning});
  const Matrix h = config.zero_perturbation ? Matrix::zeros(2 * n, 2 * n) : random_symmetric(2 * n, config.seed);
  const WilliamsonResult base = williamson_decompose(inst.A, config.cluster_tol);
  const Matrix& s = inst.S_true;

  // Each point depends only on its own scale; workers share nothing mutable
  // except the slot they own.
  const std::size_t points = config.ts.size();
  std::vector<PointResult> results(points);
  std::vector<std::exception_ptr> errors(points);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < points; k = next++) {
      try {
        results[k] = evaluate_point(inst.A, h, s, base.D, base.clusters, config.ts[k], config.cluster_tol);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(points)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ScalingStudy study;
  study.config = config;
  const auto& names = scaling_metrics();
  for (const auto& name : names) study.curves[name];
  for (std::size_t k = 0; k < points; ++k) {
    if (!results[k].valid) {
      study.dropped_ts.push_back(config.ts[k]);
      continue;
    }
    study.ts.push_back(config.ts[k]);
    for (std::size_t m = 0; m < names.size(); ++m) study.curves[names[m]].push_back(results[k].metrics[m]);
    study.q_defect.push_back(results[k].q_defect);
    study.n_defect.push_back(results[k].n_defect);
  }
  if (study.ts.size() < 3) {
    throw InsufficientData("scaling_study: only " + std::to_string(study.ts.size()) +
                           " scales keep A + tH positive definite, need 3");
  }
  for (const auto& name : names) {
    try {
      study.slopes[name] = fit_loglog_slope(study.ts, study.curves[name], config.drop_below).slope;
    } catch (const InsufficientData&) {
      study.slopes[name] = std::nullopt;
    }
  }
  return study;
}

}  // namespace sympert
