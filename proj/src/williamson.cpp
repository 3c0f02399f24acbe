#include "sympert/williamson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sympert/blockops.hpp"
#include "sympert/numerics.hpp"

namespace sympert {

namespace {

constexpr std::uint64_t kTagLeftUnitary = 1;
constexpr std::uint64_t kTagRightUnitary = 2;
constexpr std::uint64_t kTagStretch = 3;
constexpr std::uint64_t kTagSymmetric = 4;

// Eigenvalues of -K^2 closer than this (relative) are treated as one eigenspace.
constexpr double kGroupRelTol = 1e-9;
// A candidate direction whose residual after projection is below this is
// already spanned by the chosen pairs.
constexpr double kSpannedTol = 1e-4;

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void project_out(Vec& w, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const double c = dot(b, w);
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c * b[k];
    }
  }
}

void normalize(Vec& w) {
  const double nw = std::sqrt(dot(w, w));
  for (auto& x : w) x /= nw;
}

Vec mat_vec(const Matrix& m, const Vec& v) {
  Vec out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

Matrix symmetrized(const Matrix& m) {
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) out(i, j) = out(j, i) = 0.5 * (m(i, j) + m(j, i));
  return out;
}

SymmetricEigen checked_pd_eigen(const Matrix& a, const char* what) {
  require_even_square(a, what);
  auto eig = sym_eigen(a);
  if (!(eig.values.front() > 0.0)) {
    throw NotPositiveDefinite(std::string(what) + ": matrix is not positive definite (min eigenvalue " +
                              std::to_string(eig.values.front()) + ")");
  }
  return eig;
}

struct CanonicalPair {
  double d;
  Vec u;
  Vec v;
};

}  // namespace

WilliamsonResult williamson_decompose(const Matrix& a, double cluster_tol) {
  const std::size_t n = require_even_square(a, "williamson_decompose");
  const auto eig = checked_pd_eigen(a, "williamson_decompose");
  const double kappa = eig.values.back() / eig.values.front();
  if (kappa > kMaxCondition) {
    throw NumericError("williamson_decompose: condition number " + std::to_string(kappa) + " exceeds 1e12");
  }

  const SymplecticForm form(n);
  const Matrix r = pd_power(eig, -0.5);
  Matrix k = r * form.apply_left(r);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    k(i, i) = 0.0;
    for (std::size_t j = i + 1; j < 2 * n; ++j) {
      const double x = 0.5 * (k(i, j) - k(j, i));
      k(i, j) = x;
      k(j, i) = -x;
    }
  }
  const auto g = sym_eigen(symmetrized(k.transpose() * k));

  // Walk the spectrum of -K^2 from the top (smallest d) down, one
  // eigenspace at a time, peeling off canonical pairs (u, -d K u).
  std::vector<Vec> chosen;
  std::vector<CanonicalPair> pairs;
  const std::size_t dim = 2 * n;
  const double lambda_max = g.values.back();
  std::size_t hi = dim;
  std::size_t group = 0;
  while (hi > 0) {
    std::size_t lo = hi - 1;
    while (lo > 0) {
      const double gap = g.values[lo] - g.values[lo - 1];
      if (gap > std::max(kGroupRelTol * g.values[lo], 1e-13 * lambda_max)) break;
      --lo;
    }
    ++group;
    std::vector<Vec> candidates;
    for (std::size_t c = lo; c < hi; ++c) candidates.push_back(g.vectors.column(c));

    while (!candidates.empty()) {
      std::size_t best = 0;
      double best_norm = -1.0;
      std::vector<Vec> projected(candidates.size());
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        projected[c] = candidates[c];
        project_out(projected[c], chosen);
        const double nc = std::sqrt(dot(projected[c], projected[c]));
        if (nc > best_norm) {
          best_norm = nc;
          best = c;
        }
      }
      if (best_norm < kSpannedTol) break;
      if (pairs.size() == n) {
        throw NumericError("williamson_decompose: pairing failure in eigenspace " + std::to_string(group) +
                           " (more directions than canonical pairs)");
      }
      Vec u = std::move(projected[best]);
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
      normalize(u);
      Vec ku = mat_vec(k, u);
      const double lambda = dot(ku, ku);
      const double d = 1.0 / std::sqrt(lambda);
      Vec v(dim);
      for (std::size_t i = 0; i < dim; ++i) v[i] = -d * ku[i];
      chosen.push_back(u);
      project_out(v, chosen);
      normalize(v);
      chosen.push_back(v);
      pairs.push_back({d, std::move(u), std::move(v)});
    }
    hi = lo;
  }
  if (pairs.size() != n) {
    throw NumericError("williamson_decompose: pairing failure in eigenspace " + std::to_string(group) + " (found " +
                       std::to_string(pairs.size()) + " of " + std::to_string(n) + " canonical pairs)");
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.d < y.d; });

  WilliamsonResult out;
  out.D.resize(n);
  Matrix o(dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    out.D[j] = pairs[j].d;
    o.set_column(j, pairs[j].u);
    o.set_column(n + j, pairs[j].v);
  }
  Vec scale(dim);
  for (std::size_t j = 0; j < n; ++j) scale[j] = scale[n + j] = std::sqrt(out.D[j]);
  out.S = r * o * Matrix::diagonal(scale);

  Vec dd(dim);
  for (std::size_t j = 0; j < n; ++j) dd[j] = dd[n + j] = out.D[j];
  out.residual_diag = spectral_norm(out.S.transpose() * a * out.S - Matrix::diagonal(dd));
  out.residual_sympl = spectral_norm(out.S.transpose() * form.apply_left(out.S) - form.matrix());
  out.clusters = build_clusters(out.D, cluster_tol);
  return out;
}

std::vector<double> symplectic_spectrum_oracle(const Matrix& a) {
  const std::size_t n = require_even_square(a, "symplectic_spectrum_oracle");
  const auto eig = checked_pd_eigen(a, "symplectic_spectrum_oracle");
  const Matrix m = pd_power(eig, 0.5);
  const Matrix k = m * SymplecticForm(n).apply_left(m);
  const auto kk = sym_eigen(symmetrized(k.transpose() * k));
  std::vector<double> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = std::sqrt(0.5 * (kk.values[2 * j] + kk.values[2 * j + 1]));
  }
  return d;
}

Matrix random_symplectic(std::size_t n, std::uint64_t seed, double conditioning) {
  if (n == 0) throw DomainError("random_symplectic: n must be positive");
  if (!(conditioning >= 1.0) || !std::isfinite(conditioning)) {
    throw DomainError("random_symplectic: conditioning must be >= 1");
  }
  const Matrix k1 = orthosymplectic_from_unitary(random_unitary(n, detail::derive_seed(seed, kTagLeftUnitary)));
  const Matrix k2 = orthosymplectic_from_unitary(random_unitary(n, detail::derive_seed(seed, kTagRightUnitary)));
  auto rng = detail::make_rng(seed, kTagStretch);
  std::uniform_real_distribution<double> unif(0.0, std::log(conditioning));
  Vec stretch(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    const double l = std::exp(unif(rng));
    stretch[j] = l;
    stretch[n + j] = 1.0 / l;
  }
  return k1 * Matrix::diagonal(stretch) * k2;
}

Matrix random_symmetric(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw DomainError("random_symmetric: dim must be positive");
  auto rng = detail::make_rng(seed, kTagSymmetric);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix b(dim, dim);
  for (double& x : b.data()) x = gauss(rng);
  Matrix h(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) h(i, j) = h(j, i) = 0.5 * (b(i, j) + b(j, i));
  return h * (1.0 / spectral_norm(h));
}

Instance make_instance(const InstanceSpec& spec) {
  if (spec.n == 0 || spec.spectrum.size() != spec.n) {
    throw DomainError("make_instance: spectrum must hold n entries");
  }
  for (std::size_t j = 0; j < spec.n; ++j) {
    if (!(spec.spectrum[j] > 0.0) || !std::isfinite(spec.spectrum[j])) {
      throw DomainError("make_instance: spectrum entries must be positive");
    }
    if (j > 0 && spec.spectrum[j] < spec.spectrum[j - 1]) throw DomainError("make_instance: spectrum must be ascending");
  }
  Instance inst;
  inst.S_true = random_symplectic(spec.n, spec.seed, spec.conditioning);
  const Matrix g_inv = symplectic_inverse(inst.S_true);
  Vec dd(2 * spec.n);
  for (std::size_t j = 0; j < spec.n; ++j) dd[j] = dd[spec.n + j] = spec.spectrum[j];
  inst.A = symmetrized(g_inv.transpose() * Matrix::diagonal(dd) * g_inv);
  return inst;
}

}  // namespace sympert
