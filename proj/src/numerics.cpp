#include "sympert/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

namespace sympert {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagRelTol = 1e-14;
constexpr double kSymmetryRelTol = 1e-10;

constexpr std::uint64_t kTagUnitary = 0x756e6974ULL;

double off_diagonal_mass(const Matrix& m) {
  double s = 0.0;
  for (std::size_t p = 0; p < m.rows(); ++p)
    for (std::size_t q = p + 1; q < m.cols(); ++q) s += m(p, q) * m(p, q);
  return std::sqrt(2.0 * s);
}

void jacobi_rotate(Matrix& m, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = m(p, q);
  const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = m.rows();

  for (std::size_t k = 0; k < n; ++k) {
    const double mkp = m(k, p);
    const double mkq = m(k, q);
    m(k, p) = c * mkp - s * mkq;
    m(k, q) = s * mkp + c * mkq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double mpk = m(p, k);
    const double mqk = m(q, k);
    m(p, k) = c * mpk - s * mqk;
    m(q, k) = s * mpk + c * mqk;
  }
  m(p, q) = 0.0;
  m(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

using ComplexColumn = std::vector<std::complex<double>>;

std::complex<double> inner(const ComplexColumn& a, const ComplexColumn& b) {
  std::complex<double> s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

double norm(const ComplexColumn& a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen sym_eigen(const Matrix& a) {
  require_square(a, "sym_eigen");
  const std::size_t n = a.rows();
  const double scale = frobenius_norm(a);

  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) asym += 2.0 * (a(i, j) - a(j, i)) * (a(i, j) - a(j, i));
  if (std::sqrt(asym) > kSymmetryRelTol * scale) throw DomainError("sym_eigen: input is not symmetric");

  Matrix m = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = 0.5 * (a(i, j) + a(j, i));
  Matrix v = Matrix::identity(n);

  const double threshold = kOffDiagRelTol * scale;
  bool converged = off_diagonal_mass(m) <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (m(p, q) != 0.0) jacobi_rotate(m, v, p, q);
    converged = off_diagonal_mass(m) <= threshold;
  }
  if (!converged) throw NumericError("sym_eigen: Jacobi did not converge in 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return m(x, x) < m(y, y); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = m(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Matrix pd_power(const SymmetricEigen& eig, double p) {
  if (p != 0.5 && p != -0.5 && p != -1.0) {
    throw DomainError("pd_power: exponent must be one of 1/2, -1/2, -1");
  }
  const std::size_t n = eig.values.size();
  std::vector<double> f(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.values[k];
    if (!(lambda > 0.0)) {
      throw NotPositiveDefinite("pd_power: eigenvalue " + std::to_string(lambda) + " is not positive");
    }
    f[k] = p == 0.5 ? std::sqrt(lambda) : p == -0.5 ? 1.0 / std::sqrt(lambda) : 1.0 / lambda;
  }
  const Matrix& v = eig.vectors;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += v(i, k) * f[k] * v(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

Matrix pd_power(const Matrix& a, double p) { return pd_power(sym_eigen(a), p); }

ComplexPair complex_gram_schmidt(const ComplexPair& z, double min_norm) {
  if (z.re.rows() != z.im.rows() || z.re.cols() != z.im.cols()) {
    throw DomainError("complex_gram_schmidt: real and imaginary parts differ in shape");
  }
  const std::size_t rows = z.rows();
  const std::size_t cols = z.cols();
  if (cols > rows) throw DomainError("complex_gram_schmidt: more columns than rows");

  std::vector<ComplexColumn> q;
  q.reserve(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    ComplexColumn w(rows);
    for (std::size_t i = 0; i < rows; ++i) w[i] = {z.re(i, j), z.im(i, j)};
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qk : q) {
        const auto c = inner(qk, w);
        for (std::size_t i = 0; i < rows; ++i) w[i] -= c * qk[i];
      }
    }
    const double nw = norm(w);
    if (nw < min_norm) {
      throw DegenerateInput("complex_gram_schmidt: column " + std::to_string(j + 1) +
                            " is numerically dependent on its predecessors");
    }
    for (auto& x : w) x /= nw;
    q.push_back(std::move(w));
  }

  ComplexPair out{Matrix(rows, cols), Matrix(rows, cols)};
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      out.re(i, j) = q[j][i].real();
      out.im(i, j) = q[j][i].imag();
    }
  }
  return out;
}

ComplexPair random_unitary(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("random_unitary: n must be positive");
  auto rng = detail::make_rng(seed, kTagUnitary);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexPair z{Matrix(n, n), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      z.re(i, j) = gauss(rng);
      z.im(i, j) = gauss(rng);
    }
  }
  return complex_gram_schmidt(z);
}

double unitarity_defect(const ComplexPair& u) {
  const Matrix xt = u.re.transpose();
  const Matrix yt = u.im.transpose();
  const Matrix gram = xt * u.re + yt * u.im - Matrix::identity(u.cols());
  const Matrix skew = xt * u.im - yt * u.re;
  return std::max(spectral_norm(gram), spectral_norm(skew));
}

double determinant(const Matrix& a) {
  require_square(a, "determinant");
  Matrix lu = a;
  const std::size_t n = lu.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (lu(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

SlopeFit fit_loglog_slope(std::span<const double> ts, std::span<const double> ys, double drop_below) {
  if (ts.size() != ys.size()) throw DomainError("fit_loglog_slope: ts and ys differ in length");
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] > 0.0)) throw DomainError("fit_loglog_slope: scales must be positive");
    if (!(ys[k] > drop_below) || !std::isfinite(ys[k])) continue;
    lx.push_back(std::log(ts[k]));
    ly.push_back(std::log(ys[k]));
  }
  if (lx.size() < 3) {
    throw InsufficientData("fit_loglog_slope: " + std::to_string(lx.size()) + " points above the floor, need 3");
  }
  const double m = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) throw InsufficientData("fit_loglog_slope: all retained scales coincide");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = lx.size();
  return fit;
}

namespace detail {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  // splitmix64 finalizer over the combined word
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t tag) { return std::mt19937_64(derive_seed(seed, tag)); }

}  // namespace detail

}  // namespace sympert
