#pragma once

// Test-only generators and oracles. Nothing here calls into the code paths
// it is used to check (no Gram-Schmidt, no Jacobi, no unitary parameterization).

#include <cmath>
#include <cstdint>
#include <random>

#include "sympert/core.hpp"

namespace testing {

using sympert::Matrix;

inline Matrix gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (double& x : m.data()) x = g(rng);
  return m;
}

inline Matrix random_spd(std::size_t dim, std::mt19937_64& rng) {
  const Matrix b = gaussian(dim, dim, rng);
  Matrix a = b.transpose() * b;
  for (std::size_t i = 0; i < dim; ++i) a(i, i) += static_cast<double>(dim);
  return a;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

/// J_2n written out entry by entry.
inline Matrix explicit_form(std::size_t n) {
  Matrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return j;
}

/// max |(M^T J M - J)_ij| with both forms materialized.
inline double symplectic_defect(const Matrix& m) {
  const std::size_t n = m.rows() / 2;
  const std::size_t k = m.cols() / 2;
  return max_abs_diff(m.transpose() * explicit_form(n) * m, explicit_form(k));
}

/// Largest singular value by power iteration on M^T M.
inline double power_norm(const Matrix& m, int iters = 2000) {
  std::vector<double> v(m.cols(), 1.0);
  double sigma = 0.0;
  const Matrix g = m.transpose() * m;
  for (int it = 0; it < iters; ++it) {
    std::vector<double> w(v.size(), 0.0);
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) w[i] += g(i, j) * v[j];
    double nw = 0.0;
    for (double x : w) nw += x * x;
    nw = std::sqrt(nw);
    if (nw == 0.0) return 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i] / nw;
    sigma = std::sqrt(nw);
  }
  return sigma;
}

/// Random orthosymplectic matrix as a product of elementary generators:
/// rotations in (e_j, e_{n+j}), and the paired rotations acting on
/// (e_i, e_j) and (e_{n+i}, e_{n+j}) simultaneously.
inline Matrix random_orthosymplectic(std::size_t n, std::mt19937_64& rng, int factors = 40) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  Matrix q = Matrix::identity(2 * n);
  for (int f = 0; f < factors; ++f) {
    Matrix g = Matrix::identity(2 * n);
    const double th = angle(rng);
    const double c = std::cos(th), s = std::sin(th);
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    if (n == 1 || f % 2 == 0) {
      g(i, i) = c;
      g(i, n + i) = s;
      g(n + i, i) = -s;
      g(n + i, n + i) = c;
    } else {
      if (j == i) j = (i + 1) % n;
      g(i, i) = c;
      g(i, j) = -s;
      g(j, i) = s;
      g(j, j) = c;
      g(n + i, n + i) = c;
      g(n + i, n + j) = -s;
      g(n + j, n + i) = s;
      g(n + j, n + j) = c;
    }
    q = q * g;
  }
  return q;
}

/// Random symplectic matrix from shears [[I, S], [0, I]], [[I, 0], [S, I]]
/// (S symmetric) and orthosymplectic rotations.
inline Matrix random_symplectic_shears(std::size_t n, std::mt19937_64& rng, double scale = 0.5) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix m = random_orthosymplectic(n, rng, 10);
  for (int f = 0; f < 4; ++f) {
    Matrix shear = Matrix::identity(2 * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        const double x = g(rng);
        if (f % 2 == 0) {
          shear(a, n + b) = x;
          shear(b, n + a) = x;
        } else {
          shear(n + a, b) = x;
          shear(n + b, a) = x;
        }
      }
    }
    m = m * shear;
  }
  return m;
}

}  // namespace testing
