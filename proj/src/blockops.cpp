#include "sympert/blockops.hpp"

#include <string>
#include <vector>

namespace sympert {

namespace {

std::size_t even_half(std::size_t count, const char* what) {
  if (count % 2 != 0) throw DomainError(std::string(what) + ": expected an even dimension");
  return count / 2;
}

// Positions of I within the first half and of I shifted into the second half.
std::vector<std::size_t> doubled(const IndexSet& set, std::size_t m) {
  std::vector<std::size_t> out = set.zero_based();
  const std::size_t k = out.size();
  for (std::size_t a = 0; a < k; ++a) out.push_back(out[a] + m);
  return out;
}

}  // namespace

Matrix symplectic_block(const Matrix& t, const SymplecticBlockSpec& spec) {
  const std::size_t m = require_even_square(t, "symplectic_block");
  if (spec.ambient_half_dim != m) throw DomainError("symplectic_block: ambient half dimension does not match T");
  if (spec.row_set.max() > m || spec.col_set.max() > m) {
    throw DomainError("symplectic_block: index outside {1.." + std::to_string(m) + "}");
  }
  const auto rows = doubled(spec.row_set, m);
  const auto cols = doubled(spec.col_set, m);
  return t.select(rows, cols);
}

Matrix symplectic_diagonal_block(const Matrix& t, const IndexSet& set) {
  return symplectic_block(t, {set, set, t.rows() / 2});
}

Matrix symplectic_direct_sum(const Matrix& t, const Matrix& t2) {
  const std::size_t m = require_even_square(t, "symplectic_direct_sum");
  const std::size_t m2 = require_even_square(t2, "symplectic_direct_sum");
  const std::size_t h = m + m2;
  Matrix out(2 * h, 2 * h);
  // Map half-indices of each operand to their positions in the result.
  auto place = [&](const Matrix& src, std::size_t half, std::size_t offset) {
    auto pos = [&](std::size_t i) { return i < half ? offset + i : h + offset + (i - half); };
    for (std::size_t i = 0; i < 2 * half; ++i)
      for (std::size_t j = 0; j < 2 * half; ++j) out(pos(i), pos(j)) = src(i, j);
  };
  place(t, m, 0);
  place(t2, m2, m);
  return out;
}

Matrix symplectic_direct_sum(std::span<const Matrix> parts) {
  if (parts.empty()) throw DomainError("symplectic_direct_sum: empty list");
  Matrix acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = symplectic_direct_sum(acc, parts[k]);
  return acc;
}

Matrix symplectic_concat(const Matrix& m, const Matrix& n) {
  const std::size_t k = even_half(m.cols(), "symplectic_concat");
  const std::size_t l = even_half(n.cols(), "symplectic_concat");
  if (k == 0) return n;
  if (l == 0) return m;
  if (m.rows() != n.rows()) throw DomainError("symplectic_concat: row counts differ");
  const std::size_t rows = m.rows();
  Matrix out(rows, 2 * (k + l));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      out(i, a) = m(i, a);
      out(i, k + l + a) = m(i, k + a);
    }
    for (std::size_t b = 0; b < l; ++b) {
      out(i, k + b) = n(i, b);
      out(i, 2 * k + l + b) = n(i, l + b);
    }
  }
  return out;
}

std::pair<Matrix, Matrix> symplectic_split(const Matrix& frame, std::size_t k) {
  const std::size_t total = even_half(frame.cols(), "symplectic_split");
  if (k > total) throw DomainError("symplectic_split: split point beyond frame width");
  const std::size_t l = total - k;
  std::vector<std::size_t> left, right;
  for (std::size_t a = 0; a < k; ++a) left.push_back(a);
  for (std::size_t a = 0; a < k; ++a) left.push_back(total + a);
  for (std::size_t b = 0; b < l; ++b) right.push_back(k + b);
  for (std::size_t b = 0; b < l; ++b) right.push_back(total + k + b);
  return {frame.select_columns(left), frame.select_columns(right)};
}

SymplecticCheck is_symplectic(const Matrix& m, double tol) {
  const std::size_t n = even_half(m.rows(), "is_symplectic");
  const std::size_t k = even_half(m.cols(), "is_symplectic");
  if (n == 0 || k == 0 || k > n) throw DomainError("is_symplectic: need a 2n x 2k frame with 0 < k <= n");
  const Matrix form = m.transpose() * SymplecticForm(n).apply_left(m);
  SymplecticCheck out;
  out.residual = spectral_norm(form - SymplecticForm(k).matrix());
  out.pass = out.residual <= tol;
  return out;
}

OrthoSymplecticCheck is_orthosymplectic(const Matrix& q, double tol) {
  const std::size_t n = require_even_square(q, "is_orthosymplectic");
  const Matrix qt = q.transpose();
  OrthoSymplecticCheck out;
  out.orthogonality = spectral_norm(qt * q - Matrix::identity(2 * n));
  out.symplecticity = spectral_norm(qt * SymplecticForm(n).apply_left(q) - SymplecticForm(n).matrix());
  out.pass = out.orthogonality <= tol && out.symplecticity <= tol;
  return out;
}

Matrix orthosymplectic_from_unitary(const ComplexPair& u) {
  if (!u.re.is_square() || u.re.rows() == 0 || u.im.rows() != u.re.rows() || u.im.cols() != u.re.cols()) {
    throw DomainError("orthosymplectic_from_unitary: expected square real and imaginary parts of equal size");
  }
  if (unitarity_defect(u) > 1e-10) throw DomainError("orthosymplectic_from_unitary: X + iY is not unitary");
  const std::size_t n = u.rows();
  Matrix q(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      q(i, j) = u.re(i, j);
      q(i, n + j) = u.im(i, j);
      q(n + i, j) = -u.im(i, j);
      q(n + i, n + j) = u.re(i, j);
    }
  }
  return q;
}

Matrix symplectic_inverse(const Matrix& s) {
  const std::size_t n = require_even_square(s, "symplectic_inverse");
  const SymplecticForm j(n);
  return j.apply_right(j.apply_left(s.transpose())) * -1.0;
}

double concat_compatibility(const Matrix& m, const Matrix& n) {
  const std::size_t half = even_half(m.rows(), "concat_compatibility");
  even_half(m.cols(), "concat_compatibility");
  even_half(n.cols(), "concat_compatibility");
  if (n.rows() != m.rows()) throw DomainError("concat_compatibility: row counts differ");
  if (half == 0) throw DomainError("concat_compatibility: empty frame");
  return spectral_norm(m.transpose() * SymplecticForm(half).apply_left(n));
}

}  // namespace sympert
