#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "sympert/blockops.hpp"

using namespace sympert;

namespace {

Matrix counting(std::size_t rows, std::size_t cols, double start = 1.0) {
  Matrix m(rows, cols);
  for (std::size_t k = 0; k < m.size(); ++k) m.data()[k] = start + static_cast<double>(k);
  return m;
}

}  // namespace

TEST_CASE("symplectic_block integer examples") {
  const Matrix t = counting(6, 6);
  const Matrix single = symplectic_block(t, {IndexSet{3}, IndexSet{2}, 3});
  CHECK(single == Matrix::from_rows({{14, 17}, {32, 35}}));

  const Matrix pair = symplectic_diagonal_block(t, IndexSet{1, 2});
  CHECK(pair == Matrix::from_rows({{1, 2, 4, 5}, {7, 8, 10, 11}, {19, 20, 22, 23}, {25, 26, 28, 29}}));

  CHECK(symplectic_diagonal_block(t, IndexSet::range(1, 3)) == t);

  const Matrix rect = symplectic_block(t, {IndexSet{1}, IndexSet{2, 3}, 3});
  CHECK(rect == Matrix::from_rows({{2, 3, 5, 6}, {20, 21, 23, 24}}));

  CHECK_THROWS_AS(symplectic_block(t, {IndexSet{4}, IndexSet{1}, 3}), DomainError);
  CHECK_THROWS_AS(symplectic_block(t, {IndexSet{1}, IndexSet{1}, 2}), DomainError);
}

TEST_CASE("symplectic_direct_sum integer example") {
  const Matrix t = counting(4, 4);
  const Matrix t2 = Matrix::from_rows({{17, 18}, {19, 20}});
  const Matrix expected = Matrix::from_rows({{1, 2, 0, 3, 4, 0},
                                             {5, 6, 0, 7, 8, 0},
                                             {0, 0, 17, 0, 0, 18},
                                             {9, 10, 0, 11, 12, 0},
                                             {13, 14, 0, 15, 16, 0},
                                             {0, 0, 19, 0, 0, 20}});
  CHECK(symplectic_direct_sum(t, t2) == expected);

  const Matrix j2 = testing::explicit_form(1);
  CHECK(symplectic_direct_sum(j2, j2) == testing::explicit_form(2));

  const std::vector<Matrix> parts = {j2, j2, j2};
  CHECK(symplectic_direct_sum(parts) == testing::explicit_form(3));

  CHECK_THROWS_AS(symplectic_direct_sum(Matrix(3, 3), j2), DomainError);
}

TEST_CASE("symplectic_concat integer example") {
  const Matrix m = counting(4, 4);
  const Matrix n = counting(4, 2, 17.0);
  const Matrix c = symplectic_concat(m, n);
  REQUIRE(c.rows() == 4);
  REQUIRE(c.cols() == 6);
  const Matrix expected = Matrix::from_rows({{1, 2, 17, 3, 4, 18},
                                             {5, 6, 19, 7, 8, 20},
                                             {9, 10, 21, 11, 12, 22},
                                             {13, 14, 23, 15, 16, 24}});
  CHECK(c == expected);

  CHECK(symplectic_concat(m, Matrix(4, 0)) == m);
  CHECK(symplectic_concat(Matrix(4, 0), n) == n);

  const auto [m2, n2] = symplectic_split(c, 2);
  CHECK(m2 == m);
  CHECK(n2 == n);

  CHECK_THROWS_AS(symplectic_concat(m, Matrix(2, 2)), DomainError);
  CHECK_THROWS_AS(symplectic_concat(m, Matrix(4, 3)), DomainError);
}

TEST_CASE("predicates on fixed inputs") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto cj = is_symplectic(testing::explicit_form(n), 1e-12);
    CHECK(cj.pass);
    CHECK(cj.residual == 0.0);
    CHECK(is_orthosymplectic(Matrix::identity(2 * n), 1e-12).pass);
    CHECK(is_orthosymplectic(testing::explicit_form(n), 1e-12).pass);
  }
  const Matrix squeeze = Matrix::diagonal({2.0, 0.5});
  CHECK(is_symplectic(squeeze, 1e-12).pass);
  CHECK_FALSE(is_symplectic(Matrix::diagonal({2.0, 2.0}), 1e-8).pass);
  CHECK(is_symplectic(Matrix::diagonal({2.0, 2.0}), 1e-8).residual == doctest::Approx(3.0));
  const auto os = is_orthosymplectic(squeeze, 1e-8);
  CHECK_FALSE(os.pass);
  CHECK(os.symplecticity <= 1e-15);
  CHECK(os.orthogonality == doctest::Approx(3.0));

  CHECK_THROWS_AS(is_symplectic(Matrix(3, 2), 1e-8), DomainError);
  CHECK_THROWS_AS(is_symplectic(Matrix(2, 4), 1e-8), DomainError);
}

TEST_CASE("orthosymplectic_from_unitary") {
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(orthosymplectic_from_unitary({Matrix::identity(n), Matrix::zeros(n, n)}) == Matrix::identity(2 * n));
    CHECK(orthosymplectic_from_unitary({Matrix::zeros(n, n), Matrix::identity(n)}) == testing::explicit_form(n));
  }
  const double th = 0.3;
  const Matrix rot =
      orthosymplectic_from_unitary({Matrix::from_rows({{std::cos(th)}}), Matrix::from_rows({{std::sin(th)}})});
  CHECK(rot == Matrix::from_rows({{std::cos(th), std::sin(th)}, {-std::sin(th), std::cos(th)}}));
  CHECK(is_orthosymplectic(rot, 1e-12).pass);

  CHECK_THROWS_AS(orthosymplectic_from_unitary({Matrix::identity(2) * 2.0, Matrix::zeros(2, 2)}), DomainError);
}

TEST_CASE("orthosymplectic representation both directions") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    // Forward: unitary in, orthosymplectic out.
    const auto u = random_unitary(n, 1000 + trial);
    const Matrix q = orthosymplectic_from_unitary(u);
    CHECK(is_orthosymplectic(q, 1e-10 * n).pass);

    // Reverse: an independently generated orthosymplectic matrix has the
    // [[X, Y], [-Y, X]] shape with X + iY unitary.
    const Matrix g = testing::random_orthosymplectic(n, rng);
    const Matrix x = g.select(IndexSet::range(1, n).zero_based(), IndexSet::range(1, n).zero_based());
    const Matrix y = g.select(IndexSet::range(1, n).zero_based(), IndexSet::range(n + 1, n).zero_based());
    const Matrix y_low = g.select(IndexSet::range(n + 1, n).zero_based(), IndexSet::range(1, n).zero_based());
    const Matrix x_low = g.select(IndexSet::range(n + 1, n).zero_based(), IndexSet::range(n + 1, n).zero_based());
    CHECK(testing::max_abs_diff(x, x_low) <= 1e-12);
    CHECK(testing::max_abs_diff(y, y_low * -1.0) <= 1e-12);
    CHECK(unitarity_defect({x, y}) <= 1e-10);
    CHECK(testing::max_abs_diff(orthosymplectic_from_unitary({x, y}), g) <= 1e-12);
  }
  // A non-unitary pair never yields an orthosymplectic block matrix.
  std::mt19937_64 rng2(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix x = testing::gaussian(3, 3, rng2);
    const Matrix y = testing::gaussian(3, 3, rng2);
    Matrix q = Matrix::zeros(6, 6);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        q(i, j) = x(i, j);
        q(i, 3 + j) = y(i, j);
        q(3 + i, j) = -y(i, j);
        q(3 + i, 3 + j) = x(i, j);
      }
    CHECK_FALSE(is_orthosymplectic(q, 1e-8).pass);
    CHECK_THROWS_AS(orthosymplectic_from_unitary({x, y}), DomainError);
  }
}

TEST_CASE("direct sum closure") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + trial % 5, l = 1 + (trial / 5) % 5;
    const Matrix t = testing::random_symplectic_shears(k, rng);
    const Matrix t2 = testing::random_symplectic_shears(l, rng);
    const Matrix sum = symplectic_direct_sum(t, t2);
    CHECK(testing::symplectic_defect(sum) <= 1e-10 * std::max(1.0, spectral_norm(sum) * spectral_norm(sum)));

    const Matrix q1 = testing::random_orthosymplectic(k, rng);
    const Matrix q2 = testing::random_orthosymplectic(l, rng);
    const Matrix qs = symplectic_direct_sum(q1, q2);
    CHECK(is_orthosymplectic(qs, 1e-10).pass);
    // gamma-blocks of the sum recover the summands.
    CHECK(symplectic_diagonal_block(qs, IndexSet::range(1, k)) == q1);
    CHECK(symplectic_diagonal_block(qs, IndexSet::range(k + 1, l)) == q2);
  }
}

TEST_CASE("concatenation criterion") {
  SUBCASE("canonical pairs") {
    const std::size_t n = 3;
    const Matrix id = Matrix::identity(2 * n);
    const Matrix m = id.select_columns(std::vector<std::size_t>{0, n});
    const Matrix nn = id.select_columns(std::vector<std::size_t>{1, n + 1});
    CHECK(concat_compatibility(m, nn) == 0.0);
    CHECK(is_symplectic(symplectic_concat(m, nn), 1e-12).pass);
    CHECK(concat_compatibility(m, m) == doctest::Approx(1.0));
    CHECK_FALSE(is_symplectic(symplectic_concat(m, m), 1e-8).pass);
  }
  SUBCASE("random biconditional") {
    std::mt19937_64 rng(29);
    int compatible = 0, incompatible = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + trial % 4;
      const Matrix s = testing::random_symplectic_shears(n, rng, 0.3);
      const std::size_t k = 1 + trial % (n - 1);
      const std::size_t l = n - k;
      const auto [m, rest] = symplectic_split(s, k);
      Matrix other = rest;
      if (trial % 2 == 1) {
        // Mix a column pair of m into the partner so that M^T J N != 0,
        // while keeping N itself symplectic via an orthosymplectic rotation.
        const Matrix frame = symplectic_concat(m.select_columns(std::vector<std::size_t>{0, k}), rest);
        const Matrix g = testing::random_orthosymplectic(l + 1, rng, 8);
        const Matrix mixed = frame * g;
        const auto [drop, keep] = symplectic_split(mixed, 1);
        (void)drop;
        other = keep;
      }
      const double tol = 1e-8 * static_cast<double>(n) * spectral_norm(s) * spectral_norm(s);
      const double compat = concat_compatibility(m, other);
      const bool concat_ok = is_symplectic(symplectic_concat(m, other), tol).pass;
      CHECK((compat <= tol) == concat_ok);
      (compat <= tol ? compatible : incompatible)++;
    }
    CHECK(compatible > 0);
    CHECK(incompatible > 0);
  }
}

TEST_CASE("symplectic determinant and inverse") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const Matrix s = testing::random_symplectic_shears(n, rng);
    CHECK(std::abs(determinant(s) - 1.0) <= 1e-8);
    const Matrix inv = symplectic_inverse(s);
    const double scale = spectral_norm(s) * spectral_norm(inv);
    CHECK(spectral_norm(inv * s - Matrix::identity(2 * n)) <= 1e-12 * scale);
    CHECK(spectral_norm(s * inv - Matrix::identity(2 * n)) <= 1e-12 * scale);
  }
}
