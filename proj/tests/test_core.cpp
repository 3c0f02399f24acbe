#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "sympert/core.hpp"

using namespace sympert;

namespace {

std::vector<std::size_t> flatten(const std::vector<IndexSet>& sets) {
  std::vector<std::size_t> out;
  for (const auto& s : sets) out.insert(out.end(), s.indices().begin(), s.indices().end());
  return out;
}

}  // namespace

TEST_CASE("build_clusters reproduces the ten-eigenvalue index-set example") {
  const std::vector<double> d = {1, 1, 2, 3, 3, 3, 4, 4, 4, 5};
  const auto cs = build_clusters(d, 1e-8);
  REQUIRE(cs.count() == 5);
  CHECK(cs.n == 10);
  CHECK(cs.mus == std::vector<double>{1, 2, 3, 4, 5});

  CHECK(cs.alphas[0] == IndexSet{1, 2});
  CHECK(cs.alphas[1] == IndexSet{3});
  CHECK(cs.alphas[2] == IndexSet{4, 5, 6});
  CHECK(cs.alphas[3] == IndexSet{7, 8, 9});
  CHECK(cs.alphas[4] == IndexSet{10});

  CHECK(cs.betas[0] == IndexSet{11, 12});
  CHECK(cs.betas[1] == IndexSet{13});
  CHECK(cs.betas[2] == IndexSet{14, 15, 16});
  CHECK(cs.betas[3] == IndexSet{17, 18, 19});
  CHECK(cs.betas[4] == IndexSet{20});

  CHECK(cs.gammas[0] == IndexSet{1, 2, 11, 12});
  CHECK(cs.gammas[1] == IndexSet{3, 13});
  CHECK(cs.gammas[2] == IndexSet{4, 5, 6, 14, 15, 16});
  CHECK(cs.gammas[3] == IndexSet{7, 8, 9, 17, 18, 19});
  CHECK(cs.gammas[4] == IndexSet{10, 20});
}

TEST_CASE("build_clusters edge cases") {
  SUBCASE("single eigenvalue") {
    const std::vector<double> d = {1.0};
    for (double tol : {0.0, 1e-8, 1.0}) {
      const auto cs = build_clusters(d, tol);
      REQUIRE(cs.count() == 1);
      CHECK(cs.alphas[0] == IndexSet{1});
      CHECK(cs.betas[0] == IndexSet{2});
      CHECK(cs.gammas[0] == IndexSet{1, 2});
    }
  }
  SUBCASE("gap below tolerance merges") {
    const std::vector<double> d = {1.0, 1.0 + 1e-12, 5.0};
    const auto cs = build_clusters(d, 1e-8);
    REQUIRE(cs.count() == 2);
    CHECK(cs.alphas[0] == IndexSet{1, 2});
    CHECK(cs.alphas[1] == IndexSet{3});
    CHECK(cs.mus[0] == doctest::Approx(1.0 + 0.5e-12).epsilon(1e-15));
  }
  SUBCASE("tolerance scales with max(d, 1)") {
    // gap 5e-8 at d = 10 is within 1e-8 * 10, but the same gap at d = 0.5 is not.
    const std::vector<double> big = {10.0, 10.0 + 5e-8};
    CHECK(build_clusters(big, 1e-8).count() == 1);
    const std::vector<double> small = {0.5, 0.5 + 5e-8};
    CHECK(build_clusters(small, 1e-8).count() == 2);
  }
  SUBCASE("invalid spectra") {
    const std::vector<double> unsorted = {2.0, 1.0};
    CHECK_THROWS_AS(build_clusters(unsorted), DomainError);
    const std::vector<double> nonpositive = {0.0, 1.0};
    CHECK_THROWS_AS(build_clusters(nonpositive), DomainError);
    const std::vector<double> empty;
    CHECK_THROWS_AS(build_clusters(empty), DomainError);
    const std::vector<double> ok = {1.0};
    CHECK_THROWS_AS(build_clusters(ok, -1.0), DomainError);
  }
}

TEST_CASE("cluster invariants hold on random spectra") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> level(1, 4);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> d(len(rng));
    for (auto& x : d) x = 0.5 * level(rng);
    std::sort(d.begin(), d.end());
    const auto cs = build_clusters(d);

    std::vector<std::size_t> expected(d.size());
    std::iota(expected.begin(), expected.end(), 1);
    CHECK(flatten(cs.alphas) == expected);
    for (std::size_t i = 0; i < cs.count(); ++i) {
      CHECK(cs.gammas[i].size() == 2 * cs.alphas[i].size());
      CHECK(cs.gammas[i] == cs.alphas[i].united(cs.alphas[i].shifted(d.size())));
      if (i > 0) CHECK(cs.mus[i] > cs.mus[i - 1]);
    }
  }
}

TEST_CASE("spectral and Frobenius norms") {
  CHECK(spectral_norm(Matrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(spectral_norm(Matrix::from_rows({{3, 0}, {0, -7}})) == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(spectral_norm(Matrix::from_rows({{0, 2}, {0, 0}})) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK(frobenius_norm(Matrix::zeros(3, 3)) == 0.0);
  CHECK(frobenius_norm(Matrix::identity(3)) == doctest::Approx(std::sqrt(3.0)));
  CHECK(frobenius_norm(Matrix::from_rows({{1, 2}, {3, 4}})) == doctest::Approx(std::sqrt(30.0)));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 1 + trial % 7, c = 1 + (trial * 3) % 5;
    const Matrix m = testing::gaussian(r, c, rng);
    const double s = spectral_norm(m);
    const double f = frobenius_norm(m);
    CHECK(s <= f * (1 + 1e-14));
    CHECK(f <= std::sqrt(static_cast<double>(std::min(r, c))) * s * (1 + 1e-14));
    CHECK(s == doctest::Approx(testing::power_norm(m)).epsilon(1e-9));
  }
}

TEST_CASE("symplectic form materialization") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const SymplecticForm form(n);
    const Matrix j = form.matrix();
    CHECK(j == testing::explicit_form(n));
    CHECK(j.transpose() == j * -1.0);
    CHECK(j * j == Matrix::identity(2 * n) * -1.0);
    CHECK(j.transpose() * j == Matrix::identity(2 * n));
    CHECK(j.transpose() * j * j == j);

    std::mt19937_64 rng(n);
    const Matrix m = testing::gaussian(2 * n, 3, rng);
    CHECK(form.apply_left(m) == j * m);
    const Matrix mt = m.transpose();
    CHECK(form.apply_right(mt) == mt * j);
  }
  CHECK_THROWS_AS(SymplecticForm(0), DomainError);
}

TEST_CASE("matrix and index set contracts") {
  CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), DomainError);
  CHECK_THROWS_AS(Matrix(1, 1, {std::nan("")}), DomainError);
  CHECK_THROWS_AS(Matrix(1, 1, {INFINITY}), DomainError);
  CHECK_THROWS_AS(IndexSet({2, 1}), DomainError);
  CHECK_THROWS_AS(IndexSet({1, 1}), DomainError);
  CHECK_THROWS_AS(IndexSet({0, 1}), DomainError);
  CHECK(IndexSet{2, 4}.zero_based() == std::vector<std::size_t>{1, 3});
  CHECK_THROWS_AS(Matrix::identity(2) * Matrix::identity(3), DomainError);
}
