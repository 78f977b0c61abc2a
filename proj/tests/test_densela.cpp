#include <doctest.h>

#include <cmath>
#include <random>

#include "matmeans/densela.hpp"
#include "test_util.hpp"

using namespace matmeans;
using matmeans::test::eig2x2;
using matmeans::test::max_diff;
using matmeans::test::rel_diff;

namespace {

SymMatrix random_sym(std::size_t n, std::uint64_t seed, double scale = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return SymMatrix(m);
}

Matrix reconstruct(const EigenDecomposition& e) {
  return multiply(multiply(e.q, Matrix::diagonal(std::span<const Real>(e.lambda))),
                  e.q.transposed());
}

}  // namespace

TEST_CASE("multiply") {
  const Matrix a{{1, 2}, {3, 4}};
  CHECK(multiply(Matrix::identity(2), a) == a);
  CHECK(multiply(Matrix::diagonal({2, 3}), Matrix::diagonal({5, 7})) == Matrix::diagonal({10, 21}));
  const Matrix nil{{0, 1}, {0, 0}};
  CHECK(multiply(nil, nil) == Matrix(2));
  CHECK(multiply(a, a) == Matrix{{7, 10}, {15, 22}});
  CHECK_THROWS_AS(multiply(a, Matrix::identity(3)), DimensionError);
}

TEST_CASE("SymMatrix and PdMatrix validate their invariants") {
  CHECK_THROWS_AS(SymMatrix(Matrix{{1, 2}, {0, 1}}), DomainError);
  CHECK_THROWS_AS(SymMatrix(Matrix{{NAN, 0}, {0, 1}}), DomainError);
  CHECK_THROWS_AS(SymMatrix(Matrix{}), DimensionError);
  CHECK_NOTHROW(SymMatrix(Matrix{{1, 2 + 1e-14L}, {2, 1}}));
  CHECK_THROWS_AS(PdMatrix(Matrix{{1, 0}, {0, -1}}), DomainError);
  CHECK_THROWS_AS(PdMatrix(Matrix{{1, 1}, {1, 1}}), DomainError);
  CHECK_NOTHROW(PdMatrix(Matrix{{2, 1}, {1, 2}}));
}

TEST_CASE("sym_eigen examples") {
  SUBCASE("diagonal input gives a permutation") {
    const auto e = sym_eigen(SymMatrix(Matrix::diagonal({1, 5, 2})));
    CHECK(e.lambda == std::vector<Real>{5, 2, 1});
    CHECK(e.q == Matrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  }
  SUBCASE("2x2 against the characteristic polynomial") {
    const auto [hi, lo] = eig2x2(2, 1, 2);
    const auto e = sym_eigen(SymMatrix(Matrix{{2, 1}, {1, 2}}));
    CHECK(static_cast<double>(e.lambda[0]) == doctest::Approx(hi).epsilon(1e-15));
    CHECK(static_cast<double>(e.lambda[1]) == doctest::Approx(lo).epsilon(1e-15));
    CHECK(hi == doctest::Approx(3));
    CHECK(lo == doctest::Approx(1));
  }
  SUBCASE("identity") {
    const auto e = sym_eigen(SymMatrix(Matrix::identity(4)));
    CHECK(e.lambda == std::vector<Real>(4, 1));
  }
  SUBCASE("ties keep the original order") {
    const auto e = sym_eigen(SymMatrix(Matrix::diagonal({3, 7, 3})));
    CHECK(e.q == Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  }
  SUBCASE("random 2x2 against the characteristic polynomial") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int it = 0; it < 200; ++it) {
      const double a = u(rng), b = u(rng), c = u(rng);
      const auto [hi, lo] = eig2x2(a, b, c);
      const auto e = sym_eigen(SymMatrix(Matrix{{a, b}, {b, c}}));
      CHECK(std::fabs(static_cast<double>(e.lambda[0]) - hi) < 1e-12);
      CHECK(std::fabs(static_cast<double>(e.lambda[1]) - lo) < 1e-12);
    }
  }
}

TEST_CASE("sym_eigen reconstruction and orthogonality on 500 random symmetric matrices") {
  double worst_rec = 0;
  double worst_orth = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const std::size_t n = 2 + s % 7;
    const auto m = random_sym(n, 1000 + s, 1 + static_cast<double>(s % 5) * 10);
    const auto e = sym_eigen(m);
    for (std::size_t i = 1; i < n; ++i) REQUIRE(e.lambda[i - 1] >= e.lambda[i]);
    worst_rec = std::max(worst_rec, max_diff(reconstruct(e), m) / (1 + static_cast<double>(m.matrix().max_abs())));
    worst_orth = std::max(worst_orth, max_diff(multiply(e.q.transposed(), e.q), Matrix::identity(n)));
  }
  CHECK(worst_rec <= 1e-9);
  CHECK(worst_orth <= 1e-10);
}

TEST_CASE("sym_eigen keeps small eigenvalues relatively accurate") {
  // graded diagonal rotated by a fixed orthogonal matrix
  const Matrix q = random_orthogonal(4, 11);
  const std::vector<Real> lam{1e6L, 1e2L, 1e-2L, 1e-6L};
  const Matrix m = multiply(multiply(q, Matrix::diagonal(std::span<const Real>(lam))), q.transposed());
  const auto e = sym_eigen(SymMatrix::symmetrize(m));
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(static_cast<double>(std::fabs(e.lambda[i] - lam[i]) / lam[i]) < 1e-6);
}

TEST_CASE("apply_spectral_fn") {
  const SymMatrix s(Matrix{{2, 1}, {1, 2}});
  CHECK(max_diff(apply_spectral_fn(s, [](Real x) { return x; }), s) <= 1e-9);
  CHECK(max_diff(apply_spectral_fn(SymMatrix(Matrix::diagonal({2, 3})), [](Real x) { return x * x; }),
                 Matrix::diagonal({4, 9})) <= 1e-15);
  // direct multiply oracle
  CHECK(max_diff(apply_spectral_fn(s, [](Real x) { return x * x; }), multiply(s, s)) <= 1e-14);
  CHECK(max_diff(multiply(s, s), Matrix{{5, 4}, {4, 5}}) == 0);
  const auto out = apply_spectral_fn(random_sym(5, 9), [](Real x) { return x * x * x; });
  CHECK(is_symmetric(out));
  CHECK(out.matrix() == out.matrix().transposed());
  CHECK_THROWS_AS(apply_spectral_fn(SymMatrix(Matrix::diagonal({1, -1})),
                                    [](Real x) { return std::log(x); }),
                  DomainError);
}

TEST_CASE("pd_power") {
  CHECK(max_diff(pd_power(PdMatrix(Matrix::diagonal({4, 9})), 0.5L), Matrix::diagonal({2, 3})) <= 1e-15);
  const PdMatrix a = random_pd(4, 1, 5);
  CHECK(pd_power(a, 1).matrix() == a.matrix());
  CHECK(pd_power(a, 0).matrix() == Matrix::identity(4));
  // 2x2 inverse formula: [[a, b], [b, c]]^{-1} = [[c, -b], [-b, a]] / (ac - b^2)
  const double det = 2 * 2 - 1 * 1;
  const Matrix inv{{2 / det, -1 / det}, {-1 / det, 2 / det}};
  CHECK(max_diff(pd_power(PdMatrix(Matrix{{2, 1}, {1, 2}}), -1), inv) <= 1e-15);
  CHECK(max_diff(inv, Matrix{{2.0L / 3, -1.0L / 3}, {-1.0L / 3, 2.0L / 3}}) <= 1e-15);
}

TEST_CASE("functional calculus consistency: A^p A^q = A^{p+q}") {
  const Real exps[] = {-1, -0.5L, 0.5L, 1, 2};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PdMatrix a = random_pd(2 + seed % 5, 1, seed);
    for (Real p : exps)
      for (Real q : exps) {
        const Matrix lhs = multiply(pd_power(a, p), pd_power(a, q));
        CHECK(rel_diff(lhs, pd_power(a, p + q)) <= 1e-8);
      }
  }
}

TEST_CASE("pd_log and sym_exp") {
  CHECK(max_diff(pd_log(PdMatrix(Matrix::identity(3))), Matrix(3)) == 0);
  CHECK(max_diff(sym_exp(SymMatrix(Matrix(3))), Matrix::identity(3)) == 0);
  CHECK(max_diff(pd_log(PdMatrix(Matrix::diagonal({std::exp(1.0L), 1}))), Matrix::diagonal({1, 0})) <= 1e-18);
  const PdMatrix a = random_pd(4, 1, 42);
  CHECK(rel_diff(sym_exp(pd_log(a)), a) <= 1e-8);
  CHECK_THROWS_AS(pd_log(PdMatrix::assume(Matrix::diagonal({1, -1}))), DomainError);
}

TEST_CASE("singular_values") {
  CHECK(singular_values(Matrix{{0, 2}, {0, 0}}).values == std::vector<Real>{2, 0});
  const auto sq = singular_values(random_orthogonal(5, 1));
  for (Real s : sq.values) CHECK(static_cast<double>(s) == doctest::Approx(1).epsilon(1e-12));
  const auto sd = singular_values(Matrix::diagonal({-3, 1}));
  CHECK(sd.values == std::vector<Real>{3, 1});
  // symmetric PSD: singular values equal eigenvalues
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PdMatrix a = random_pd(3 + seed % 3, 1, seed);
    const auto gram = singular_values(a.matrix());
    const auto lam = sym_eigen(a).lambda;
    for (std::size_t i = 0; i < lam.size(); ++i) CHECK(std::fabs(static_cast<double>(gram[i] - lam[i])) <= 1e-9);
  }
  // gram eigenvalues clamp at zero for a rank-deficient input
  for (Real s : singular_values(Matrix{{1, 1}, {1, 1}}).values) CHECK(s >= 0);
}

TEST_CASE("definiteness checks") {
  const auto id = is_positive_definite(SymMatrix(Matrix::identity(3)));
  CHECK(id.ok);
  CHECK(id.margin == 1);
  const auto ind = is_positive_semidefinite(SymMatrix(Matrix::diagonal({1, -1})));
  CHECK_FALSE(ind.ok);
  CHECK(ind.margin == -1);
  CHECK(is_positive_semidefinite(SymMatrix(Matrix{{1, 1}, {1, 1}})).ok);
  CHECK_FALSE(is_positive_definite(SymMatrix(Matrix{{1, 1}, {1, 1}})).ok);
}

TEST_CASE("random_pd") {
  CHECK(max_diff(random_pd(3, 0, 17), Matrix::identity(3)) <= 1e-10);
  CHECK(random_pd(5, 2, 99).matrix() == random_pd(5, 2, 99).matrix());
  CHECK_FALSE(random_pd(5, 2, 99).matrix() == random_pd(5, 2, 100).matrix());
  const PdMatrix a = random_pd(4, 3, 7);
  CHECK(is_positive_definite(a).ok);
  const auto lam = sym_eigen(a).lambda;
  for (Real l : lam) {
    CHECK(l >= 1e-3L * (1 - 1e-9L));
    CHECK(l <= 1e3L * (1 + 1e-9L));
  }
  // entries are doubles
  for (Real x : a.matrix().data()) CHECK(static_cast<Real>(static_cast<double>(x)) == x);
  CHECK_THROWS_AS(random_pd(0, 1, 1), DimensionError);
  CHECK_THROWS_AS(random_pd(2, -1, 1), DomainError);
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}
