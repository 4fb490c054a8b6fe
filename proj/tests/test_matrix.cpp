#include "doctest.h"
#include "exseq/error.hpp"
#include "exseq/matrix.hpp"
#include "oracles.hpp"

using namespace exseq;

namespace {

oracle::Dense dense(const Matrix& m) {
  oracle::Dense d(m.rows(), std::vector<mpz_class>(m.cols()));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

Matrix random_matrix(oracle::Rng& rng, size_t r, size_t c, long bound) {
  Matrix m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m(i, j) = rng.coin(40) ? 0 : rng.range(-bound, bound);
  return m;
}

}  // namespace

TEST_CASE("smith normal form of a small matrix") {
  auto s = smith_normal_form(Matrix::from_rows({{4, 6}, {2, 2}}));
  CHECK(s.invariant_factors == std::vector<mpz_class>{2, 2});
  CHECK(s.rank == 2);
}

TEST_CASE("smith normal form transforms are consistent") {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    size_t r = rng.range(1, 5), c = rng.range(1, 5);
    Matrix a = random_matrix(rng, r, c, 9);
    auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.U * s.U_inv == Matrix::identity(r));
    for (size_t i = 0; i + 1 < s.rank; ++i) {
      CHECK(s.invariant_factors[i] > 0);
      CHECK(mpz_divisible_p(s.invariant_factors[i + 1].get_mpz_t(), s.invariant_factors[i].get_mpz_t()));
    }
    // Product of the first k invariant factors is the k-th determinantal divisor.
    mpz_class prod = 1;
    auto d = dense(a);
    for (size_t k = 1; k <= std::min(r, c); ++k) {
      mpz_class dk = oracle::determinantal_divisor(d, k);
      if (k <= s.rank) {
        prod *= s.invariant_factors[k - 1];
        CHECK(prod == dk);
      } else {
        CHECK(dk == 0);
      }
    }
  }
}

TEST_CASE("ranks agree with Gaussian elimination") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    Matrix a = random_matrix(rng, rng.range(1, 7), rng.range(1, 7), 6);
    CHECK(rank(a, CoefficientRing::rationals()) == static_cast<size_t>(oracle::rank_q(dense(a))));
    for (long p : {2L, 3L, 5L}) {
      CHECK(rank(a, CoefficientRing::prime_field(p)) == static_cast<size_t>(oracle::rank_mod_p(dense(a), p)));
    }
  }
}

TEST_CASE("kernel basis is a saturated basis") {
  oracle::Rng rng(13);
  auto z = CoefficientRing::integers();
  for (int trial = 0; trial < 100; ++trial) {
    Matrix a = random_matrix(rng, rng.range(1, 4), rng.range(1, 6), 5);
    Matrix k = kernel_basis(a, z);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == a.cols() - rank(a, z));
    if (k.cols() > 0) {
      auto s = smith_normal_form(k);
      for (const auto& d : s.invariant_factors) CHECK(d == 1);
    }
  }
}

TEST_CASE("subquotients") {
  auto z = CoefficientRing::integers();
  // Z^2 / <(2,0),(0,6)>
  auto sq = subquotient(Matrix::identity(2), Matrix::from_rows({{2, 0}, {0, 6}}), z);
  CHECK(sq.module.free_rank == 0);
  CHECK(sq.module.torsion == std::vector<mpz_class>{2, 6});
  auto sq2 = subquotient(Matrix::identity(2), Matrix::from_rows({{2, 0}, {0, 6}}), CoefficientRing::localized({2}));
  CHECK(sq2.module.torsion == std::vector<mpz_class>{3});
  auto sq3 = subquotient(Matrix::identity(2), Matrix::from_rows({{2, 0}, {0, 6}}), CoefficientRing::prime_field(3));
  CHECK(sq3.module.free_rank == 1);
  // K = 2Z inside Z, L = 6Z: K/L = Z/3
  auto sq4 = subquotient(Matrix::from_rows({{2}}), Matrix::from_rows({{6}}), z);
  CHECK(sq4.module.torsion == std::vector<mpz_class>{3});
  CHECK(sq4.generators(0, 0) % 2 == 0);
  CHECK_THROWS_AS(subquotient(Matrix::from_rows({{2}}), Matrix::from_rows({{3}}), z), Error);
  CHECK(spans_contain(Matrix::from_rows({{2}}), Matrix::from_rows({{3}}), CoefficientRing::localized({2})));
  CHECK_FALSE(spans_contain(Matrix::from_rows({{1, 0}, {0, 0}}), Matrix::from_rows({{0}, {1}}), z));
}

TEST_CASE("subquotient order matches index for random lattices") {
  oracle::Rng rng(17);
  auto z = CoefficientRing::integers();
  for (int trial = 0; trial < 100; ++trial) {
    size_t n = rng.range(1, 4);
    Matrix k = random_matrix(rng, n, n, 4);
    if (rank(k, z) < n) continue;
    Matrix c = random_matrix(rng, n, n, 3);
    Matrix l = k * c;
    auto sq = subquotient(k, l, z);
    mpz_class det_c = abs(oracle::determinant(dense(c)));
    if (det_c == 0) {
      CHECK(sq.module.free_rank > 0);
    } else {
      mpz_class order = 1;
      for (const auto& t : sq.module.torsion) order *= t;
      CHECK(sq.module.free_rank == 0);
      CHECK(order == det_c);
    }
  }
}

TEST_CASE("smith normal form transforms over fields") {
  oracle::Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    size_t r = rng.range(1, 6), c = rng.range(1, 6);
    Matrix a = random_matrix(rng, r, c, 7);
    for (const auto& ring : {CoefficientRing::rationals(), CoefficientRing::prime_field(2),
                             CoefficientRing::prime_field(7)}) {
      auto s = smith_normal_form(a, ring);
      CHECK(reduce(s.U * a * s.V, ring) == reduce(s.D, ring));
      CHECK(reduce(s.U * s.U_inv, ring) == Matrix::identity(r));
      CHECK(s.rank == rank(a, ring));
    }
  }
}

TEST_CASE("kernels, images and subquotients over fields") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 120; ++trial) {
    const size_t rows = rng.range(1, 6);
    Matrix a = random_matrix(rng, rows, rng.range(1, 7), 6);
    for (const auto& ring : {CoefficientRing::rationals(), CoefficientRing::prime_field(2),
                             CoefficientRing::prime_field(5)}) {
      const size_t r = rank(a, ring);
      Matrix k = kernel_basis(a, ring);
      CHECK(reduce(a * k, ring).is_zero());
      CHECK(k.cols() == a.cols() - r);
      CHECK(rank(k, ring) == k.cols());

      Matrix im = image_basis(a, ring);
      CHECK(im.cols() == r);
      CHECK(rank(im, ring) == r);
      CHECK(spans_contain(im, a, ring));
      CHECK(spans_contain(a, im, ring));

      Matrix l = a * random_matrix(rng, a.cols(), rng.range(0, 4), 3);
      auto sq = subquotient(a, l, ring);
      const size_t lr = l.cols() ? rank(l, ring) : 0;
      CHECK(sq.module.free_rank == static_cast<int>(r - lr));
      CHECK(sq.module.torsion.empty());
      // The generators complete a basis of span(L) to one of span(A).
      Matrix both = l.cols() ? hstack(l, sq.generators) : sq.generators;
      CHECK((both.cols() == 0 ? r == 0 : rank(both, ring) == r));

      auto hq = subquotient(a, l, ring, false);
      CHECK(hq.module.free_rank == sq.module.free_rank);
      CHECK(hq.presentation.rows() == r);
      CHECK(hq.presentation.cols() == l.cols());
    }
    Matrix outside(rows, 1);
    outside(0, 0) = 1;
    if (rank(hstack(a, outside), CoefficientRing::rationals()) > rank(a, CoefficientRing::rationals())) {
      CHECK_THROWS_AS(subquotient(a, outside, CoefficientRing::rationals()), Error);
      CHECK_FALSE(spans_contain(a, outside, CoefficientRing::rationals()));
    }
  }
}
