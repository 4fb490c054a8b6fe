#include "doctest.h"
#include "exseq/error.hpp"
#include "exseq/grmod.hpp"

using namespace exseq;

namespace {

PolynomialRingContext ctx(int n, CoefficientRing r = CoefficientRing::integers()) { return {n, r}; }

std::shared_ptr<const GradedModule> share(GradedModule m) { return std::make_shared<const GradedModule>(std::move(m)); }

}  // namespace

TEST_CASE("free slices count monomials") {
  auto a = GradedModule::free(ctx(2), {0});
  CHECK(graded_piece(a, 4).free_rank == 3);
  CHECK(graded_piece(a, 3).is_zero());
  auto h = hilbert_function(GradedModule::free(ctx(3), {0, 2}), 6);
  std::vector<int> ranks;
  for (const auto& s : h) ranks.push_back(s.free_rank);
  CHECK(ranks == std::vector<int>{1, 0, 4, 0, 9, 0, 16});
}

TEST_CASE("torsion in a slice") {
  auto m = GradedModule(ctx(1), {0}, {{Poly::variable(1, 0, 2)}});
  CHECK(graded_piece(m, 0).free_rank == 1);
  CHECK(graded_piece(m, 2).torsion == std::vector<mpz_class>{2});
  CHECK(graded_piece(m.with_ring(CoefficientRing::prime_field(2)), 2).free_rank == 1);
  CHECK(graded_piece(m.with_ring(CoefficientRing::rationals()), 2).is_zero());
}

TEST_CASE("inhomogeneous relations are rejected") {
  PolyColumn col{parse_poly("t1 + t2^2", 2)};
  CHECK_THROWS_AS(GradedModule(ctx(2), {0}, {col}), Error);
}

TEST_CASE("homology of multiplication by t1") {
  auto a = share(GradedModule::free(ctx(2), {2}));
  auto a2 = share(GradedModule::free(ctx(2), {0}));
  GradedComplex c;
  c.terms = {a, a2};
  c.maps = {GradedMap(a, a2, {{Poly::variable(2, 0)}})};
  auto h0 = homology_at(c, 0, 10);
  CHECK(h0.exact());
  auto h1 = homology_at(c, 1, 10);
  REQUIRE(h1.first_nonzero() != nullptr);
  CHECK(h1.first_nonzero()->degree == 0);
  for (const auto& s : h1.slices) {
    if (s.degree % 2 == 0) CHECK(s.homology.free_rank == 1);
  }
}

TEST_CASE("non-complexes are detected") {
  auto a = share(GradedModule::free(ctx(1), {4}));
  auto b = share(GradedModule::free(ctx(1), {2}));
  auto c3 = share(GradedModule::free(ctx(1), {0}));
  GradedComplex c;
  c.terms = {a, b, c3};
  c.maps = {GradedMap(a, b, {{Poly::variable(1, 0)}}), GradedMap(b, c3, {{Poly::variable(1, 0)}})};
  try {
    homology_at(c, 1, 8);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAComplex);
  }
}

TEST_CASE("Koszul complex in two variables is exact except at the end") {
  for (auto ring : {CoefficientRing::integers(), CoefficientRing::prime_field(2), CoefficientRing::rationals()}) {
    auto a0 = share(GradedModule::free(ctx(2, ring), {4}));
    auto a1 = share(GradedModule::free(ctx(2, ring), {2, 2}));
    auto a2 = share(GradedModule::free(ctx(2, ring), {0}));
    GradedComplex c;
    c.terms = {a0, a1, a2};
    c.maps = {GradedMap(a0, a1, {{Poly::variable(2, 0), Poly::variable(2, 1)}}),
              GradedMap(a1, a2, {{-Poly::variable(2, 1)}, {Poly::variable(2, 0)}})};
    CHECK(homology_at(c, 0, 12).exact());
    CHECK(homology_at(c, 1, 12, 4).exact());
    auto h2 = homology_at(c, 2, 12);
    CHECK(h2.slices.front().homology.free_rank == 1);
    for (size_t i = 1; i < h2.slices.size(); ++i) CHECK(h2.slices[i].homology.is_zero());
  }
}

TEST_CASE("degreewise presentation of the maximal ideal") {
  auto a = GradedModule::free(ctx(2), {0});
  SubmoduleSource src(a, [](int j) {
    size_t dim = free_slice_dim({0}, 2, j);
    return j >= 2 ? Matrix::identity(dim) : Matrix(dim, 0);
  });
  auto p = present_degreewise(src, ctx(2), 0, 12);
  CHECK(p.module.generator_degrees() == std::vector<int>{2, 2});
  REQUIRE(p.module.relations().size() == 1);
  CHECK(p.module.relation_degrees() == std::vector<int>{4});
  for (int j = 0; j <= 12; ++j) {
    int expect = j >= 2 && j % 2 == 0 ? j / 2 + 1 : 0;
    CHECK(graded_piece(p.module, j).free_rank == expect);
    CHECK(graded_piece(p.module, j).torsion.empty());
  }
}

TEST_CASE("degreewise presentation sees torsion generators") {
  // The submodule of Z[t] spanned by 2 in degree 0 and by t in degree 2:
  // minimal generators 2 (degree 0) and t (degree 2, order 2 modulo t*2).
  auto a = GradedModule::free(ctx(1), {0});
  SubmoduleSource src(a, [](int j) {
    if (j == 0) return Matrix::from_rows({{2}});
    return Matrix::identity(free_slice_dim({0}, 1, j));
  });
  auto p = present_degreewise(src, ctx(1), 0, 8);
  CHECK(p.module.generator_degrees() == std::vector<int>{0, 2});
  CHECK(p.generator_orders == std::vector<mpz_class>{0, 2});
  for (int j = 0; j <= 8; j += 2) CHECK(graded_piece(p.module, j).free_rank == 1);
  for (int j = 0; j <= 8; j += 2) CHECK(graded_piece(p.module, j).torsion.empty());
}

TEST_CASE("constructions") {
  auto m = GradedModule(ctx(1), {0}, {{Poly::variable(1, 0, 3)}});
  auto inflated = inflate(m);
  CHECK(inflated.n() == 2);
  CHECK(graded_piece(inflated, 2).torsion == std::vector<mpz_class>{3});
  CHECK(graded_piece(inflated, 2).free_rank == 0);
  auto sum = direct_sum({m, GradedModule::free(ctx(1), {2})});
  CHECK(graded_piece(sum, 2).free_rank == 1);
  CHECK(graded_piece(sum, 2).torsion.size() == 1);
  auto a = share(GradedModule::free(ctx(1), {4}));
  auto b = share(GradedModule::free(ctx(1), {2}));
  auto c = share(GradedModule::free(ctx(1), {0}));
  GradedMap f(a, b, {{Poly::variable(1, 0, 2)}});
  GradedMap g(b, c, {{Poly::variable(1, 0, 3)}});
  auto gf = compose(g, f);
  CHECK(gf.columns[0][0] == Poly::monomial({2}, 6));
  CHECK(graded_piece(cokernel(f), 4).torsion == std::vector<mpz_class>{2});
  CHECK(graded_piece(m.shifted(2), 2).free_rank == 1);
}
