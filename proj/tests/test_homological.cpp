#include "doctest.h"
#include "exseq/error.hpp"
#include "exseq/homological.hpp"
#include "module_corpus.hpp"

using namespace exseq;

namespace {

const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing F2 = CoefficientRing::prime_field(2);

Poly t(int n, int k) { return Poly::variable(n, k); }

GradedModule quotient_by_variables(int n, std::vector<int> vars, CoefficientRing ring) {
  std::vector<PolyColumn> rels;
  for (int k : vars) rels.push_back({t(n, k)});
  return GradedModule({n, ring}, {0}, rels);
}

std::vector<int> betti_totals(const Resolution& r) {
  std::vector<int> out;
  for (const auto& f : r.terms) out.push_back(static_cast<int>(f.num_generators()));
  return out;
}

}  // namespace

TEST_CASE("resolutions of small modules") {
  auto k = quotient_by_variables(2, {0, 1}, Q);
  CHECK(betti_totals(minimal_resolution(k, 12)) == std::vector<int>{1, 2, 1});
  CHECK(minimal_resolution(GradedModule::free({2, Q}, {0, 0}), 12).length() == 0);
  auto sum = direct_sum({quotient_by_variables(2, {0}, Q), GradedModule::free({2, Q}, {0})});
  CHECK(minimal_resolution(sum, 12).length() == 1);
  CHECK_THROWS_AS(minimal_resolution(GradedModule::free({1, Z}, {0}), 8), Error);
  // a non-minimal presentation: a redundant generator killed by a unit
  auto redundant = GradedModule({1, Q}, {0, 0}, {{Poly::constant(1, 1), Poly::constant(1, -1)}});
  CHECK(betti_totals(minimal_resolution(redundant, 8)) == std::vector<int>{1});
}

TEST_CASE("depth") {
  CHECK(depth(GradedModule::free({2, Q}, {0})).depth == ExtInt(2));
  CHECK(depth(quotient_by_variables(2, {0, 1}, Q)).depth == ExtInt(0));
  auto sum = direct_sum({quotient_by_variables(2, {0}, Q), quotient_by_variables(2, {0, 1}, Q)});
  CHECK(depth(sum).depth == ExtInt(0));
  CHECK(depth(GradedModule::zero({2, Q})).depth == ExtInt::pos_inf());
  CHECK_THROWS_AS(depth(GradedModule::free({1, Z}, {0})), Error);
}

TEST_CASE("Krull dimension") {
  auto z2 = GradedModule({1, Z}, {0}, {{Poly::variable(1, 0, 2)}});
  CHECK(krull_dim(z2).dim == ExtInt(1));
  CHECK(krull_dim(z2).primes_examined == std::vector<long>{2});
  CHECK(krull_dim(GradedModule::free({2, Z}, {0})).dim == ExtInt(3));
  CHECK(krull_dim(quotient_by_variables(2, {0, 1}, Q)).dim == ExtInt(0));
  CHECK(krull_dim(GradedModule::zero({2, Q})).dim == ExtInt::neg_inf());
  CHECK(krull_dim(z2.with_ring(CoefficientRing::localized({2}))).dim == ExtInt(1));
  CHECK_THROWS_AS(krull_dim(GradedModule::free({3, Q}, {0}), 6), Error);
}

TEST_CASE("Cohen-Macaulay") {
  auto a1 = quotient_by_variables(2, {0}, Q);
  auto r = is_cohen_macaulay(a1);
  CHECK(r.is_cm == Tri::True);
  CHECK(r.depth == ExtInt(1));
  auto mixed = is_cohen_macaulay(direct_sum({a1, GradedModule::free({2, Q}, {0})}));
  CHECK(mixed.is_cm == Tri::False);
  CHECK(mixed.depth == ExtInt(1));
  CHECK(mixed.dim == ExtInt(2));
  auto bz2 = GradedModule({1, F2}, {0}, {{Poly::variable(1, 0, 2)}});
  CHECK(is_cohen_macaulay(bz2).is_cm == Tri::True);
  CHECK_THROWS_AS(is_cohen_macaulay(GradedModule::zero({1, Q})), Error);
  CHECK_THROWS_AS(is_cohen_macaulay(GradedModule::free({1, Z}, {0})), Error);
}

TEST_CASE("depth and dimension over the integers by shape") {
  auto free = depth_dim(GradedModule::free({2, Z}, {0, 2}));
  CHECK(free.depth == ExtInt(3));
  CHECK(free.is_cm == Tri::True);
  auto z2 = depth_dim(GradedModule({1, Z}, {0}, {{Poly::variable(1, 0, 2)}}));
  CHECK(z2.is_cm == Tri::True);
  CHECK(z2.dim == ExtInt(1));
  // Z_2 x Z_2: two minimal primes of different dimension
  auto v4 = depth_dim(GradedModule({2, Z}, {0}, {{Poly::variable(2, 0, 2)}, {Poly::variable(2, 1, 2)}}));
  CHECK(v4.is_cm == Tri::False);
  CHECK(v4.dim == ExtInt(2));
  auto other = depth_dim(GradedModule({1, Z}, {0}, {{Poly::monomial({2}, 1)}}));
  CHECK(other.is_cm == Tri::Unknown);
}

TEST_CASE("freeness") {
  auto f = is_free(GradedModule::free({2, Z}, {0, 4}));
  CHECK(f.free);
  CHECK(f.generator_degrees == std::vector<int>{0, 4});
  auto z2 = is_free(GradedModule({1, Z}, {0}, {{Poly::variable(1, 0, 2)}}));
  CHECK_FALSE(z2.free);
  CHECK(z2.first_bad_degree == 2);
  // a free module with a redundant presentation
  auto redundant = GradedModule({1, Z}, {0, 2}, {{t(1, 0), Poly::constant(1, -1)}});
  auto r = is_free(redundant);
  CHECK(r.free);
  CHECK(r.generator_degrees == std::vector<int>{0});
}

TEST_CASE("resolutions agree with Koszul homology") {
  oracle::Rng rng(41);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto& ring = trial % 2 ? F2 : Q;
    auto m = oracle::random_module(rng, ring, 3);
    const int bound = 14;
    auto res = minimal_resolution(m, bound);
    auto tor = oracle::koszul_betti(m, bound);
    for (int i = 0; i <= m.n(); ++i) {
      std::map<int, int> mine;
      if (i < static_cast<int>(res.terms.size())) {
        for (int d : res.terms[static_cast<size_t>(i)].generator_degrees()) ++mine[d];
      }
      CHECK(mine == tor[static_cast<size_t>(i)]);
    }
    ++checked;
  }
  CHECK(checked == 30);
}
