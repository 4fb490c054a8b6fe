#include "doctest.h"
#include "exseq/error.hpp"
#include "exseq/ring.hpp"

using namespace exseq;

TEST_CASE("ring descriptors round-trip") {
  for (const char* d : {"Q", "Z", "Fp:2", "Fp:101", "Z[1/2]", "Z[1/2,1/3]"}) {
    CHECK(make_ring(d).descriptor() == d);
  }
  CHECK(make_ring("Z[1/3,1/2]").descriptor() == "Z[1/2,1/3]");
}

TEST_CASE("invalid rings are rejected") {
  auto kind_of = [](const char* d) {
    try {
      make_ring(d);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  CHECK_THROWS_AS(CoefficientRing::prime_field(4), Error);
  CHECK(kind_of("Fp:1") == ErrorKind::InvalidPrime);
  CHECK(kind_of("Fp:9") == ErrorKind::InvalidPrime);
  CHECK(kind_of("Z[1/6]") == ErrorKind::InvalidLocalizationSet);
  CHECK(kind_of("R") == ErrorKind::ParseError);
}

TEST_CASE("scalar semantics") {
  auto z = CoefficientRing::integers();
  auto q = CoefficientRing::rationals();
  auto f3 = CoefficientRing::prime_field(3);
  auto z2 = CoefficientRing::localized({2});
  CHECK(z.non_unit_part(-12) == 12);
  CHECK(z2.non_unit_part(-12) == 3);
  CHECK(z2.is_unit(8));
  CHECK_FALSE(z.is_unit(2));
  CHECK(q.is_unit(7));
  CHECK(q.non_unit_part(0) == 0);
  CHECK(f3.reduce(-1) == 2);
  CHECK(f3.is_zero(9));
  CHECK(f3.is_unit(5));
  CHECK(base_dimension(q) == 0);
  CHECK(base_dimension(z2) == 1);
  CHECK(is_invertible(z2, 2));
  CHECK_FALSE(is_invertible(z2, 3));
  CHECK(prime_factors(mpz_class(360)) == std::vector<long>{2, 3, 5});
}
