#pragma once

// Coefficient rings R in {Q, F_p, Z, Z[1/S]} and the scalar semantics the
// linear-algebra layer needs from them.
//
// All matrices in this library carry integer entries. Computations over Q and
// Z[1/S] are carried out over Z and localized afterwards (localization is
// exact); computations over F_p reduce every entry modulo p.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace exseq {

enum class RingKind { Rationals, PrimeField, Integers, IntegersLocalized };

bool is_prime(long p);

// Distinct prime factors of |x|, ascending. Empty for 0 and +-1.
std::vector<long> prime_factors(const mpz_class& x);

class CoefficientRing {
 public:
  static CoefficientRing rationals();
  static CoefficientRing prime_field(long p);
  static CoefficientRing integers();
  // Z[1/S]; an empty S gives Z itself.
  static CoefficientRing localized(std::vector<long> primes);

  RingKind kind() const { return kind_; }
  bool is_field() const { return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField; }
  // p for F_p, 0 otherwise.
  long characteristic() const { return p_; }
  const std::vector<long>& inverted_primes() const { return inverted_; }

  // Canonical descriptor: "Q", "Z", "Fp:<p>", "Z[1/p1,1/p2,...]".
  std::string descriptor() const;

  // Integer scalar semantics.
  bool modular() const { return kind_ == RingKind::PrimeField; }
  mpz_class reduce(const mpz_class& x) const;
  bool is_zero(const mpz_class& x) const;
  bool is_unit(const mpz_class& x) const;
  // The non-unit part of an integer, positive; 1 when x is a unit and 0 for x = 0.
  mpz_class non_unit_part(const mpz_class& x) const;

  bool operator==(const CoefficientRing&) const = default;

 private:
  CoefficientRing(RingKind kind, long p, std::vector<long> inverted)
      : kind_(kind), p_(p), inverted_(std::move(inverted)) {}

  RingKind kind_;
  long p_ = 0;
  std::vector<long> inverted_;
};

// Parses "Q", "Z", "Fp:<p>" and "Z[1/p1,1/p2,...]".
CoefficientRing make_ring(std::string_view descriptor);

// Krull dimension of R over itself: 0 for fields, 1 for subrings of Q other than Q.
int base_dimension(const CoefficientRing& ring);

bool is_invertible(const CoefficientRing& ring, long p);

// A finitely generated R-module R^free_rank + sum R/(torsion_i).
struct FinitelyGeneratedRModule {
  int free_rank = 0;
  std::vector<mpz_class> torsion;  // divisor chain, each a non-unit

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  bool operator==(const FinitelyGeneratedRModule&) const = default;
};

}  // namespace exseq
