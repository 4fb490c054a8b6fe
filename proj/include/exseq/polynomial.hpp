#pragma once

// Polynomials over Z in t1..tn with deg tj = 2, stored sparsely.

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace exseq {

using Exponent = std::vector<int>;

// All exponent vectors of length n with the given total degree, in ascending
// lexicographic order. The returned reference stays valid for the process lifetime.
const std::vector<Exponent>& monomials(int n, int total);

// Position of e in monomials(n, sum(e)).
size_t monomial_index(const Exponent& e);

int total_degree(const Exponent& e);

class Poly {
 public:
  using Terms = std::map<Exponent, mpz_class>;

  Poly() = default;
  explicit Poly(int nvars) : n_(nvars) {}

  static Poly constant(int nvars, const mpz_class& c);
  static Poly variable(int nvars, int index, const mpz_class& c = 1);
  static Poly monomial(const Exponent& e, const mpz_class& c = 1);
  // sum_j coeffs[j] * t_{j+1}
  static Poly linear_form(const std::vector<long>& coeffs);

  int nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Total degree in the polynomial sense (not the cohomological one); -1 for 0.
  int degree() const;
  bool is_homogeneous() const;

  void add_term(const Exponent& e, const mpz_class& c);

  Poly operator+(const Poly& rhs) const;
  Poly operator-(const Poly& rhs) const;
  Poly operator-() const;
  Poly operator*(const Poly& rhs) const;
  Poly operator*(const mpz_class& c) const;
  bool operator==(const Poly& rhs) const = default;

  // Inserts a new variable at position `at` with exponent 0 everywhere.
  Poly with_variable_inserted(int at) const;

  // Canonical encoding: "coef*t1^a*t2^b + ..." in descending monomial order, "0" for zero.
  std::string to_string() const;

 private:
  int n_ = 0;
  Terms terms_;
};

Poly parse_poly(std::string_view text, int nvars);

}  // namespace exseq
