#pragma once

// Dense integer matrices and exact linear algebra over a coefficient ring.
//
// Every routine takes the ring whose scalar semantics apply: over F_p entries
// are reduced modulo p and any nonzero pivot is a unit; over Z, Z[1/S] and Q the
// arithmetic is integral and the ring only decides which invariant factors are
// units when a quotient is read off.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "exseq/ring.hpp"

namespace exseq {

class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(size_t n);
  static Matrix from_rows(const std::vector<std::vector<long>>& rows, size_t cols_if_empty = 0);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  mpz_class& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& rhs) const;
  bool operator==(const Matrix& rhs) const = default;

  bool is_zero() const;
  Matrix transpose() const;
  Matrix column(size_t c) const;
  Matrix select_columns(const std::vector<size_t>& cols) const;
  void append_columns(const Matrix& other);

  std::vector<std::vector<std::string>> to_strings() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

// [a | b]; both must have the same number of rows.
Matrix hstack(const Matrix& a, const Matrix& b);

Matrix reduce(const Matrix& a, const CoefficientRing& ring);

struct SnfOptions {
  bool left = true;   // track U and its inverse
  bool right = true;  // track V
};

// U * A * V = D with U, V invertible over the working ring (unimodular over Z).
// Over Z the nonzero diagonal entries are positive and form a divisor chain;
// over F_p they are all 1.
struct SnfResult {
  Matrix U;
  Matrix U_inv;
  Matrix D;
  Matrix V;
  std::vector<mpz_class> invariant_factors;
  size_t rank = 0;
};

SnfResult smith_normal_form(const Matrix& a, const CoefficientRing& ring, SnfOptions options = {});

// Integer SNF with all transforms.
SnfResult smith_normal_form(const Matrix& a);

size_t rank(const Matrix& a, const CoefficientRing& ring);

// Columns form a basis of {x : A x = 0} (over Z this is the saturated kernel lattice).
Matrix kernel_basis(const Matrix& a, const CoefficientRing& ring);

// Columns form a basis of the column span of A.
Matrix image_basis(const Matrix& a, const CoefficientRing& ring);

// The R-module K/L for lattices L <= K <= R^N given by generating columns.
struct Subquotient {
  FinitelyGeneratedRModule module;
  // Representatives in R^N of a generating set of K/L, one column per cyclic
  // summand; orders[i] is the summand's order (0 for a free summand).
  Matrix generators;
  std::vector<mpz_class> orders;
  // Coordinates of L's generators in a basis of K and the SNF diagonal of that
  // matrix; kept for audit trails. Over fields they are left empty when generators
  // are requested.
  Matrix presentation;
  std::vector<mpz_class> diagonal;
};

// Throws NotContained when L is not inside K over the ring.
Subquotient subquotient(const Matrix& k_gens, const Matrix& l_gens, const CoefficientRing& ring,
                        bool want_generators = true);

// True iff the column span of L lies in the column span of K over the ring.
bool spans_contain(const Matrix& k_gens, const Matrix& l_gens, const CoefficientRing& ring);

}  // namespace exseq
