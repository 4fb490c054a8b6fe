#pragma once

// Closed subgroups of T = (S^1)^n given by character matrices, their
// decomposition Z_{m_1} x ... x Z_{m_q} x (S^1)^r, the cohomology of their
// classifying spaces, and the isotropy conditions on orbit-type strata.

#include <string>
#include <vector>

#include "exseq/grmod.hpp"
#include "exseq/matrix.hpp"
#include "exseq/ring.hpp"

namespace exseq {

// The joint kernel in T of the characters given by the rows.
class ClosedSubgroup {
 public:
  ClosedSubgroup() = default;
  // Throws DimensionMismatch when the matrix does not have n columns.
  ClosedSubgroup(int n, Matrix character_matrix);

  static ClosedSubgroup whole_torus(int n);
  static ClosedSubgroup trivial(int n);

  int n() const { return n_; }
  const Matrix& character_matrix() const { return chars_; }

 private:
  int n_ = 0;
  Matrix chars_;
};

struct Decomposition {
  std::vector<mpz_class> orders;  // m_1, m_2, ... with m_{j+1} | m_j, all > 1
  int torus_rank = 0;             // r

  bool operator==(const Decomposition&) const = default;
};

Decomposition decompose_subgroup(const ClosedSubgroup& h);

// Rank of the maximal p-torus of h: r + #{j : p | m_j}.
int p_rank(const ClosedSubgroup& h, long p);
int p_rank(const Decomposition& d, long p);

// Krull dimension of H^*(BH; R) over itself.
int dim_classifying(const ClosedSubgroup& h, const CoefficientRing& ring);
int dim_classifying(const Decomposition& d, const CoefficientRing& ring);

// H^{2*}(BH; R) as the cyclic A-module A / (linear forms given by the rows).
GradedModule present_classifying_cohomology(const ClosedSubgroup& h, const CoefficientRing& ring);

// The closed subgroup of p-torsion elements of h (a product of Z_p's).
ClosedSubgroup p_torsion_subgroup(const ClosedSubgroup& h, long p);

struct StratumDescriptor {
  std::string name;
  ClosedSubgroup isotropy;
  int orbit_dim = 0;
};

// Throws InconsistentStratum unless orbit_dim = n - r.
void validate_stratum(const StratumDescriptor& s, int n);

enum class ConditionKind {
  PTorusEqual,      // X_{p,i} = X_i over F_p
  PTorusContained,  // X_{p,i-1} inside X_i over subrings of Q
  DimensionBound,   // the dimension form of both
};

std::string_view to_string(ConditionKind kind);

struct Violation {
  std::string stratum;
  int i = 0;
  long p = 0;  // 0 for the dimension form
  ConditionKind condition = ConditionKind::PTorusEqual;

  bool operator==(const Violation&) const = default;
};

struct ConditionReport {
  CoefficientRing ring = CoefficientRing::integers();
  int k = 0;
  bool holds = true;
  std::vector<Violation> violations;  // sorted by (i, p, stratum)
};

// Primes whose behaviour can differ from the generic one: every non-invertible
// prime dividing some m_j of some stratum (just p over F_p).
std::vector<long> relevant_primes(const std::vector<StratumDescriptor>& strata, const CoefficientRing& ring);

ConditionReport check_conditions(const std::vector<StratumDescriptor>& strata, const CoefficientRing& ring, int k);
ConditionReport check_conditions_algebraic(const std::vector<StratumDescriptor>& strata, const CoefficientRing& ring,
                                           int k);

// True iff both reports flag the same (stratum, i) pairs.
bool same_violations(const ConditionReport& a, const ConditionReport& b);

}  // namespace exseq
