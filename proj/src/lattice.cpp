#include "exseq/lattice.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "exseq/error.hpp"

namespace exseq {

ClosedSubgroup::ClosedSubgroup(int n, Matrix character_matrix) : n_(n), chars_(std::move(character_matrix)) {
  if (n < 0) throw Error(ErrorKind::DimensionMismatch, "negative torus rank");
  if (chars_.rows() == 0) chars_ = Matrix(0, static_cast<size_t>(n));
  if (chars_.cols() != static_cast<size_t>(n)) {
    throw Error(ErrorKind::DimensionMismatch, "character matrix has " + std::to_string(chars_.cols()) +
                                                  " columns, expected " + std::to_string(n));
  }
}

ClosedSubgroup ClosedSubgroup::whole_torus(int n) { return ClosedSubgroup(n, Matrix(0, static_cast<size_t>(n))); }

ClosedSubgroup ClosedSubgroup::trivial(int n) { return ClosedSubgroup(n, Matrix::identity(static_cast<size_t>(n))); }

Decomposition decompose_subgroup(const ClosedSubgroup& h) {
  Decomposition d;
  SnfResult s = smith_normal_form(h.character_matrix(), CoefficientRing::integers(), {.left = false, .right = false});
  d.torus_rank = h.n() - static_cast<int>(s.rank);
  for (auto it = s.invariant_factors.rbegin(); it != s.invariant_factors.rend(); ++it) {
    if (*it > 1) d.orders.push_back(*it);
  }
  return d;
}

int p_rank(const Decomposition& d, long p) {
  int count = d.torus_rank;
  for (const auto& m : d.orders) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) ++count;
  }
  return count;
}

int p_rank(const ClosedSubgroup& h, long p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
  return p_rank(decompose_subgroup(h), p);
}

int dim_classifying(const Decomposition& d, const CoefficientRing& ring) {
  int s = 0;
  for (const auto& m : d.orders) {
    if (!ring.is_unit(m)) ++s;
  }
  if (ring.is_field() || s > 0) return d.torus_rank + s;
  return d.torus_rank + 1;
}

int dim_classifying(const ClosedSubgroup& h, const CoefficientRing& ring) {
  return dim_classifying(decompose_subgroup(h), ring);
}

GradedModule present_classifying_cohomology(const ClosedSubgroup& h, const CoefficientRing& ring) {
  const int n = h.n();
  std::vector<PolyColumn> relations;
  const Matrix& c = h.character_matrix();
  for (size_t r = 0; r < c.rows(); ++r) {
    Poly form(n);
    for (int j = 0; j < n; ++j) {
      mpz_class v = ring.reduce(c(r, static_cast<size_t>(j)));
      if (sgn(v) != 0) form.add_term([&] { Exponent e(n, 0); e[j] = 1; return e; }(), v);
    }
    relations.push_back({form});
  }
  return GradedModule({n, ring}, {0}, std::move(relations));
}

ClosedSubgroup p_torsion_subgroup(const ClosedSubgroup& h, long p) {
  const size_t n = static_cast<size_t>(h.n());
  Matrix stacked(h.character_matrix().rows() + n, n);
  for (size_t r = 0; r < h.character_matrix().rows(); ++r)
    for (size_t j = 0; j < n; ++j) stacked(r, j) = h.character_matrix()(r, j);
  for (size_t j = 0; j < n; ++j) stacked(h.character_matrix().rows() + j, j) = p;
  return ClosedSubgroup(h.n(), std::move(stacked));
}

void validate_stratum(const StratumDescriptor& s, int n) {
  if (s.isotropy.n() != n) {
    throw Error(ErrorKind::DimensionMismatch, "stratum '" + s.name + "' lives in a torus of another rank");
  }
  const int r = decompose_subgroup(s.isotropy).torus_rank;
  if (s.orbit_dim != n - r) {
    throw Error(ErrorKind::InconsistentStratum, "stratum '" + s.name + "' has orbit_dim " +
                                                    std::to_string(s.orbit_dim) + " but its isotropy has torus rank " +
                                                    std::to_string(r));
  }
}

std::string_view to_string(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::PTorusEqual: return "p-torus-equal";
    case ConditionKind::PTorusContained: return "p-torus-contained";
    case ConditionKind::DimensionBound: return "dimension-bound";
  }
  return "?";
}

namespace {

int common_rank(const std::vector<StratumDescriptor>& strata) {
  const int n = strata.front().isotropy.n();
  for (const auto& s : strata) validate_stratum(s, n);
  return n;
}

ConditionReport finish(ConditionReport report) {
  std::sort(report.violations.begin(), report.violations.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.i, a.p, a.stratum) < std::tie(b.i, b.p, b.stratum);
  });
  report.holds = report.violations.empty();
  return report;
}

}  // namespace

std::vector<long> relevant_primes(const std::vector<StratumDescriptor>& strata, const CoefficientRing& ring) {
  if (ring.kind() == RingKind::PrimeField) return {ring.characteristic()};
  if (ring.kind() == RingKind::Rationals) return {};
  std::set<long> primes;
  for (const auto& s : strata) {
    for (const auto& m : decompose_subgroup(s.isotropy).orders) {
      for (long p : prime_factors(m)) {
        if (!is_invertible(ring, p)) primes.insert(p);
      }
    }
  }
  return {primes.begin(), primes.end()};
}

ConditionReport check_conditions(const std::vector<StratumDescriptor>& strata, const CoefficientRing& ring, int k) {
  ConditionReport report;
  report.ring = ring;
  report.k = k;
  if (strata.empty()) return report;
  const int n = common_rank(strata);
  const bool field = ring.kind() == RingKind::PrimeField;
  for (long p : relevant_primes(strata, ring)) {
    for (const auto& s : strata) {
      const int prk = p_rank(decompose_subgroup(s.isotropy), p);
      // Over F_p the stratum lies in X_{p,i} for i >= n - prk; over subrings of
      // Q the containment is needed one step later.
      const int first = std::max(0, n - prk + (field ? 0 : 1));
      const int last = std::min(s.orbit_dim - 1, k);
      for (int i = first; i <= last; ++i) {
        report.violations.push_back(
            {s.name, i, p, field ? ConditionKind::PTorusEqual : ConditionKind::PTorusContained});
      }
    }
  }
  return finish(std::move(report));
}

ConditionReport check_conditions_algebraic(const std::vector<StratumDescriptor>& strata, const CoefficientRing& ring,
                                           int k) {
  ConditionReport report;
  report.ring = ring;
  report.k = k;
  if (strata.empty()) return report;
  const int n = common_rank(strata);
  const int d = base_dimension(ring);
  for (const auto& s : strata) {
    const int dim = dim_classifying(s.isotropy, ring);
    for (int i = 0; i < s.orbit_dim && i <= k; ++i) {
      if (dim >= d + n - i) report.violations.push_back({s.name, i, 0, ConditionKind::DimensionBound});
    }
  }
  return finish(std::move(report));
}

bool same_violations(const ConditionReport& a, const ConditionReport& b) {
  auto pairs = [](const ConditionReport& r) {
    std::set<std::pair<std::string, int>> out;
    for (const auto& v : r.violations) out.emplace(v.stratum, v.i);
    return out;
  };
  return pairs(a) == pairs(b);
}

}  // namespace exseq
