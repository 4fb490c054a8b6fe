#pragma once

// Brute-force Krull dimension of R[t_1..t_q, t'_1..t'_r]/(m_1 t_1, ..., m_q t_q)
// by enumerating the candidate minimal primes: for every index j either t_j
// lies in the prime or m_j does, and in the latter case the prime contracts
// to (0) or to a non-invertible rational prime dividing m_j.

#include <set>
#include <vector>

#include "exseq/lattice.hpp"
#include "exseq/ring.hpp"
#include "oracles.hpp"

namespace oracle {

inline int krull_dim_classifying(const std::vector<mpz_class>& m, int r, const exseq::CoefficientRing& ring) {
  const int d = exseq::base_dimension(ring);
  const size_t q = m.size();
  std::set<long> primes;
  if (!ring.is_field()) {
    for (const auto& x : m)
      for (long p : exseq::prime_factors(x))
        if (!exseq::is_invertible(ring, p)) primes.insert(p);
  }
  int best = -1;
  for (unsigned mask = 0; mask < (1u << q); ++mask) {
    int size = __builtin_popcount(mask);
    // contraction (0): every m_j with j in the pattern must vanish in R
    bool zero_ok = true;
    for (size_t j = 0; j < q; ++j)
      if ((mask >> j & 1) && !ring.is_zero(ring.reduce(m[j]))) zero_ok = false;
    if (zero_ok) best = std::max(best, d + r + size);
    for (long p : primes) {
      bool ok = true;
      for (size_t j = 0; j < q; ++j)
        if ((mask >> j & 1) && !mpz_divisible_ui_p(m[j].get_mpz_t(), static_cast<unsigned long>(p))) ok = false;
      if (ok) best = std::max(best, r + size);
    }
  }
  return best;
}

// p-rank read off from the order of the p-torsion subgroup: the subgroup
// cut out by C and p*I is finite of order p^rank.
inline int p_rank_by_order(const exseq::ClosedSubgroup& h, long p) {
  auto s = exseq::smith_normal_form(exseq::p_torsion_subgroup(h, p).character_matrix());
  mpz_class order = 1;
  for (const auto& f : s.invariant_factors) order *= f;
  int e = 0;
  while (order > 1) {
    order /= p;
    ++e;
  }
  return e;
}

inline exseq::ClosedSubgroup random_subgroup(Rng& rng, int n, long bound) {
  size_t rows = static_cast<size_t>(rng.range(0, n + 1));
  exseq::Matrix c(rows, static_cast<size_t>(n));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < static_cast<size_t>(n); ++j) c(i, j) = rng.coin(35) ? 0 : rng.range(-bound, bound);
  return exseq::ClosedSubgroup(n, c);
}

inline std::vector<exseq::CoefficientRing> all_ring_kinds() {
  using exseq::CoefficientRing;
  return {CoefficientRing::rationals(), CoefficientRing::prime_field(2), CoefficientRing::prime_field(3),
          CoefficientRing::integers(), CoefficientRing::localized({2}), CoefficientRing::localized({3, 5})};
}

inline std::vector<exseq::StratumDescriptor> random_strata(Rng& rng, int n, long bound) {
  std::vector<exseq::StratumDescriptor> out;
  int count = static_cast<int>(rng.range(1, 4));
  for (int s = 0; s < count; ++s) {
    auto h = random_subgroup(rng, n, bound);
    int r = exseq::decompose_subgroup(h).torus_rank;
    out.push_back({"s" + std::to_string(s), h, n - r});
  }
  return out;
}

}  // namespace oracle
