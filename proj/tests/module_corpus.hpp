#pragma once

// Random graded modules and the Koszul-complex computation of graded Betti
// numbers, used as an independent check on minimal resolutions.

#include <algorithm>
#include <map>
#include <memory>
#include <vector>

#include "exseq/grmod.hpp"
#include "oracles.hpp"

namespace oracle {

inline exseq::Poly random_homogeneous(Rng& rng, int n, int poly_degree, long bound) {
  exseq::Poly p(n);
  for (const auto& e : exseq::monomials(n, poly_degree)) {
    if (rng.coin(50)) p.add_term(e, rng.range(-bound, bound));
  }
  return p;
}

// A random column of total degree `degree` over the given generator degrees.
inline exseq::PolyColumn random_column(Rng& rng, int n, const std::vector<int>& gens, int degree, long bound) {
  exseq::PolyColumn col;
  for (int g : gens) {
    int diff = degree - g;
    if (diff < 0 || diff % 2 != 0) {
      col.emplace_back(n);
    } else {
      col.push_back(random_homogeneous(rng, n, diff / 2, bound));
    }
  }
  return col;
}

// n <= max_n, generator degrees in 0..2*max_shift, at most 5 relations of
// degree 2..2*max_poly.
inline exseq::GradedModule random_module(Rng& rng, const exseq::CoefficientRing& ring, int max_n = 3,
                                         int max_shift = 3, int max_poly = 5) {
  const int n = static_cast<int>(rng.range(1, max_n));
  std::vector<int> gens(static_cast<size_t>(rng.range(1, 3)));
  for (auto& g : gens) g = 2 * static_cast<int>(rng.range(0, max_shift));
  std::vector<exseq::PolyColumn> rels;
  const int count = static_cast<int>(rng.range(0, 5));
  for (int r = 0; r < count; ++r) {
    int degree = 2 * static_cast<int>(rng.range(1, max_poly));
    rels.push_back(random_column(rng, n, gens, degree, 2));
  }
  return exseq::GradedModule({n, ring}, gens, rels);
}

// dim_K Tor_i(M, K)_j for i = 0..n and degrees j <= max_degree, via the
// Koszul complex on t_1..t_n tensored with M.
inline std::vector<std::map<int, int>> koszul_betti(const exseq::GradedModule& m, int max_degree) {
  using namespace exseq;
  const int n = m.n();
  std::vector<std::vector<unsigned>> subsets(static_cast<size_t>(n + 1));
  for (unsigned s = 0; s < (1u << n); ++s) subsets[static_cast<size_t>(__builtin_popcount(s))].push_back(s);
  std::vector<std::shared_ptr<const GradedModule>> terms;  // terms[i] = K_i (x) M
  for (int i = 0; i <= n; ++i) {
    std::vector<GradedModule> parts;
    for (size_t c = 0; c < subsets[static_cast<size_t>(i)].size(); ++c) parts.push_back(m.shifted(2 * i));
    terms.push_back(std::make_shared<const GradedModule>(parts.empty() ? GradedModule::zero(m.ctx())
                                                                        : direct_sum(parts)));
  }
  const size_t g = m.num_generators();
  GradedComplex cx;
  for (int i = n; i >= 0; --i) cx.terms.push_back(terms[static_cast<size_t>(i)]);
  for (int i = n; i >= 1; --i) {
    const auto& src = subsets[static_cast<size_t>(i)];
    const auto& dst = subsets[static_cast<size_t>(i - 1)];
    std::vector<PolyColumn> cols;
    for (unsigned s : src) {
      for (size_t h = 0; h < g; ++h) {
        PolyColumn col(dst.size() * g, Poly(n));
        int position = 0;
        for (int k = 0; k < n; ++k) {
          if (!(s >> k & 1)) continue;
          unsigned t = s & ~(1u << k);
          size_t idx = static_cast<size_t>(std::find(dst.begin(), dst.end(), t) - dst.begin());
          col[idx * g + h] = Poly::variable(n, k, position % 2 == 0 ? 1 : -1);
          ++position;
        }
        cols.push_back(std::move(col));
      }
    }
    cx.maps.emplace_back(terms[static_cast<size_t>(i)], terms[static_cast<size_t>(i - 1)], std::move(cols));
  }
  std::vector<std::map<int, int>> out(static_cast<size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    auto h = homology_at(cx, static_cast<size_t>(n - i), max_degree);
    for (const auto& s : h.slices) {
      if (s.homology.free_rank > 0) out[static_cast<size_t>(i)][s.degree] = s.homology.free_rank;
    }
  }
  return out;
}

}  // namespace oracle
