// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "homology_oracle.hpp"
#include "lattice_oracle.hpp"
#include "module_corpus.hpp"
#include "exseq/abseq.hpp"
#include "exseq/error.hpp"
#include "exseq/homological.hpp"

using namespace exseq;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first few failure messages of a criterion.
struct Checker {
  bool ok = true;
  int failures = 0;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (++failures <= 3) notes << (failures > 1 ? "; " : "") << what;
  }
  Outcome outcome(const std::string& summary) const {
    return {ok, ok ? summary : summary + " | " + notes.str()};
  }
};

int run(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_seconds <= 0 || secs < limit_seconds;
  const bool pass = o.ok && in_time;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << timing;
  if (limit_seconds > 0) std::cout << " of " << limit_seconds << "s";
  std::cout << "] " << o.detail << (in_time ? "" : " (time limit exceeded)") << std::endl;
  return pass ? 0 : 1;
}

// Invariant factors and torus rank from determinantal divisors.
Decomposition decomposition_by_minors(const ClosedSubgroup& h) {
  const Matrix& c = h.character_matrix();
  oracle::Dense a(c.rows(), std::vector<mpz_class>(c.cols()));
  for (size_t r = 0; r < c.rows(); ++r)
    for (size_t k = 0; k < c.cols(); ++k) a[r][k] = c(r, k);
  const long rk = oracle::rank_q(a);
  Decomposition d;
  d.torus_rank = h.n() - static_cast<int>(rk);
  mpz_class prev = 1;
  for (long k = 1; k <= rk; ++k) {
    mpz_class dk = oracle::determinantal_divisor(a, static_cast<size_t>(k));
    mpz_class f = dk / prev;
    prev = dk;
    if (f != 1) d.orders.push_back(f);
  }
  std::reverse(d.orders.begin(), d.orders.end());
  return d;
}

Outcome criterion1() {
  Checker ck;
  oracle::Rng rng(101);
  int count = 0;
  for (const auto& ring : oracle::all_ring_kinds()) {
    for (int trial = 0; trial < 200; ++trial) {
      const int n = static_cast<int>(rng.range(1, 4));
      const auto h = oracle::random_subgroup(rng, n, 20);
      const Decomposition d = decomposition_by_minors(h);
      ck.expect(decompose_subgroup(h) == d, "decomposition differs from determinantal divisors");
      const int expected = oracle::krull_dim_classifying(d.orders, d.torus_rank, ring);
      ck.expect(dim_classifying(h, ring) == expected, "dim mismatch over " + ring.descriptor());
      ++count;
    }
  }
  return ck.outcome(std::to_string(count) + " subgroups over 6 ring kinds");
}

Outcome criterion2() {
  Checker ck;
  oracle::Rng rng(202);
  int count = 0, violating = 0;
  for (const auto& ring : oracle::all_ring_kinds()) {
    for (int trial = 0; trial < 200; ++trial) {
      const int n = static_cast<int>(rng.range(1, 4));
      const auto strata = oracle::random_strata(rng, n, 12);
      const int k = static_cast<int>(rng.range(0, n));
      const auto a = check_conditions(strata, ring, k);
      const auto b = check_conditions_algebraic(strata, ring, k);
      ck.expect(same_violations(a, b) && a.holds == b.holds, "checkers disagree over " + ring.descriptor());
      violating += a.holds ? 0 : 1;
      ++count;
    }
  }
  return ck.outcome(std::to_string(count) + " configurations, " + std::to_string(violating) + " with violations");
}

const CoefficientRing kQ = CoefficientRing::rationals();
const CoefficientRing kZ = CoefficientRing::integers();
const CoefficientRing kF2 = CoefficientRing::prime_field(2);
const CoefficientRing kF3 = CoefficientRing::prime_field(3);

Outcome criterion3() {
  Checker ck;
  int count = 0;
  for (auto name : {"P1", "P2", "P1xP1", "Hirzebruch:1", "Hirzebruch:2"}) {
    for (const auto& ring : {kQ, kZ, kF2, kF3}) {
      const auto r = verify(catalog_model(name), ring, SequenceKind::full(), 20);
      ck.expect(r.verdict.kind == VerdictKind::ExactUpToD,
                std::string(name) + " over " + ring.descriptor() + ": " + std::string(to_string(r.verdict.kind)));
      ++count;
    }
  }
  return ck.outcome(std::to_string(count) + " full sequences exact through degree 20");
}

// Ranks of a free module over R[t1,t2] whose generators sit in degrees 2i with multiplicity b[i].
std::vector<int> free_ranks_n2(const std::vector<int>& b, int max_degree) {
  std::vector<int> out;
  for (int j = 0; j <= max_degree; ++j) {
    int r = 0;
    if (j % 2 == 0)
      for (size_t i = 0; i < b.size(); ++i)
        if (j / 2 >= static_cast<int>(i)) r += b[i] * (j / 2 - static_cast<int>(i) + 1);
    out.push_back(r);
  }
  return out;
}

Outcome criterion4() {
  Checker ck;
  std::ostringstream ranks;
  const std::vector<std::pair<const char*, std::vector<int>>> cases = {{"P2", {1, 1, 1}}, {"P1xP1", {1, 2, 1}}};
  for (const auto& [name, betti] : cases) {
    const auto c = cs_compare(catalog_model(name), kZ, 20);
    ck.expect(c.equal, std::string(name) + " differs in degree " + std::to_string(c.first_discrepancy.value_or(-1)));
    ck.expect(c.common_image_ranks == c.htx_ranks, std::string(name) + ": common image ranks differ from H_T(X)");
    ck.expect(c.common_image_ranks == free_ranks_n2(betti, 20),
              std::string(name) + ": ranks differ from the free module on the Betti numbers");
    ranks << name << " degrees 0..6:";
    for (int j = 0; j <= 6; ++j) ranks << ' ' << c.common_image_ranks[static_cast<size_t>(j)];
    ranks << "; ";
  }
  return ck.outcome("Equal for P2 and P1xP1 over Z; " + ranks.str());
}

Outcome criterion5() {
  Checker ck;
  const auto x = catalog_model("SpinningSphere:2");
  const auto f2 = check_conditions(strata(x), kF2, 0);
  bool flagged = false;
  for (const auto& v : f2.violations)
    flagged |= v.i == 0 && v.p == 2 && v.condition == ConditionKind::PTorusEqual;
  ck.expect(flagged, "no p-torus-equal violation at i=0 over F2");
  const auto r = verify(x, kF2, SequenceKind::truncated(0), 8);
  ck.expect(r.verdict.kind == VerdictKind::FailsAt, "verdict over F2 is " + std::string(to_string(r.verdict.kind)));
  ck.expect(r.verdict.position == size_t{0} && r.verdict.degree == 2 && r.verdict.witness &&
                !r.verdict.witness->homology.is_zero(),
            "kernel of H_T(X) -> H_T(X_0) is not witnessed in degree 2");
  const auto z = check_conditions(strata(x), kZ, 1);
  ck.expect(z.holds, "subring condition fails over Z");
  const auto rz = verify(x, kZ, SequenceKind::full(), 8);
  ck.expect(rz.verdict.kind == VerdictKind::ExactUpToD, "verdict over Z is " + std::string(to_string(rz.verdict.kind)));
  return ck.outcome("F2: violation at i=0 and kernel in degree 2; Z: conditions hold and exact");
}

Outcome criterion6() {
  Checker ck;
  const auto p = cm_profile(catalog_model("P2"), kQ, 20);
  std::ostringstream rows;
  for (const auto& row : p.rows) {
    ck.expect(row.tail_zero_or_cm, "H_T(X, X_" + std::to_string(row.i) + ") is not zero or CM of dim n-i-1");
    ck.expect(row.relative_depth_ok, "depth of relative term " + std::to_string(row.i) + " below n-i");
    ck.expect(row.connecting_map_zero, "connecting map nonzero at i=" + std::to_string(row.i));
    rows << "i=" << row.i << " dim " << row.tail.dim.to_string() << " depth " << row.tail.depth.to_string()
         << " rel depth " << row.relative.depth.to_string() << "; ";
  }
  ck.expect(p.rows.size() == 3, "expected rows for i = 0, 1, 2");
  return ck.outcome(rows.str());
}

Outcome criterion7() {
  Checker ck;
  const auto x = catalog_model("FreeCircleTimes:P1");
  ck.expect(min_orbit_dim(x) == 1, "min orbit dim is not 1");
  for (const auto& ring : {kZ, kQ}) {
    const auto r = verify(x, ring, SequenceKind::gt(), 16);
    ck.expect(r.verdict.kind == VerdictKind::ExactUpToD,
              "GT over " + ring.descriptor() + " is " + std::string(to_string(r.verdict.kind)));
  }
  const auto p = cm_profile(x, kQ, 16);
  ck.expect(p.htx.dim == ExtInt(1) && p.htx_dim_ok, "dim H_T(X) over Q is " + p.htx.dim.to_string());
  return ck.outcome("GT exact over Z and Q, k = 1, dim H_T(X) over Q = " + p.htx.dim.to_string());
}

// --- engine soundness -----------------------------------------------------------

struct RandomComplex {
  GradedMap f, g;
  int max_degree = 0;
};

RandomComplex random_complex(oracle::Rng& rng) {
  const int n = static_cast<int>(rng.range(1, 2));
  const PolynomialRingContext ctx{n, kZ};
  std::vector<int> g0(static_cast<size_t>(rng.range(1, 2))), g1(static_cast<size_t>(rng.range(1, 3)));
  for (auto& d : g0) d = 2 * static_cast<int>(rng.range(0, 2));
  for (auto& d : g1) d = 2 * static_cast<int>(rng.range(0, 2));
  std::vector<PolyColumn> r1;
  for (long k = rng.range(0, 3); k > 0; --k)
    r1.push_back(oracle::random_column(rng, n, g1, 2 * static_cast<int>(rng.range(1, 4)), 3));
  auto m0 = std::make_shared<const GradedModule>(GradedModule::free(ctx, g0));
  auto m1 = std::make_shared<const GradedModule>(GradedModule(ctx, g1, r1));
  std::vector<PolyColumn> fcols;
  for (int d : g0) fcols.push_back(oracle::random_column(rng, n, g1, d, 3));
  std::vector<PolyColumn> extra = fcols;
  for (long k = rng.range(0, 2); k > 0; --k)
    extra.push_back(oracle::random_column(rng, n, g1, 2 * static_cast<int>(rng.range(0, 3)), 3));
  auto m2 = std::make_shared<const GradedModule>(m1->with_extra_relations(extra));
  const long c = std::array<long, 4>{1, 2, 3, 6}[static_cast<size_t>(rng.range(0, 3))];
  std::vector<PolyColumn> gcols(g1.size(), PolyColumn(g1.size(), Poly(n)));
  for (size_t i = 0; i < g1.size(); ++i) gcols[i][i] = Poly::constant(n, c);
  RandomComplex out{GradedMap(m0, m1, fcols), GradedMap(m1, m2, gcols), static_cast<int>(rng.range(4, 10))};
  return out;
}

bool same(const FinitelyGeneratedRModule& engine, const oracle::SliceHomology& brute) {
  auto t = engine.torsion;
  for (auto& x : t) x = abs(x);
  std::sort(t.begin(), t.end());
  return engine.free_rank == brute.free_rank && t == brute.torsion;
}

ExtInt minus_one(const ExtInt& x) { return x.finite() ? ExtInt(x.value() - 1) : x; }

ExtInt ext_min(const ExtInt& a, const ExtInt& b) { return a.less_equal(b) ? a : b; }

// A few random homogeneous elements of m.
void random_elements(oracle::Rng& rng, const GradedModule& m, std::vector<PolyColumn>& gens, std::vector<int>& degrees) {
  for (long k = rng.range(1, 2); k > 0; --k) {
    const int d = m.generator_degrees()[static_cast<size_t>(rng.range(0, static_cast<long>(m.num_generators()) - 1))] +
                  2 * static_cast<int>(rng.range(0, 1));
    gens.push_back(oracle::random_column(rng, m.n(), m.generator_degrees(), d, 2));
    degrees.push_back(d);
  }
}

// The submodule they generate, presented through degree `bound`.
GradedModule submodule(const GradedModule& m, const std::vector<PolyColumn>& gens, const std::vector<int>& degrees,
                       int bound) {
  const int n = m.n();
  SubmoduleSource src(m, [&, n](int j) {
    return free_slice_image(gens, degrees, m.generator_degrees(), n, j, m.ring());
  });
  return present_degreewise(src, m.ctx(), 0, bound, true).module;
}

Outcome criterion8() {
  Checker ck;
  oracle::Rng rng(808);
  int complexes = 0, slices = 0, nonzero = 0;
  for (; complexes < 120; ++complexes) {
    const RandomComplex rc = random_complex(rng);
    GradedComplex cx;
    cx.terms = {rc.f.source, rc.f.target, rc.g.target};
    cx.maps = {rc.f, rc.g};
    const auto mid = homology_at(cx, 1, rc.max_degree);
    const auto zero = std::make_shared<const GradedModule>(GradedModule::zero(rc.f.source->ctx()));
    const GradedMap into(zero, rc.f.source, {});
    const auto first = homology_at(cx, 0, rc.max_degree);
    for (int j = 0; j <= rc.max_degree; ++j) {
      for (const auto* res : {&mid, &first}) {
        FinitelyGeneratedRModule engine;
        for (const auto& s : res->slices)
          if (s.degree == j) engine = s.homology;
        const auto brute = res == &mid ? oracle::middle_homology(rc.f, rc.g, j) : oracle::middle_homology(into, rc.f, j);
        ck.expect(same(engine, brute), "homology mismatch in degree " + std::to_string(j));
        ++slices;
        nonzero += engine.is_zero() ? 0 : 1;
      }
    }
  }

  int modules = 0, cokernel_pairs = 0, cm_pairs = 0, free_count = 0;
  for (const auto& ring : {kQ, kF2}) {
    for (int trial = 0; trial < 40; ++trial) {
      const GradedModule m = oracle::random_module(rng, ring, 3, 2, 3);
      const int bound = homological_degree_bound(m);
      const auto dd = depth_dim(m);
      if (dd.dim.kind() == ExtInt::Kind::NegInf) continue;
      ++modules;
      ck.expect(dd.depth.less_equal(dd.dim), "depth exceeds dim");

      if (ring == kQ) {
        const bool free = is_free(m, bound).free;
        const bool cm_full = dd.is_cm == Tri::True && dd.dim == ExtInt(m.n());
        ck.expect(free == cm_full, "free differs from CM of dimension n");
        free_count += free ? 1 : 0;
      }

      // 0 -> U -> M -> N -> 0 with U generated by random elements.
      std::vector<PolyColumn> gens;
      std::vector<int> degrees;
      random_elements(rng, m, gens, degrees);
      // Generators of U sit at most two degrees above those of M.
      int sub_bound = bound + 2;
      GradedModule u = submodule(m, gens, degrees, sub_bound);
      const GradedModule nq = m.with_extra_relations(gens);
      const auto du = depth(u, sub_bound);
      const auto dn = depth(nq);
      ck.expect(ext_min(minus_one(du.depth), dd.depth).less_equal(dn.depth), "depth of the cokernel too small");
      ++cokernel_pairs;

      if (dd.is_cm == Tri::True && !u.has_no_generators()) {
        // The presentation of U is only trusted through sub_bound; widen it
        // until the Hilbert polynomial of U is visible.
        std::optional<DepthDimReport> ku;
        for (int tries = 0; !ku; ++tries) {
          try {
            ku = krull_dim(u);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegreeBoundTooSmall || tries == 3) throw;
            sub_bound = std::max(sub_bound + 12, homological_degree_bound(u));
            u = submodule(m, gens, degrees, sub_bound);
          }
        }
        if (ku->dim.kind() != ExtInt::Kind::NegInf) {
          ck.expect(ku->dim == dd.dim, "nonzero submodule of a CM module has smaller dimension");
          ++cm_pairs;
        }
      }
    }
  }
  return ck.outcome(std::to_string(complexes) + " complexes / " + std::to_string(slices) + " slices (" +
                    std::to_string(nonzero) + " nonzero) match the dense oracle; " + std::to_string(modules) +
                    " modules with depth <= dim, " + std::to_string(cokernel_pairs) + " cokernel depth checks, " +
                    std::to_string(cm_pairs) + " CM submodule checks, " + std::to_string(free_count) +
                    " free modules over Q");
}

// --- determinism of the command-line reports ----------------------------------

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + cmd);
  std::array<char, 4096> buf{};
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

std::vector<std::string> golden_commands() {
  const std::string data = EXSEQ_DATA_DIR;
  std::vector<std::string> cmds;
  for (auto name : {"P1", "P2", "P1xP1", "Hirzebruch:1", "Hirzebruch:2"})
    for (auto ring : {"Q", "Z", "Fp:2", "Fp:3"})
      cmds.push_back(std::string("verify ") + name + " --ring " + ring + " --kind full --max-degree 20");
  cmds.push_back("verify SpinningSphere:2 --ring Fp:2 --kind truncated:0 --max-degree 8");
  cmds.push_back("verify SpinningSphere:2 --ring Z --kind full --max-degree 8");
  cmds.push_back("verify FreeCircleTimes:P1 --ring Z --kind gt --max-degree 16");
  cmds.push_back("verify FreeCircleTimes:P1 --ring Q --kind gt --max-degree 16");
  cmds.push_back("verify " + data + "/three_spheres_gkm.json --ring Q --kind cs --max-degree 12");
  cmds.push_back("cs-compare P2 --ring Z --max-degree 20");
  cmds.push_back("cs-compare P1xP1 --ring Z --max-degree 20");
  cmds.push_back("profile P2 --ring Q --max-degree 20");
  cmds.push_back("profile P1 --ring Q --max-degree 20");
  cmds.push_back("profile FreeCircleTimes:P1 --ring Q --max-degree 16");
  cmds.push_back("check-conditions " + data + "/tw_strata.json --ring Z --k 1");
  cmds.push_back("check-conditions " + data + "/spinning_sphere2_strata.json --ring Fp:2 --k 0");
  cmds.push_back("hilbert P2 --ring Z --max-degree 12");
  cmds.push_back("hilbert " + data + "/module_example.json --max-degree 12");
  cmds.push_back("decompose --n 2 --matrix [[2,0],[0,2]] --ring Z");
  return cmds;
}

Outcome criterion9() {
  Checker ck;
  const std::string cli = EXSEQ_CLI;
  int runs = 0;
  for (const auto& cmd : golden_commands()) {
    for (auto format : {"json", "text"}) {
      const std::string base = cli + " " + cmd + " --format " + format;
      int s1 = 0, s8 = 0, s8b = 0;
      const std::string a = run_capture(base + " --jobs 1", s1);
      const std::string b = run_capture(base + " --jobs 8", s8);
      const std::string c = run_capture(base + " --jobs 8", s8b);
      ck.expect(a == b && b == c && s1 == s8 && s8 == s8b, "output differs for: " + cmd + " (" + format + ")");
      ck.expect(!a.empty(), "no output for: " + cmd);
      runs += 3;
    }
  }
  return ck.outcome(std::to_string(runs) + " runs over " + std::to_string(golden_commands().size()) +
                    " golden commands are byte-identical across --jobs 1 and --jobs 8");
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number; none runs them all.
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::vector<std::tuple<int, const char*, double, Outcome (*)()>> all = {
      {1, "classifying-space dimension matches the minimal-prime oracle", 5, criterion1},
      {2, "the two condition checkers agree", 5, criterion2},
      {3, "Atiyah-Bredon sequences of smooth toric varieties are exact", 60, criterion3},
      {4, "Chang-Skjelbred images agree", 30, criterion4},
      {5, "conditions matter for the speed-2 sphere", 5, criterion5},
      {6, "depth and dimension profile of P2", 30, criterion6},
      {7, "Goertsches-Toeben sequence and dimension without fixed points", 10, criterion7},
      {8, "engine soundness against oracles", 60, criterion8},
      {9, "deterministic reports", 0, criterion9},
  };
  int failed = 0;
  for (const auto& [id, title, limit, body] : all)
    if (only.empty() || only.count(id)) failed += run(id, title, limit, body);
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
