#include "exseq/homological.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "exseq/error.hpp"
#include "exseq/lattice.hpp"
#include "exseq/parallel.hpp"

namespace exseq {

std::string ExtInt::to_string() const {
  switch (kind_) {
    case Kind::Finite: return std::to_string(value_);
    case Kind::PosInf: return "inf";
    case Kind::NegInf: return "-inf";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

bool ExtInt::less_equal(const ExtInt& other) const {
  if (!known() || !other.known()) return false;
  if (kind_ == Kind::NegInf || other.kind_ == Kind::PosInf) return true;
  if (kind_ == Kind::PosInf || other.kind_ == Kind::NegInf) return false;
  return value_ <= other.value_;
}

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

int Resolution::length() const { return static_cast<int>(terms.size()) - 1; }

std::vector<std::vector<std::pair<int, int>>> Resolution::betti() const {
  std::vector<std::vector<std::pair<int, int>>> out;
  for (const auto& f : terms) {
    std::map<int, int> counts;
    for (int d : f.generator_degrees()) ++counts[d];
    out.emplace_back(counts.begin(), counts.end());
  }
  return out;
}

namespace {

int lowest_degree(const GradedModule& m) { return std::min(0, m.min_generator_degree()); }

std::vector<FinitelyGeneratedRModule> slices_between(const GradedModule& m, int lo, int hi, int jobs) {
  if (hi < lo) return {};
  return parallel_map(static_cast<size_t>(hi - lo + 1), jobs,
                      [&](size_t i) { return graded_piece(m, lo + static_cast<int>(i)); });
}

// Zero iff every slice up to the bound vanishes and all generators lie below it.
bool is_zero_module(const GradedModule& m, int max_degree, int jobs) {
  if (m.has_no_generators()) return true;
  if (m.max_generator_degree() > max_degree) {
    throw Error(ErrorKind::DegreeBoundTooSmall, "generators above the degree bound");
  }
  for (const auto& s : slices_between(m, lowest_degree(m), m.max_generator_degree(), jobs)) {
    if (!s.is_zero()) return false;
  }
  return true;
}

void require_field(const GradedModule& m, const char* what) {
  if (!m.ring().is_field()) throw Error(ErrorKind::FieldRequired, std::string(what) + " needs a field");
}

std::vector<PolyColumn> columns_of(const DegreewisePresentation& p, const std::vector<int>& ambient_degrees, int n) {
  std::vector<PolyColumn> cols;
  const auto& degrees = p.module.generator_degrees();
  for (size_t g = 0; g < degrees.size(); ++g) {
    cols.push_back(column_from_slice(p.generator_elements[g], 0, ambient_degrees, n, degrees[g]));
  }
  return cols;
}

bool late_generator(const std::vector<int>& degrees, int max_degree, int n) {
  return std::any_of(degrees.begin(), degrees.end(), [&](int d) { return d > max_degree - (n + 2); });
}

}  // namespace

DegreewisePresentation minimal_generators(const GradedModule& m, int max_degree, bool with_relations) {
  if (m.has_no_generators()) {
    DegreewisePresentation out;
    out.module = GradedModule::zero(m.ctx());
    return out;
  }
  SubmoduleSource src(m, [&m](int j) { return Matrix::identity(free_slice_dim(m.generator_degrees(), m.n(), j)); });
  return present_degreewise(src, m.ctx(), m.min_generator_degree(), max_degree, with_relations);
}

Resolution minimal_resolution(const GradedModule& m, int max_degree, int /*jobs*/) {
  require_field(m, "minimal_resolution");
  Resolution res;
  res.max_degree = max_degree;
  const int n = m.n();
  auto gens = minimal_generators(m, max_degree);
  if (gens.module.has_no_generators()) return res;

  auto ambient = std::make_shared<const GradedModule>(GradedModule::free(m.ctx(), m.generator_degrees()));
  GradedModule f0 = GradedModule::free(m.ctx(), gens.module.generator_degrees());
  auto f0p = std::make_shared<const GradedModule>(f0);
  GradedMap phi(f0p, ambient, columns_of(gens, m.generator_degrees(), n));
  GradedModule target = m;
  res.terms.push_back(f0);
  res.complete = !late_generator(f0.generator_degrees(), max_degree, n);

  while (static_cast<int>(res.terms.size()) <= n) {
    const GradedModule fi = res.terms.back();
    KernelSource src(fi, phi, target);
    auto syz = present_degreewise(src, m.ctx(), fi.min_generator_degree(), max_degree, false);
    if (syz.module.has_no_generators()) break;
    GradedModule next = GradedModule::free(m.ctx(), syz.module.generator_degrees());
    if (late_generator(next.generator_degrees(), max_degree, n)) res.complete = false;
    auto src_ptr = std::make_shared<const GradedModule>(next);
    auto tgt_ptr = std::make_shared<const GradedModule>(fi);
    GradedMap d(src_ptr, tgt_ptr, columns_of(syz, fi.generator_degrees(), n));
    res.differentials.push_back(d);
    res.terms.push_back(next);
    phi = d;
    target = fi;
  }
  return res;
}

int homological_degree_bound(const GradedModule& m) {
  int top = m.max_generator_degree();
  for (int d : m.relation_degrees()) top = std::max(top, d);
  // The Hilbert polynomial test needs 2n+3 samples per parity past the presentation data.
  return std::max(default_degree_bound(m), top + 2 * (2 * m.n() + 3) + 2);
}

DepthDimReport depth(const GradedModule& m, std::optional<int> max_degree, int jobs) {
  require_field(m, "depth");
  const int bound = max_degree.value_or(homological_degree_bound(m));
  DepthDimReport rep;
  if (is_zero_module(m, bound, jobs)) {
    rep.depth = ExtInt::pos_inf();
    rep.certificate = "zero module";
    return rep;
  }
  Resolution res = minimal_resolution(m, bound, jobs);
  rep.depth = m.n() - res.length();
  rep.stable = res.complete;
  std::ostringstream cert;
  cert << "n - pd = " << m.n() << " - " << res.length() << "; betti";
  for (const auto& row : res.betti()) {
    cert << " [";
    for (size_t i = 0; i < row.size(); ++i) cert << (i ? " " : "") << row[i].second << "@" << row[i].first;
    cert << "]";
  }
  rep.certificate = cert.str();
  return rep;
}

namespace {

struct FieldDim {
  ExtInt dim;
  std::string certificate;
};

// Krull dimension over a field from the Hilbert function.
FieldDim field_dim(const GradedModule& m, int bound, int jobs) {
  if (is_zero_module(m, bound, jobs)) return {ExtInt::neg_inf(), "zero module"};
  const int n = m.n();
  const int lo = lowest_degree(m);
  auto pieces = slices_between(m, lo, bound, jobs);
  int best = -1;
  std::ostringstream cert;
  for (int parity = 0; parity < 2; ++parity) {
    const auto& gd = m.generator_degrees();
    if (std::none_of(gd.begin(), gd.end(), [&](int g) { return ((g % 2) + 2) % 2 == parity; })) continue;
    std::vector<mpz_class> samples;
    for (int j = lo; j <= bound; ++j) {
      if (((j % 2) + 2) % 2 == parity) samples.push_back(pieces[static_cast<size_t>(j - lo)].free_rank);
    }
    const size_t need = static_cast<size_t>(2 * n + 3);
    if (samples.size() < need) {
      throw Error(ErrorKind::DegreeBoundTooSmall,
                  "need " + std::to_string(need) + " samples per parity for the Hilbert polynomial");
    }
    // diffs[e] holds the e-th difference sequence.
    std::vector<std::vector<mpz_class>> diffs{samples};
    for (int e = 1; e <= n + 1; ++e) {
      const auto& prev = diffs.back();
      std::vector<mpz_class> next(prev.size() - 1);
      for (size_t i = 0; i + 1 < prev.size(); ++i) next[i] = prev[i + 1] - prev[i];
      diffs.push_back(std::move(next));
    }
    const auto& top = diffs.back();
    for (size_t i = top.size() - static_cast<size_t>(n + 2); i < top.size(); ++i) {
      if (top[i] != 0) {
        throw Error(ErrorKind::DegreeBoundTooSmall, "Hilbert function not yet polynomial at degree " +
                                                        std::to_string(bound));
      }
    }
    int degree = -1;
    for (int e = n; e >= 0; --e) {
      if (diffs[static_cast<size_t>(e)].back() != 0) {
        degree = e;
        break;
      }
    }
    cert << (cert.tellp() > 0 ? ", " : "") << (parity ? "odd" : "even") << " degrees: polynomial degree " << degree;
    best = std::max(best, degree);
  }
  return {ExtInt(best + 1), "Hilbert polynomial through degree " + std::to_string(bound) + " (" + cert.str() + ")"};
}

std::vector<long> content_primes(const GradedModule& m, int bound, int jobs) {
  std::set<long> primes;
  for (const auto& col : m.relations())
    for (const auto& p : col)
      for (const auto& [e, c] : p.terms())
        for (long q : prime_factors(c)) primes.insert(q);
  for (const auto& s : slices_between(m, lowest_degree(m), bound, jobs))
    for (const auto& t : s.torsion)
      for (long q : prime_factors(t)) primes.insert(q);
  std::vector<long> out;
  for (long q : primes) {
    if (!is_invertible(m.ring(), q)) out.push_back(q);
  }
  return out;
}

}  // namespace

namespace {

// With an explicit bound the Hilbert polynomial test runs once. Otherwise the
// bound grows until the test settles or the presentation runs out.
FieldDim field_dim_search(const GradedModule& m, std::optional<int> max_degree, int jobs) {
  if (max_degree) return field_dim(m, *max_degree, jobs);
  const int step = 2 * (2 * m.n() + 3);
  int bound = homological_degree_bound(m);
  for (int attempt = 0;; ++attempt) {
    try {
      return field_dim(m, bound, jobs);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegreeBoundTooSmall || attempt >= 4 || bound + step > m.valid_through()) throw;
    }
    bound += step;
  }
}

}  // namespace

DepthDimReport krull_dim(const GradedModule& m, std::optional<int> max_degree, int jobs) {
  const int bound = max_degree.value_or(homological_degree_bound(m));
  DepthDimReport rep;
  if (m.ring().is_field()) {
    auto fd = field_dim_search(m, max_degree, jobs);
    rep.dim = fd.dim;
    rep.certificate = fd.certificate;
    return rep;
  }
  auto q = field_dim_search(m.with_ring(CoefficientRing::rationals()), max_degree, jobs);
  ExtInt best = q.dim.finite() ? ExtInt(q.dim.value() + 1) : q.dim;
  std::ostringstream cert;
  cert << "over Q: " << q.dim.to_string();
  rep.primes_examined = content_primes(m, bound, jobs);
  for (long p : rep.primes_examined) {
    auto fp = field_dim_search(m.with_ring(CoefficientRing::prime_field(p)), max_degree, jobs);
    cert << "; over F_" << p << ": " << fp.dim.to_string();
    if (best.less_equal(fp.dim)) best = fp.dim;
  }
  rep.dim = best;
  rep.certificate = cert.str();
  return rep;
}

namespace {

// Recognises sums of cyclic modules A/(linear forms); returns one subgroup per generator.
std::optional<std::vector<ClosedSubgroup>> linear_cyclic_summands(const GradedModule& m) {
  const int n = m.n();
  std::vector<std::vector<std::vector<long>>> rows(m.num_generators());
  for (const auto& col : m.relations()) {
    int where = -1;
    for (size_t g = 0; g < col.size(); ++g) {
      if (col[g].is_zero()) continue;
      if (where >= 0) return std::nullopt;
      where = static_cast<int>(g);
    }
    const Poly& p = col[static_cast<size_t>(where)];
    if (p.degree() != 1) return std::nullopt;
    std::vector<long> coeffs(static_cast<size_t>(n), 0);
    for (const auto& [e, c] : p.terms()) {
      if (!c.fits_slong_p()) return std::nullopt;
      for (int j = 0; j < n; ++j)
        if (e[static_cast<size_t>(j)] == 1) coeffs[static_cast<size_t>(j)] = c.get_si();
    }
    rows[static_cast<size_t>(where)].push_back(coeffs);
  }
  std::vector<ClosedSubgroup> out;
  for (const auto& r : rows) out.emplace_back(n, Matrix::from_rows(r, static_cast<size_t>(n)));
  return out;
}

}  // namespace

DepthDimReport depth_dim(const GradedModule& m, std::optional<int> max_degree, int jobs) {
  const int bound = max_degree.value_or(homological_degree_bound(m));
  if (m.ring().is_field()) {
    DepthDimReport dim = krull_dim(m, max_degree, jobs);
    if (dim.dim.kind() == ExtInt::Kind::NegInf) {
      dim.depth = ExtInt::pos_inf();
      dim.certificate = "zero module";
      return dim;
    }
    DepthDimReport dep = depth(m, bound, jobs);
    DepthDimReport rep;
    rep.dim = dim.dim;
    rep.depth = dep.depth;
    rep.stable = dep.stable && dim.stable;
    rep.is_cm = rep.depth == rep.dim ? Tri::True : Tri::False;
    rep.certificate = "depth: " + dep.certificate + "; dim: " + dim.certificate;
    return rep;
  }

  DepthDimReport rep = krull_dim(m, max_degree, jobs);
  if (rep.dim.kind() == ExtInt::Kind::NegInf) {
    rep.depth = ExtInt::pos_inf();
    rep.certificate = "zero module";
    return rep;
  }
  const std::string dim_cert = "dim: " + rep.certificate;
  const int d = base_dimension(m.ring());
  FreenessReport fr = is_free(m, bound, jobs);
  if (fr.free) {
    rep.depth = d + m.n();
    rep.is_cm = rep.dim == rep.depth ? Tri::True : Tri::False;
    rep.certificate = "free module: depth = d + n; " + dim_cert;
    return rep;
  }
  if (auto summands = linear_cyclic_summands(m)) {
    bool all_cm = true;
    std::set<int> dims;
    int min_dim = INT_MAX;
    for (const auto& h : *summands) {
      Decomposition dec = decompose_subgroup(h);
      int s = 0;
      for (const auto& x : dec.orders) s += m.ring().is_unit(x) ? 0 : 1;
      if (s >= 2) all_cm = false;
      int dh = dim_classifying(dec, m.ring());
      dims.insert(dh);
      min_dim = std::min(min_dim, dh);
    }
    if (!all_cm) {
      rep.is_cm = Tri::False;
      rep.certificate = "sum of classifying-space modules, one with two non-invertible orders (not equidimensional); " +
                        dim_cert;
    } else {
      rep.depth = min_dim;
      rep.is_cm = dims.size() == 1 ? Tri::True : Tri::False;
      rep.certificate = "sum of CM classifying-space modules of dimensions";
      for (int x : dims) rep.certificate += " " + std::to_string(x);
      rep.certificate += "; " + dim_cert;
    }
    return rep;
  }
  rep.certificate = "depth over " + m.ring().descriptor() + " not decided for this shape; " + dim_cert;
  return rep;
}

DepthDimReport is_cohen_macaulay(const GradedModule& m, std::optional<int> max_degree, int jobs) {
  require_field(m, "is_cohen_macaulay");
  DepthDimReport rep = depth_dim(m, max_degree, jobs);
  if (rep.dim.kind() == ExtInt::Kind::NegInf) throw Error(ErrorKind::ZeroModule, "zero module");
  return rep;
}

FreenessReport is_free(const GradedModule& m, std::optional<int> max_degree, int jobs) {
  const int bound = max_degree.value_or(homological_degree_bound(m));
  FreenessReport rep;
  if (m.has_no_generators()) {
    rep.free = true;
    rep.certificate = "zero module";
    return rep;
  }
  auto gens = minimal_generators(m, bound);
  const auto& degrees = gens.module.generator_degrees();
  for (size_t g = 0; g < degrees.size(); ++g) {
    if (gens.generator_orders[g] != 0) {
      rep.first_bad_degree = degrees[g];
      rep.certificate = "generator of order " + gens.generator_orders[g].get_str() + " in degree " +
                        std::to_string(degrees[g]);
      return rep;
    }
  }
  const int lo = lowest_degree(m);
  auto pieces = slices_between(m, lo, bound, jobs);
  for (int j = lo; j <= bound; ++j) {
    const auto& piece = pieces[static_cast<size_t>(j - lo)];
    const int expect = static_cast<int>(free_slice_dim(degrees, m.n(), j));
    if (!piece.torsion.empty() || piece.free_rank != expect) {
      rep.first_bad_degree = j;
      rep.certificate = "degree " + std::to_string(j) + ": slice " + piece.to_string() + ", free of rank " +
                        std::to_string(expect) + " expected";
      return rep;
    }
  }
  rep.free = true;
  rep.generator_degrees = degrees;
  rep.certificate = "slices agree with the free module on the minimal generators through degree " +
                    std::to_string(bound);
  return rep;
}

}  // namespace exseq
