#include "exseq/spaces.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "exseq/error.hpp"

namespace exseq {

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorKind::InvalidModel, why); }

Matrix ray_matrix(const Fan& fan, const std::vector<int>& cone) {
  Matrix m(cone.size(), static_cast<size_t>(fan.n));
  for (size_t r = 0; r < cone.size(); ++r)
    for (int c = 0; c < fan.n; ++c) m(r, c) = fan.rays[cone[r]][c];
  return m;
}

// Determinant of a square integer matrix by fraction-free elimination.
mpz_class determinant(Matrix a) {
  const size_t n = a.rows();
  mpz_class sign = 1, prev = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return n == 0 ? mpz_class(1) : sign * a(n - 1, n - 1);
}

bool is_subset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<std::vector<int>> maximal_cones(const Fan& fan) {
  const auto all = all_cones(fan);
  std::vector<std::vector<int>> out;
  for (const auto& c : all) {
    bool maximal = true;
    for (const auto& d : all) {
      if (d.size() > c.size() && is_subset(c, d)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(c);
  }
  return out;
}

std::string cone_name(const std::vector<int>& cone) {
  std::string s = "cone[";
  for (size_t i = 0; i < cone.size(); ++i) s += (i ? "," : "") + std::to_string(cone[i]);
  return s + "]";
}

void validate_fan(const Fan& fan) {
  if (fan.n < 0) invalid("negative torus rank");
  for (const auto& ray : fan.rays) {
    if (static_cast<int>(ray.size()) != fan.n) invalid("ray length differs from n");
    long g = 0;
    for (long x : ray) g = std::gcd(g, x);
    if (g != 1) invalid("rays must be nonzero and primitive");
  }
  std::set<std::vector<int>> seen;
  for (auto cone : fan.cones) {
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end()) invalid("repeated ray in a cone");
    for (int r : cone)
      if (r < 0 || r >= static_cast<int>(fan.rays.size())) invalid("ray index out of range");
    if (rank(ray_matrix(fan, cone), CoefficientRing::rationals()) != cone.size())
      invalid("cone rays are linearly dependent");
    if (!seen.insert(cone).second) invalid("repeated cone");
  }
}

void validate_gkm(const GkmGraph& g) {
  if (g.n < 1) invalid("GKM graph needs n >= 1");
  if (g.vertices.empty()) invalid("GKM graph without vertices");
  if (std::set<std::string>(g.vertices.begin(), g.vertices.end()).size() != g.vertices.size())
    invalid("repeated vertex label");
  for (const auto& e : g.edges) {
    const int nv = static_cast<int>(g.vertices.size());
    if (e.v < 0 || e.v >= nv || e.w < 0 || e.w >= nv) invalid("edge endpoint out of range");
    if (e.v == e.w) invalid("edge is a loop");
    if (static_cast<int>(e.label.size()) != g.n) invalid("edge label length differs from n");
    if (std::all_of(e.label.begin(), e.label.end(), [](long x) { return x == 0; })) invalid("zero edge label");
  }
}

}  // namespace

SpaceModel::SpaceModel(Variant v, std::string name) : v_(std::move(v)), name_(std::move(name)) {
  std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Fan>) {
          validate_fan(x);
        } else if constexpr (std::is_same_v<T, GkmGraph>) {
          validate_gkm(x);
        } else if constexpr (std::is_same_v<T, SingleOrbit>) {
          if (x.isotropy.n() < 0) invalid("negative torus rank");
        } else if constexpr (std::is_same_v<T, DisjointUnion>) {
          if (x.parts.empty()) invalid("empty disjoint union");
          for (const auto& p : x.parts) {
            if (!p) invalid("null part");
            if (p->n() != x.n) invalid("parts of a disjoint union must share n");
          }
        } else {
          if (!x.base) invalid("null base");
        }
      },
      v_);
}

int SpaceModel::n() const {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SingleOrbit>) {
          return x.isotropy.n();
        } else if constexpr (std::is_same_v<T, FreeCircleProduct>) {
          return x.base->n() + 1;
        } else {
          return x.n;
        }
      },
      v_);
}

std::string_view SpaceModel::kind_name() const {
  static constexpr std::string_view names[] = {"fan", "gkm", "single_orbit", "disjoint_union", "free_circle_product"};
  return names[v_.index()];
}

// --- fans -------------------------------------------------------------------

std::vector<std::vector<int>> all_cones(const Fan& fan) {
  std::set<std::vector<int>> faces{{}};
  for (auto cone : fan.cones) {
    std::sort(cone.begin(), cone.end());
    const size_t k = cone.size();
    for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
      std::vector<int> face;
      for (size_t b = 0; b < k; ++b)
        if (mask & (size_t{1} << b)) face.push_back(cone[b]);
      faces.insert(face);
    }
  }
  std::vector<std::vector<int>> out(faces.begin(), faces.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

bool is_smooth(const Fan& fan) {
  for (const auto& cone : fan.cones) {
    std::vector<int> c = cone;
    std::sort(c.begin(), c.end());
    if (c.empty()) continue;
    auto snf = smith_normal_form(ray_matrix(fan, c), CoefficientRing::integers(), {.left = false, .right = false});
    for (const auto& f : snf.invariant_factors)
      if (abs(f) != 1) return false;
  }
  return true;
}

bool is_complete(const Fan& fan) {
  const auto maxes = maximal_cones(fan);
  if (maxes.empty()) return false;
  for (const auto& c : maxes)
    if (static_cast<int>(c.size()) != fan.n) return false;
  if (fan.n == 0) return maxes.size() == 1;
  std::map<std::vector<int>, std::vector<std::pair<int, int>>> walls;  // wall -> (max cone, removed ray)
  for (size_t m = 0; m < maxes.size(); ++m) {
    for (size_t l = 0; l < maxes[m].size(); ++l) {
      std::vector<int> w = maxes[m];
      w.erase(w.begin() + static_cast<long>(l));
      walls[w].push_back({static_cast<int>(m), maxes[m][l]});
    }
  }
  for (const auto& [w, sides] : walls) {
    if (sides.size() != 2) return false;
    int s[2];
    for (int k = 0; k < 2; ++k) {
      std::vector<int> order{sides[k].second};
      order.insert(order.end(), w.begin(), w.end());
      s[k] = sgn(determinant(ray_matrix(fan, order)));
    }
    if (s[0] * s[1] >= 0) return false;
  }
  return true;
}

Matrix cone_orthogonal(const Fan& fan, const std::vector<int>& cone) {
  const size_t n = static_cast<size_t>(fan.n);
  if (cone.empty()) return Matrix::identity(n);
  Matrix kb = kernel_basis(ray_matrix(fan, cone), CoefficientRing::integers());
  if (kb.cols() == 0) return Matrix(0, n);
  return kb.transpose();
}

GkmGraph fan_one_skeleton(const Fan& fan) {
  if (!is_complete(fan)) throw Error(ErrorKind::UnsupportedModelRing, "one-skeleton needs a complete fan");
  GkmGraph g;
  g.n = fan.n;
  const auto maxes = maximal_cones(fan);
  for (const auto& c : maxes) g.vertices.push_back(cone_name(c));
  std::map<std::vector<int>, std::vector<int>> walls;
  for (size_t m = 0; m < maxes.size(); ++m) {
    for (size_t l = 0; l < maxes[m].size(); ++l) {
      std::vector<int> w = maxes[m];
      w.erase(w.begin() + static_cast<long>(l));
      walls[w].push_back(static_cast<int>(m));
    }
  }
  for (const auto& c : all_cones(fan)) {
    if (static_cast<int>(c.size()) != fan.n - 1) continue;
    const auto& sides = walls.at(c);
    Matrix u = cone_orthogonal(fan, c);
    std::vector<long> label(static_cast<size_t>(fan.n));
    for (int k = 0; k < fan.n; ++k) label[k] = u(0, k).get_si();
    g.edges.push_back({sides[0], sides[1], label});
  }
  return g;
}

// --- strata and skeleta -----------------------------------------------------

std::vector<StratumDescriptor> strata(const SpaceModel& x) {
  const int n = x.n();
  return std::visit(
      [&](const auto& v) -> std::vector<StratumDescriptor> {
        using T = std::decay_t<decltype(v)>;
        std::vector<StratumDescriptor> out;
        if constexpr (std::is_same_v<T, Fan>) {
          for (const auto& c : all_cones(v))
            out.push_back({cone_name(c), ClosedSubgroup(n, cone_orthogonal(v, c)), n - static_cast<int>(c.size())});
        } else if constexpr (std::is_same_v<T, GkmGraph>) {
          for (const auto& name : v.vertices) out.push_back({name, ClosedSubgroup::whole_torus(n), 0});
          std::map<std::string, int> uses;
          for (const auto& e : v.edges) {
            std::string name = "edge:" + v.vertices[e.v] + "-" + v.vertices[e.w];
            if (int k = ++uses[name]; k > 1) name += "#" + std::to_string(k);
            out.push_back({name, ClosedSubgroup(n, Matrix::from_rows({e.label}, n)), 1});
          }
        } else if constexpr (std::is_same_v<T, SingleOrbit>) {
          out.push_back({"orbit", v.isotropy, n - decompose_subgroup(v.isotropy).torus_rank});
        } else if constexpr (std::is_same_v<T, DisjointUnion>) {
          for (size_t k = 0; k < v.parts.size(); ++k) {
            for (auto s : strata(*v.parts[k])) {
              s.name = "part" + std::to_string(k) + "/" + s.name;
              out.push_back(std::move(s));
            }
          }
        } else {
          for (const auto& s : strata(*v.base)) {
            const Matrix& c = s.isotropy.character_matrix();
            Matrix m(c.rows() + 1, static_cast<size_t>(n));
            m(0, 0) = 1;
            for (size_t r = 0; r < c.rows(); ++r)
              for (size_t k = 0; k < c.cols(); ++k) m(r + 1, k + 1) = c(r, k);
            out.push_back({s.name, ClosedSubgroup(n, m), s.orbit_dim + 1});
          }
        }
        return out;
      },
      x.variant());
}

std::vector<StratumDescriptor> skeleton(const SpaceModel& x, int i) {
  if (i < -1 || i > x.n()) throw Error(ErrorKind::IndexOutOfRange, "skeleton index " + std::to_string(i));
  std::vector<StratumDescriptor> out;
  for (auto& s : strata(x))
    if (s.orbit_dim <= i) out.push_back(std::move(s));
  return out;
}

std::vector<StratumDescriptor> p_skeleton(const SpaceModel& x, long p, int i) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidPrime, std::to_string(p));
  if (i < -1 || i > x.n()) throw Error(ErrorKind::IndexOutOfRange, "skeleton index " + std::to_string(i));
  std::vector<StratumDescriptor> out;
  for (auto& s : strata(x))
    if (x.n() - p_rank(s.isotropy, p) <= i) out.push_back(std::move(s));
  return out;
}

int min_orbit_dim(const SpaceModel& x) {
  auto all = strata(x);
  if (all.empty()) throw Error(ErrorKind::EmptySpace, "space has no orbits");
  int k = all.front().orbit_dim;
  for (const auto& s : all) k = std::min(k, s.orbit_dim);
  return k;
}

// --- cohomology ---------------------------------------------------------------

namespace {

using ModulePtr = std::shared_ptr<const GradedModule>;

ModulePtr share(GradedModule m) { return std::make_shared<const GradedModule>(std::move(m)); }

GradedMap zero_map(ModulePtr src, ModulePtr tgt, int shift) {
  const int n = tgt->n();
  std::vector<PolyColumn> cols(src->num_generators(), PolyColumn(tgt->num_generators(), Poly(n)));
  return GradedMap(std::move(src), std::move(tgt), std::move(cols), shift);
}

// The Stanley-Reisner ring of the fan as an A-module, t_k acting by sum_rho v_rho[k] x_rho.
class StanleyReisnerSource : public SliceSource {
 public:
  explicit StanleyReisnerSource(const Fan& fan) : fan_(fan) {
    for (const auto& c : all_cones(fan)) faces_.insert(c);
  }

  const std::vector<Exponent>& basis(int half) const {
    auto it = bases_.find(half);
    if (it != bases_.end()) return it->second;
    std::vector<Exponent> out;
    for (const auto& e : monomials(static_cast<int>(fan_.rays.size()), half))
      if (supported(e)) out.push_back(e);
    return bases_.emplace(half, std::move(out)).first->second;
  }

  bool supported(const Exponent& e) const {
    std::vector<int> supp;
    for (size_t r = 0; r < e.size(); ++r)
      if (e[r] > 0) supp.push_back(static_cast<int>(r));
    return faces_.count(supp) > 0;
  }

  size_t ambient_dim(int j) const override { return (j < 0 || j % 2) ? 0 : basis(j / 2).size(); }
  Matrix elements(int j) const override { return Matrix::identity(ambient_dim(j)); }
  Matrix ambient_relations(int j) const override { return Matrix(ambient_dim(j), 0); }

  Matrix act(int k, int j) const override {
    const size_t src = ambient_dim(j), tgt = ambient_dim(j + 2);
    Matrix m(tgt, src);
    if (src == 0) return m;
    const auto& from = basis(j / 2);
    const auto& to = basis(j / 2 + 1);
    std::map<Exponent, size_t> index;
    for (size_t i = 0; i < to.size(); ++i) index[to[i]] = i;
    for (size_t c = 0; c < from.size(); ++c) {
      for (size_t r = 0; r < fan_.rays.size(); ++r) {
        const long coef = fan_.rays[r][k];
        if (coef == 0) continue;
        Exponent e = from[c];
        ++e[r];
        auto it = index.find(e);
        if (it != index.end()) m(it->second, c) += coef;
      }
    }
    return m;
  }

 private:
  const Fan& fan_;
  std::set<std::vector<int>> faces_;
  mutable std::map<int, std::vector<Exponent>> bases_;
};

// Rows are the linear forms u_rho dual to the rays of a smooth full-dimensional cone.
std::vector<Poly> dual_forms(const Fan& fan, const std::vector<int>& cone) {
  const int n = fan.n;
  Matrix b = ray_matrix(fan, cone);  // rows v_rho
  const mpz_class det = determinant(b);
  if (abs(det) != 1) throw Error(ErrorKind::UnsupportedModelRing, "cone " + cone_name(cone) + " is not smooth");
  // U = (B^T)^{-1} = (B^{-1})^T, and B^{-1}(l, rho) = cofactor(rho, l) / det.
  std::vector<Poly> forms;
  for (int rho = 0; rho < n; ++rho) {
    Poly u(n);
    for (int l = 0; l < n; ++l) {
      Matrix minor(static_cast<size_t>(n - 1), static_cast<size_t>(n - 1));
      for (int r = 0, mr = 0; r < n; ++r) {
        if (r == rho) continue;
        for (int c = 0, mc = 0; c < n; ++c) {
          if (c == l) continue;
          minor(mr, mc++) = b(r, c);
        }
        ++mr;
      }
      mpz_class cof = determinant(minor) * (((rho + l) % 2) ? -1 : 1);
      u.add_term([&] { Exponent e(n, 0); e[l] = 1; return e; }(), cof * det);
    }
    forms.push_back(u);
  }
  return forms;
}

SpaceCohomology fan_cohomology(const Fan& fan, const CoefficientRing& ring, int max_degree) {
  if (!is_smooth(fan) || !is_complete(fan))
    throw Error(ErrorKind::UnsupportedModelRing, "fan cohomology needs a smooth complete fan");
  const int n = fan.n;
  const PolynomialRingContext ctx{n, ring};
  SpaceCohomology out;
  out.n = n;
  out.ring = ring;

  StanleyReisnerSource sr(fan);
  auto pres = present_degreewise(sr, ctx, 0, max_degree, true);
  out.htx = share(pres.module);

  const auto cones = all_cones(fan);
  std::vector<std::vector<std::vector<int>>> by_dim(static_cast<size_t>(n) + 1);
  for (const auto& c : cones) by_dim[c.size()].push_back(c);

  for (int i = 0; i <= n; ++i) {
    std::vector<GradedModule> parts;
    for (const auto& c : by_dim[static_cast<size_t>(n - i)])
      parts.push_back(present_classifying_cohomology(ClosedSubgroup(n, cone_orthogonal(fan, c)), ring).shifted(i));
    out.relative.push_back(share(parts.empty() ? GradedModule::zero(ctx) : direct_sum(parts)));
  }

  for (int i = 0; i < n; ++i) {
    const auto& src = by_dim[static_cast<size_t>(n - i)];
    const auto& tgt = by_dim[static_cast<size_t>(n - i - 1)];
    std::map<std::vector<int>, size_t> pos;
    for (size_t t = 0; t < tgt.size(); ++t) pos[tgt[t]] = t;
    std::vector<PolyColumn> cols;
    for (const auto& s : src) {
      PolyColumn col(tgt.size(), Poly(n));
      for (size_t l = 0; l < s.size(); ++l) {
        std::vector<int> face = s;
        face.erase(face.begin() + static_cast<long>(l));
        col[pos.at(face)] = Poly::constant(n, (l % 2) ? -1 : 1);
      }
      cols.push_back(std::move(col));
    }
    out.differentials.emplace_back(out.relative[i], out.relative[i + 1], std::move(cols), 1);
  }

  // Restriction of every generator to every fixed point.
  const auto& maxes = by_dim[static_cast<size_t>(n)];
  std::vector<PolyColumn> plain, signed_cols;
  for (size_t g = 0; g < pres.generator_elements.size(); ++g) {
    const int deg = pres.module.generator_degrees()[g];
    const auto& basis = sr.basis(deg / 2);
    const Matrix& elem = pres.generator_elements[g];
    PolyColumn col, scol;
    for (const auto& sigma : maxes) {
      const auto u = dual_forms(fan, sigma);
      Poly value(n);
      for (size_t b = 0; b < basis.size(); ++b) {
        if (elem(b, 0) == 0) continue;
        bool inside = true;
        Poly term = Poly::constant(n, elem(b, 0));
        for (size_t r = 0; r < basis[b].size() && inside; ++r) {
          if (basis[b][r] == 0) continue;
          auto it = std::find(sigma.begin(), sigma.end(), static_cast<int>(r));
          if (it == sigma.end()) {
            inside = false;
            break;
          }
          for (int a = 0; a < basis[b][r]; ++a) term = term * u[static_cast<size_t>(it - sigma.begin())];
        }
        if (inside) value = value + term;
      }
      const int orient = sgn(determinant(ray_matrix(fan, sigma)));
      col.push_back(value);
      scol.push_back(orient < 0 ? -value : value);
    }
    plain.push_back(std::move(col));
    signed_cols.push_back(std::move(scol));
  }
  out.first_index = 0;
  out.first = GradedMap(out.htx, out.relative[0], std::move(signed_cols), 0);
  out.restriction = GradedMap(out.htx, out.relative[0], std::move(plain), 0);

  // Unsigned difference across every wall: e_sigma1 -> +g, e_sigma2 -> -g.
  if (n >= 1) {
    const auto& walls = by_dim[static_cast<size_t>(n - 1)];
    std::vector<PolyColumn> cols(maxes.size(), PolyColumn(walls.size(), Poly(n)));
    for (size_t w = 0; w < walls.size(); ++w) {
      int side = 0;
      for (size_t m = 0; m < maxes.size(); ++m) {
        if (!is_subset(walls[w], maxes[m])) continue;
        cols[m][w] = Poly::constant(n, side++ == 0 ? 1 : -1);
      }
    }
    out.one_skeleton_delta = GradedMap(out.relative[0], out.relative[1], std::move(cols), 1);
  } else {
    out.one_skeleton_delta = zero_map(out.relative[0], share(GradedModule::zero(ctx)), 1);
  }
  return out;
}

}  // namespace

namespace {

SpaceCohomology gkm_cohomology(const GkmGraph& g, const CoefficientRing& ring, int max_degree) {
  const int n = g.n;
  const PolynomialRingContext ctx{n, ring};
  SpaceCohomology out;
  out.n = n;
  out.ring = ring;

  auto rel0 = share(GradedModule::free(ctx, std::vector<int>(g.vertices.size(), 0)));
  std::vector<GradedModule> edge_terms;
  std::vector<size_t> edge_gen;  // index of the degree-1 generator of each edge
  size_t offset = 0;
  for (const auto& e : g.edges) {
    long content = 0;
    for (long x : e.label) content = std::gcd(content, x);
    edge_gen.push_back(offset);
    if (ring.modular() && content % ring.characteristic() == 0) {
      // The isotropy has p-torsion: its cohomology is free on classes of degree 0 and 1.
      edge_terms.push_back(GradedModule::free(ctx, {1, 2}));
      offset += 2;
    } else {
      edge_terms.push_back(GradedModule(ctx, {1}, {{Poly::linear_form(e.label)}}));
      offset += 1;
    }
  }
  auto rel1 = share(edge_terms.empty() ? GradedModule::zero(ctx) : direct_sum(edge_terms));

  std::vector<PolyColumn> dcols(g.vertices.size(), PolyColumn(rel1->num_generators(), Poly(n)));
  for (size_t k = 0; k < g.edges.size(); ++k) {
    dcols[g.edges[k].v][edge_gen[k]] = dcols[g.edges[k].v][edge_gen[k]] + Poly::constant(n, 1);
    dcols[g.edges[k].w][edge_gen[k]] = dcols[g.edges[k].w][edge_gen[k]] - Poly::constant(n, 1);
  }
  GradedMap delta(rel0, rel1, std::move(dcols), 1);

  KernelSource ks(*rel0, delta, *rel1);
  auto ker = present_degreewise(ks, ctx, 0, max_degree, true);
  if (!ker.module.relations().empty())
    throw Error(ErrorKind::UnsupportedModelRing, "the kernel on fixed points is not free over this ring");
  GradedModule coker = cokernel(delta);
  out.htx = share(direct_sum({ker.module, coker}));

  std::vector<PolyColumn> fcols;
  for (size_t k = 0; k < ker.generator_elements.size(); ++k) {
    const int deg = ker.module.generator_degrees()[k];
    fcols.push_back(column_from_slice(ker.generator_elements[k], 0, rel0->generator_degrees(), n, deg));
  }
  for (size_t k = 0; k < coker.num_generators(); ++k) fcols.emplace_back(rel0->num_generators(), Poly(n));

  out.relative.push_back(rel0);
  out.relative.push_back(rel1);
  for (int i = 2; i <= n; ++i) out.relative.push_back(share(GradedModule::zero(ctx)));
  out.differentials.push_back(delta);
  for (int i = 1; i < n; ++i) out.differentials.push_back(zero_map(out.relative[i], out.relative[i + 1], 1));
  out.first_index = 0;
  out.first = GradedMap(out.htx, rel0, std::move(fcols), 0);
  out.restriction = out.first;
  out.one_skeleton_delta = delta;
  return out;
}

SpaceCohomology orbit_cohomology(const SingleOrbit& x, const CoefficientRing& ring) {
  const int n = x.isotropy.n();
  const PolynomialRingContext ctx{n, ring};
  const int o = n - decompose_subgroup(x.isotropy).torus_rank;
  SpaceCohomology out;
  out.n = n;
  out.ring = ring;
  out.htx = share(present_classifying_cohomology(x.isotropy, ring));
  for (int i = 0; i <= n; ++i) out.relative.push_back(i == o ? out.htx : share(GradedModule::zero(ctx)));
  for (int i = 0; i < n; ++i) out.differentials.push_back(zero_map(out.relative[i], out.relative[i + 1], 1));
  out.first_index = o;
  out.first = GradedMap::identity(out.htx);
  if (o == 0) {
    out.restriction = out.first;
    auto next = n >= 1 ? out.relative[1] : share(GradedModule::zero(ctx));
    out.one_skeleton_delta = zero_map(out.relative[0], next, 1);
  }
  return out;
}

SpaceCohomology union_cohomology(const DisjointUnion& x, const CoefficientRing& ring, int max_degree, int jobs) {
  const int n = x.n;
  const PolynomialRingContext ctx{n, ring};
  std::vector<SpaceCohomology> parts;
  for (const auto& p : x.parts) parts.push_back(space_cohomology(*p, ring, max_degree, jobs));

  SpaceCohomology out;
  out.n = n;
  out.ring = ring;
  out.first_index = n;
  for (const auto& p : parts) out.first_index = std::min(out.first_index, p.first_index);

  std::vector<GradedModule> hs;
  for (const auto& p : parts) hs.push_back(*p.htx);
  out.htx = share(direct_sum(hs));
  for (int i = 0; i <= n; ++i) {
    std::vector<GradedModule> rs;
    for (const auto& p : parts) rs.push_back(*p.relative[i]);
    out.relative.push_back(share(direct_sum(rs)));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<GradedMap> ds;
    for (const auto& p : parts) ds.push_back(p.differentials[i]);
    out.differentials.push_back(direct_sum(ds, out.relative[i], out.relative[i + 1]));
  }
  const auto fi = static_cast<size_t>(out.first_index);
  std::vector<GradedMap> firsts, restrictions, deltas;
  for (const auto& p : parts) {
    firsts.push_back(p.first_index == out.first_index ? p.first : zero_map(p.htx, p.relative[fi], 0));
  }
  out.first = direct_sum(firsts, out.htx, out.relative[fi]);
  if (out.first_index == 0) {
    auto next = n >= 1 ? out.relative[1] : share(GradedModule::zero(ctx));
    for (const auto& p : parts) {
      auto pnext = n >= 1 ? p.relative[1] : share(GradedModule::zero(ctx));
      restrictions.push_back(p.restriction ? *p.restriction : zero_map(p.htx, p.relative[0], 0));
      deltas.push_back(p.one_skeleton_delta ? *p.one_skeleton_delta : zero_map(p.relative[0], pnext, 1));
    }
    out.restriction = direct_sum(restrictions, out.htx, out.relative[0]);
    out.one_skeleton_delta = direct_sum(deltas, out.relative[0], next);
  }
  return out;
}

SpaceCohomology circle_cohomology(const FreeCircleProduct& x, const CoefficientRing& ring, int max_degree, int jobs) {
  const SpaceCohomology base = space_cohomology(*x.base, ring, max_degree, jobs);
  const int n = base.n + 1;
  const PolynomialRingContext ctx{n, ring};
  SpaceCohomology out;
  out.n = n;
  out.ring = ring;
  out.htx = share(inflate(*base.htx));
  out.relative.push_back(share(GradedModule::zero(ctx)));
  for (const auto& r : base.relative) out.relative.push_back(share(inflate(*r)));
  out.differentials.push_back(zero_map(out.relative[0], out.relative[1], 1));
  for (size_t i = 0; i < base.differentials.size(); ++i)
    out.differentials.push_back(inflate(base.differentials[i], out.relative[i + 1], out.relative[i + 2]));
  out.first_index = base.first_index + 1;
  out.first = inflate(base.first, out.htx, out.relative[static_cast<size_t>(out.first_index)]);
  return out;
}

}  // namespace

SpaceCohomology space_cohomology(const SpaceModel& x, const CoefficientRing& ring, int max_degree, int jobs) {
  return std::visit(
      [&](const auto& v) -> SpaceCohomology {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Fan>) {
          return fan_cohomology(v, ring, max_degree);
        } else if constexpr (std::is_same_v<T, GkmGraph>) {
          return gkm_cohomology(v, ring, max_degree);
        } else if constexpr (std::is_same_v<T, SingleOrbit>) {
          return orbit_cohomology(v, ring);
        } else if constexpr (std::is_same_v<T, DisjointUnion>) {
          return union_cohomology(v, ring, max_degree, jobs);
        } else {
          return circle_cohomology(v, ring, max_degree, jobs);
        }
      },
      x.variant());
}

GradedModule equivariant_cohomology(const SpaceModel& x, const CoefficientRing& ring, int max_degree, int jobs) {
  return *space_cohomology(x, ring, max_degree, jobs).htx;
}

GradedModule relative_term(const SpaceModel& x, int i, const CoefficientRing& ring, int max_degree, int jobs) {
  if (i < 0 || i > x.n()) throw Error(ErrorKind::IndexOutOfRange, "relative term index " + std::to_string(i));
  return *space_cohomology(x, ring, max_degree, jobs).relative[static_cast<size_t>(i)];
}

// --- catalog ------------------------------------------------------------------

namespace {

long parse_long_arg(std::string_view text, std::string_view what) {
  try {
    size_t used = 0;
    const std::string s(text);
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
}

}  // namespace

SpaceModel catalog_model(std::string_view name) {
  const std::string full(name);
  if (name == "P1") return SpaceModel(Fan{1, {{1}, {-1}}, {{0}, {1}}}, full);
  if (name == "P2") return SpaceModel(Fan{2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}}, full);
  if (name == "P1xP1")
    return SpaceModel(Fan{2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}}, full);
  const auto colon = name.find(':');
  if (colon != std::string_view::npos) {
    const auto head = name.substr(0, colon);
    const auto arg = name.substr(colon + 1);
    if (head == "Hirzebruch") {
      const long a = parse_long_arg(arg, "Hirzebruch parameter");
      return SpaceModel(Fan{2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}}, full);
    }
    if (head == "SpinningSphere") {
      const long m = parse_long_arg(arg, "rotation weight");
      if (m == 0) throw Error(ErrorKind::InvalidModel, "rotation weight must be nonzero");
      return SpaceModel(GkmGraph{1, {"N", "S"}, {{0, 1, {m}}}}, full);
    }
    if (head == "FreeCircleTimes") {
      auto base = std::make_shared<const SpaceModel>(catalog_model(arg));
      return SpaceModel(FreeCircleProduct{base}, full);
    }
  }
  throw Error(ErrorKind::InvalidModel, "unknown catalog model '" + full + "'");
}

std::vector<std::string> catalog_names() {
  return {"P1", "P2", "P1xP1", "Hirzebruch:<a>", "SpinningSphere:<m>", "FreeCircleTimes:<model>"};
}

}  // namespace exseq
