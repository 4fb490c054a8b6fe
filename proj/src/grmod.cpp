#include "exseq/grmod.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "exseq/error.hpp"
#include "exseq/parallel.hpp"

namespace exseq {

namespace {

int poly_degree_for(int target_degree, int gen_degree) {
  int diff = target_degree - gen_degree;
  if (diff < 0 || diff % 2 != 0) return -1;
  return diff / 2;
}

void check_column_homogeneous(const PolyColumn& col, const std::vector<int>& gen_degrees, int column_degree, int n,
                              const char* what) {
  if (col.size() != gen_degrees.size()) throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": column size");
  for (size_t g = 0; g < col.size(); ++g) {
    const Poly& p = col[g];
    if (p.is_zero()) continue;
    if (p.nvars() != n) throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": variable count");
    if (!p.is_homogeneous() || 2 * p.degree() + gen_degrees[g] != column_degree) {
      throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": inhomogeneous entry " + p.to_string());
    }
  }
}

// Degree of a nonzero column, or nullopt for a zero column.
std::optional<int> column_degree(const PolyColumn& col, const std::vector<int>& gen_degrees) {
  for (size_t g = 0; g < col.size(); ++g) {
    if (!col[g].is_zero()) return gen_degrees[g] + 2 * col[g].degree();
  }
  return std::nullopt;
}

FinitelyGeneratedRModule cokernel_module(const Matrix& rel, size_t dim, const CoefficientRing& ring) {
  FinitelyGeneratedRModule out;
  if (dim == 0) return out;
  if (rel.cols() == 0) {
    out.free_rank = static_cast<int>(dim);
    return out;
  }
  if (ring.is_field()) {
    out.free_rank = static_cast<int>(dim - rank(rel, ring));
    return out;
  }
  SnfResult s = smith_normal_form(rel, ring, {.left = false, .right = false});
  out.free_rank = static_cast<int>(dim - s.rank);
  for (const auto& d : s.invariant_factors) {
    mpz_class part = ring.non_unit_part(d);
    if (part != 1) out.torsion.push_back(part);
  }
  return out;
}

}  // namespace

// --- GradedModule ---------------------------------------------------------

GradedModule::GradedModule(PolynomialRingContext ctx, std::vector<int> generator_degrees,
                           std::vector<PolyColumn> relations, int valid_through)
    : ctx_(std::move(ctx)), generator_degrees_(std::move(generator_degrees)), valid_through_(valid_through) {
  for (auto& col : relations) {
    auto deg = column_degree(col, generator_degrees_);
    if (!deg) continue;
    for (auto& p : col) {
      if (p.is_zero()) p = Poly(ctx_.n);
    }
    check_column_homogeneous(col, generator_degrees_, *deg, ctx_.n, "relation");
    relations_.push_back(std::move(col));
    relation_degrees_.push_back(*deg);
  }
}

GradedModule GradedModule::free(PolynomialRingContext ctx, std::vector<int> generator_degrees) {
  return GradedModule(std::move(ctx), std::move(generator_degrees));
}

GradedModule GradedModule::zero(PolynomialRingContext ctx) { return GradedModule(std::move(ctx), {}); }

int GradedModule::min_generator_degree() const {
  return generator_degrees_.empty() ? 0 : *std::min_element(generator_degrees_.begin(), generator_degrees_.end());
}

int GradedModule::max_generator_degree() const {
  return generator_degrees_.empty() ? 0 : *std::max_element(generator_degrees_.begin(), generator_degrees_.end());
}

GradedModule GradedModule::shifted(int s) const {
  GradedModule out = *this;
  for (auto& d : out.generator_degrees_) d += s;
  for (auto& d : out.relation_degrees_) d += s;
  if (out.valid_through_ != kUnbounded) out.valid_through_ += s;
  return out;
}

GradedModule GradedModule::with_ring(const CoefficientRing& ring) const {
  GradedModule out = *this;
  out.ctx_.ring = ring;
  return out;
}

GradedModule GradedModule::with_extra_relations(const std::vector<PolyColumn>& extra) const {
  std::vector<PolyColumn> all = relations_;
  all.insert(all.end(), extra.begin(), extra.end());
  return GradedModule(ctx_, generator_degrees_, std::move(all), valid_through_);
}

// --- GradedMap ------------------------------------------------------------

GradedMap::GradedMap(std::shared_ptr<const GradedModule> src, std::shared_ptr<const GradedModule> tgt,
                     std::vector<PolyColumn> cols, int shift)
    : source(std::move(src)), target(std::move(tgt)), degree_shift(shift), columns(std::move(cols)) {
  if (columns.size() != source->num_generators()) {
    throw Error(ErrorKind::DimensionMismatch, "map has wrong number of columns");
  }
  const int n = target->n();
  for (size_t h = 0; h < columns.size(); ++h) {
    auto& col = columns[h];
    if (col.size() != target->num_generators()) throw Error(ErrorKind::DimensionMismatch, "map column size");
    for (auto& p : col) {
      if (p.is_zero()) p = Poly(n);
    }
    check_column_homogeneous(col, target->generator_degrees(), source->generator_degrees()[h] + shift, n, "map");
  }
}

GradedMap GradedMap::zero(std::shared_ptr<const GradedModule> src, std::shared_ptr<const GradedModule> tgt) {
  const int n = tgt->n();
  std::vector<PolyColumn> cols(src->num_generators(), PolyColumn(tgt->num_generators(), Poly(n)));
  return GradedMap(std::move(src), std::move(tgt), std::move(cols));
}

GradedMap GradedMap::identity(std::shared_ptr<const GradedModule> m) {
  const int n = m->n();
  std::vector<PolyColumn> cols(m->num_generators(), PolyColumn(m->num_generators(), Poly(n)));
  for (size_t g = 0; g < cols.size(); ++g) cols[g][g] = Poly::constant(n, 1);
  return GradedMap(m, m, std::move(cols));
}

void GradedComplex::validate() const {
  if (terms.empty() || maps.size() + 1 != terms.size()) {
    throw Error(ErrorKind::DimensionMismatch, "complex needs one map between consecutive terms");
  }
  for (size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].source->generator_degrees() != terms[i]->generator_degrees() ||
        maps[i].target->generator_degrees() != terms[i + 1]->generator_degrees()) {
      throw Error(ErrorKind::DimensionMismatch, "map " + std::to_string(i) + " does not match the terms");
    }
  }
}

// --- slices ---------------------------------------------------------------

std::vector<size_t> free_slice_offsets(const std::vector<int>& degrees, int n, int j) {
  std::vector<size_t> offsets(degrees.size() + 1, 0);
  for (size_t g = 0; g < degrees.size(); ++g) {
    int d = poly_degree_for(j, degrees[g]);
    offsets[g + 1] = offsets[g] + (d < 0 ? 0 : monomials(n, d).size());
  }
  return offsets;
}

size_t free_slice_dim(const std::vector<int>& degrees, int n, int j) {
  return free_slice_offsets(degrees, n, j).back();
}

Matrix free_slice_image(const std::vector<PolyColumn>& columns, const std::vector<int>& column_degrees,
                        const std::vector<int>& target_degrees, int n, int j, const CoefficientRing& ring) {
  const auto offsets = free_slice_offsets(target_degrees, n, j);
  size_t ncols = 0;
  for (int cd : column_degrees) {
    int d = poly_degree_for(j, cd);
    if (d >= 0) ncols += monomials(n, d).size();
  }
  Matrix out(offsets.back(), ncols);
  size_t col = 0;
  for (size_t c = 0; c < columns.size(); ++c) {
    int d = poly_degree_for(j, column_degrees[c]);
    if (d < 0) continue;
    for (const Exponent& mu : monomials(n, d)) {
      for (size_t g = 0; g < columns[c].size(); ++g) {
        for (const auto& [nu, coef] : columns[c][g].terms()) {
          Exponent e = mu;
          for (int i = 0; i < n; ++i) e[i] += nu[i];
          out(offsets[g] + monomial_index(e), col) += coef;
        }
      }
      ++col;
    }
  }
  return reduce(out, ring);
}

Matrix multiplication_block(const std::vector<int>& degrees, int n, int k, int j, const CoefficientRing& ring) {
  const auto src = free_slice_offsets(degrees, n, j);
  const auto dst = free_slice_offsets(degrees, n, j + 2);
  Matrix out(dst.back(), src.back());
  for (size_t g = 0; g < degrees.size(); ++g) {
    int d = poly_degree_for(j, degrees[g]);
    if (d < 0) continue;
    const auto& mons = monomials(n, d);
    for (size_t i = 0; i < mons.size(); ++i) {
      Exponent e = mons[i];
      e[k] += 1;
      out(dst[g] + monomial_index(e), src[g] + i) = 1;
    }
  }
  return reduce(out, ring);
}

PolyColumn column_from_slice(const Matrix& vec, size_t col, const std::vector<int>& degrees, int n, int j) {
  const auto offsets = free_slice_offsets(degrees, n, j);
  PolyColumn out(degrees.size(), Poly(n));
  for (size_t g = 0; g < degrees.size(); ++g) {
    int d = poly_degree_for(j, degrees[g]);
    if (d < 0) continue;
    const auto& mons = monomials(n, d);
    for (size_t i = 0; i < mons.size(); ++i) {
      const mpz_class& c = vec(offsets[g] + i, col);
      if (sgn(c) != 0) out[g].add_term(mons[i], c);
    }
  }
  return out;
}

Matrix relation_block(const GradedModule& m, int j) {
  if (j > m.valid_through()) {
    throw Error(ErrorKind::DegreeBoundTooSmall, "presentation only valid through degree " +
                                                    std::to_string(m.valid_through()) + ", need " + std::to_string(j));
  }
  return free_slice_image(m.relations(), m.relation_degrees(), m.generator_degrees(), m.n(), j, m.ring());
}

Matrix map_block(const GradedMap& f, int j) {
  std::vector<int> col_degrees = f.source->generator_degrees();
  for (auto& d : col_degrees) d += f.degree_shift;
  return free_slice_image(f.columns, col_degrees, f.target->generator_degrees(), f.target->n(), j + f.degree_shift,
                          f.target->ring());
}

FinitelyGeneratedRModule graded_piece(const GradedModule& m, int j) {
  const size_t dim = free_slice_dim(m.generator_degrees(), m.n(), j);
  if (dim == 0) return {};
  return cokernel_module(relation_block(m, j), dim, m.ring());
}

std::vector<FinitelyGeneratedRModule> hilbert_function(const GradedModule& m, int max_degree, int jobs) {
  if (max_degree < 0) return {};
  return parallel_map(static_cast<size_t>(max_degree + 1), jobs,
                      [&](size_t j) { return graded_piece(m, static_cast<int>(j)); });
}

int default_degree_bound(const GradedModule& m) { return 2 * (m.n() + m.max_generator_degree()) + 8; }

// --- constructions --------------------------------------------------------

GradedModule direct_sum(const std::vector<GradedModule>& parts) {
  if (parts.empty()) throw Error(ErrorKind::DimensionMismatch, "direct sum of nothing");
  const auto& ctx = parts.front().ctx();
  const int n = ctx.n;
  std::vector<int> degrees;
  int valid = kUnbounded;
  for (const auto& p : parts) {
    if (p.n() != n) throw Error(ErrorKind::DimensionMismatch, "direct sum over different rings");
    degrees.insert(degrees.end(), p.generator_degrees().begin(), p.generator_degrees().end());
    valid = std::min(valid, p.valid_through());
  }
  std::vector<PolyColumn> relations;
  size_t offset = 0;
  for (const auto& p : parts) {
    for (const auto& col : p.relations()) {
      PolyColumn big(degrees.size(), Poly(n));
      for (size_t g = 0; g < col.size(); ++g) big[offset + g] = col[g];
      relations.push_back(std::move(big));
    }
    offset += p.num_generators();
  }
  return GradedModule(ctx, std::move(degrees), std::move(relations), valid);
}

GradedMap direct_sum(const std::vector<GradedMap>& maps, std::shared_ptr<const GradedModule> source,
                     std::shared_ptr<const GradedModule> target) {
  const int n = target->n();
  std::vector<PolyColumn> cols;
  size_t row_offset = 0;
  for (const auto& f : maps) {
    for (const auto& col : f.columns) {
      PolyColumn big(target->num_generators(), Poly(n));
      for (size_t g = 0; g < col.size(); ++g) big[row_offset + g] = col[g];
      cols.push_back(std::move(big));
    }
    row_offset += f.target->num_generators();
  }
  const int shift = maps.empty() ? 0 : maps.front().degree_shift;
  return GradedMap(std::move(source), std::move(target), std::move(cols), shift);
}

GradedModule cokernel(const GradedMap& f) { return f.target->with_extra_relations(f.columns); }

GradedMap compose(const GradedMap& second, const GradedMap& first) {
  const int n = second.target->n();
  std::vector<PolyColumn> cols;
  for (const auto& col : first.columns) {
    PolyColumn out(second.target->num_generators(), Poly(n));
    for (size_t g = 0; g < col.size(); ++g) {
      if (col[g].is_zero()) continue;
      for (size_t r = 0; r < out.size(); ++r) out[r] = out[r] + col[g] * second.columns[g][r];
    }
    cols.push_back(std::move(out));
  }
  return GradedMap(first.source, second.target, std::move(cols), first.degree_shift + second.degree_shift);
}

namespace {

PolyColumn inflate_column(const PolyColumn& col) {
  PolyColumn out;
  out.reserve(col.size());
  for (const auto& p : col) out.push_back(p.with_variable_inserted(0));
  return out;
}

}  // namespace

GradedModule inflate(const GradedModule& m) {
  PolynomialRingContext ctx{m.n() + 1, m.ring()};
  std::vector<PolyColumn> relations;
  for (const auto& col : m.relations()) relations.push_back(inflate_column(col));
  for (size_t g = 0; g < m.num_generators(); ++g) {
    PolyColumn col(m.num_generators(), Poly(ctx.n));
    col[g] = Poly::variable(ctx.n, 0);
    relations.push_back(std::move(col));
  }
  return GradedModule(ctx, m.generator_degrees(), std::move(relations), m.valid_through());
}

GradedMap inflate(const GradedMap& f, std::shared_ptr<const GradedModule> source,
                  std::shared_ptr<const GradedModule> target) {
  std::vector<PolyColumn> cols;
  for (const auto& col : f.columns) cols.push_back(inflate_column(col));
  return GradedMap(std::move(source), std::move(target), std::move(cols), f.degree_shift);
}

// --- homology ---------------------------------------------------------------

bool HomologyResult::exact() const { return first_nonzero() == nullptr; }

const HomologySlice* HomologyResult::first_nonzero() const {
  for (const auto& s : slices) {
    if (!s.homology.is_zero()) return &s;
  }
  return nullptr;
}

HomologyResult homology_at(const GradedComplex& c, size_t position, int max_degree, int jobs) {
  c.validate();
  if (position >= c.terms.size()) throw Error(ErrorKind::IndexOutOfRange, "no such position");
  const GradedModule& m = *c.terms[position];
  const GradedMap* in = position > 0 ? &c.maps[position - 1] : nullptr;
  const GradedMap* out = position < c.maps.size() ? &c.maps[position] : nullptr;
  const CoefficientRing& ring = m.ring();
  const int n = m.n();

  HomologyResult res;
  res.position = position;
  res.min_degree = m.min_generator_degree();
  res.max_degree = max_degree;
  if (m.has_no_generators() || max_degree < res.min_degree) {
    res.min_degree = res.max_degree = max_degree;
    res.slices.clear();
    return res;
  }
  if (m.valid_through() < max_degree ||
      (out && out->target->valid_through() < max_degree + out->degree_shift)) {
    throw Error(ErrorKind::DegreeBoundTooSmall, "a term is presented only through a lower degree");
  }

  const size_t count = static_cast<size_t>(max_degree - res.min_degree + 1);
  res.slices = parallel_map(count, jobs, [&](size_t idx) {
    const int j = res.min_degree + static_cast<int>(idx);
    HomologySlice slice;
    slice.degree = j;
    const size_t dim = free_slice_dim(m.generator_degrees(), n, j);
    if (dim == 0) return slice;

    Matrix kernel;
    if (out) {
      Matrix f = map_block(*out, j);
      Matrix rn = relation_block(*out->target, j + out->degree_shift);
      Matrix stacked = hstack(f, rn);
      if (stacked.rows() == 0) {
        kernel = Matrix::identity(dim);
      } else {
        Matrix kb = kernel_basis(stacked, ring);
        kernel = Matrix(dim, kb.cols());
        for (size_t i = 0; i < dim; ++i)
          for (size_t k = 0; k < kb.cols(); ++k) kernel(i, k) = kb(i, k);
      }
    } else {
      kernel = Matrix::identity(dim);
    }
    Matrix image = relation_block(m, j);
    if (in) image = hstack(image, map_block(*in, j - in->degree_shift));
    if (image.cols() == 0) image = Matrix(dim, 0);

    try {
      Subquotient sq = subquotient(kernel, image, ring, false);
      slice.homology = sq.module;
      slice.presentation = std::move(sq.presentation);
      slice.diagonal = std::move(sq.diagonal);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotContained) throw;
      throw Error(ErrorKind::NotAComplex, "composite through position " + std::to_string(position) +
                                              " is nonzero in degree " + std::to_string(j));
    }
    slice.kernel_generators = std::move(kernel);
    slice.image_generators = std::move(image);
    return slice;
  });
  return res;
}

// --- degreewise presentations -------------------------------------------

SubmoduleSource::SubmoduleSource(GradedModule ambient, std::function<Matrix(int)> elements)
    : ambient_(std::move(ambient)), elements_(std::move(elements)) {}

size_t SubmoduleSource::ambient_dim(int j) const {
  return free_slice_dim(ambient_.generator_degrees(), ambient_.n(), j);
}

Matrix SubmoduleSource::act(int k, int j) const {
  return multiplication_block(ambient_.generator_degrees(), ambient_.n(), k, j, ambient_.ring());
}

KernelSource::KernelSource(GradedModule source, GradedMap phi, GradedModule target)
    : source_(std::move(source)), phi_(std::move(phi)), target_(std::move(target)) {}

size_t KernelSource::ambient_dim(int j) const {
  return free_slice_dim(source_.generator_degrees(), source_.n(), j);
}

Matrix KernelSource::act(int k, int j) const {
  return multiplication_block(source_.generator_degrees(), source_.n(), k, j, source_.ring());
}

Matrix KernelSource::elements(int j) const {
  const size_t dim = ambient_dim(j);
  if (dim == 0) return Matrix(0, 0);
  Matrix stacked = hstack(map_block(phi_, j), relation_block(target_, j + phi_.degree_shift));
  if (stacked.rows() == 0) return Matrix::identity(dim);
  Matrix kb = kernel_basis(stacked, source_.ring());
  Matrix out(dim, kb.cols());
  for (size_t r = 0; r < dim; ++r)
    for (size_t c = 0; c < kb.cols(); ++c) out(r, c) = kb(r, c);
  return out;
}

DegreewisePresentation present_degreewise(const SliceSource& source, const PolynomialRingContext& ctx,
                                          int min_degree, int max_degree, bool with_relations) {
  const int n = ctx.n;
  const CoefficientRing& ring = ctx.ring;
  DegreewisePresentation out;
  std::vector<int> degrees;
  std::vector<Matrix> gen_vectors;

  std::map<int, Matrix> elements;
  auto elements_at = [&](int j) -> const Matrix& {
    auto it = elements.find(j);
    if (it == elements.end()) it = elements.emplace(j, reduce(source.elements(j), ring)).first;
    return it->second;
  };

  for (int j = min_degree; j <= max_degree; ++j) {
    const size_t adim = source.ambient_dim(j);
    const Matrix& mj = elements_at(j);
    Matrix rel = source.ambient_relations(j);
    if (rel.rows() == 0) rel = Matrix(adim, 0);

    // (A_+ M)_j = sum_k t_k M_{j-2}
    Matrix sub(adim, 0);
    if (j - 2 >= min_degree) {
      const Matrix& prev = elements_at(j - 2);
      if (prev.cols() > 0) {
        for (int k = 0; k < n; ++k) sub = hstack(sub, reduce(source.act(k, j - 2) * prev, ring));
      }
    }
    sub = hstack(sub, rel);
    Matrix whole = hstack(mj.cols() ? mj : Matrix(adim, 0), rel);

    if (whole.cols() > 0 && adim > 0) {
      Subquotient sq = subquotient(whole, sub, ring, true);
      for (size_t c = 0; c < sq.generators.cols(); ++c) {
        degrees.push_back(j);
        gen_vectors.push_back(sq.generators.column(c));
        out.generator_orders.push_back(sq.orders[c]);
      }
    }
    elements.erase(j - 4);
  }

  out.generator_elements = gen_vectors;
  if (!with_relations) {
    out.module = GradedModule(ctx, degrees, {}, max_degree);
    return out;
  }

  // Relations: minimal generators of ker(F0 -> ambient / relations), degree by degree.
  std::vector<PolyColumn> relations;
  // phi2[j]: images in the ambient slice of the free basis (generator, monomial).
  std::map<int, Matrix> phi2;
  for (int j = min_degree; j <= max_degree; ++j) {
    const size_t adim = source.ambient_dim(j);
    std::vector<size_t> offsets = free_slice_offsets(degrees, n, j);
    Matrix phi_j(adim, offsets.back());
    std::vector<size_t> prev_offsets = free_slice_offsets(degrees, n, j - 2);
    std::vector<Matrix> moved;
    if (phi2.count(j - 2)) {
      for (int k = 0; k < n; ++k) moved.push_back(reduce(source.act(k, j - 2) * phi2.at(j - 2), ring));
    }
    for (size_t g = 0; g < degrees.size(); ++g) {
      if (j < degrees[g] || (j - degrees[g]) % 2 != 0) continue;
      int d = (j - degrees[g]) / 2;
      if (d == 0) {
        for (size_t r = 0; r < adim; ++r) phi_j(r, offsets[g]) = gen_vectors[g](r, 0);
        continue;
      }
      const auto& mons = monomials(n, d);
      for (size_t i = 0; i < mons.size(); ++i) {
        Exponent e = mons[i];
        int k = 0;
        while (e[k] == 0) ++k;
        e[k] -= 1;
        size_t src_col = prev_offsets[g] + monomial_index(e);
        for (size_t r = 0; r < adim; ++r) phi_j(r, offsets[g] + i) = moved[k](r, src_col);
      }
    }
    phi2[j] = phi_j;
    phi2.erase(j - 4);

    const size_t fdim = offsets.back();
    if (fdim == 0) continue;
    Matrix rel = source.ambient_relations(j);
    if (rel.rows() == 0) rel = Matrix(adim, 0);
    Matrix kernel;
    if (adim == 0) {
      kernel = Matrix::identity(fdim);
    } else {
      Matrix kb = kernel_basis(hstack(phi_j, rel), ring);
      kernel = Matrix(fdim, kb.cols());
      for (size_t r = 0; r < fdim; ++r)
        for (size_t c = 0; c < kb.cols(); ++c) kernel(r, c) = kb(r, c);
    }
    if (kernel.cols() == 0) continue;
    GradedModule current(ctx, degrees, relations, kUnbounded);
    Matrix known = relation_block(current, j);
    if (known.cols() == 0) known = Matrix(fdim, 0);
    Subquotient sq = subquotient(kernel, known, ring, true);
    for (size_t c = 0; c < sq.generators.cols(); ++c) {
      relations.push_back(column_from_slice(sq.generators, c, degrees, n, j));
    }
  }
  out.module = GradedModule(ctx, degrees, std::move(relations), max_degree);
  return out;
}

}  // namespace exseq
