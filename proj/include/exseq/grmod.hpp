#pragma once

// Finitely presented graded modules over A = R[t1..tn] (deg tj = 2), their
// degreewise slices, maps, complexes and degreewise homology.
//
// A module is coker(F1 -> F0) with F0 free on generators of given degrees.
// The degree-j slice of F0 has the R-basis (generator g, monomial m) with
// deg g + 2|m| = j, ordered by generator and then by monomials(n, |m|).

#include <climits>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "exseq/matrix.hpp"
#include "exseq/polynomial.hpp"
#include "exseq/ring.hpp"

namespace exseq {

struct PolynomialRingContext {
  int n = 0;
  CoefficientRing ring = CoefficientRing::integers();
};

// One polynomial per target generator.
using PolyColumn = std::vector<Poly>;

inline constexpr int kUnbounded = INT_MAX;

class GradedModule {
 public:
  GradedModule() = default;
  // Relation columns must be homogeneous; zero columns are dropped.
  // valid_through < kUnbounded marks a presentation that is only known to be
  // correct in degrees <= valid_through.
  GradedModule(PolynomialRingContext ctx, std::vector<int> generator_degrees, std::vector<PolyColumn> relations = {},
               int valid_through = kUnbounded);

  static GradedModule free(PolynomialRingContext ctx, std::vector<int> generator_degrees);
  static GradedModule zero(PolynomialRingContext ctx);

  const PolynomialRingContext& ctx() const { return ctx_; }
  int n() const { return ctx_.n; }
  const CoefficientRing& ring() const { return ctx_.ring; }
  const std::vector<int>& generator_degrees() const { return generator_degrees_; }
  size_t num_generators() const { return generator_degrees_.size(); }
  const std::vector<PolyColumn>& relations() const { return relations_; }
  const std::vector<int>& relation_degrees() const { return relation_degrees_; }
  int valid_through() const { return valid_through_; }
  bool has_no_generators() const { return generator_degrees_.empty(); }
  int min_generator_degree() const;
  int max_generator_degree() const;

  GradedModule shifted(int s) const;
  GradedModule with_ring(const CoefficientRing& ring) const;
  GradedModule with_extra_relations(const std::vector<PolyColumn>& extra) const;

 private:
  PolynomialRingContext ctx_;
  std::vector<int> generator_degrees_;
  std::vector<PolyColumn> relations_;
  std::vector<int> relation_degrees_;
  int valid_through_ = kUnbounded;
};

// A homogeneous map of the given degree, described on generators: columns[h] is
// the image of source generator h written in the target's generators.
struct GradedMap {
  std::shared_ptr<const GradedModule> source;
  std::shared_ptr<const GradedModule> target;
  int degree_shift = 0;
  std::vector<PolyColumn> columns;

  GradedMap() = default;
  GradedMap(std::shared_ptr<const GradedModule> src, std::shared_ptr<const GradedModule> tgt,
            std::vector<PolyColumn> cols, int shift = 0);

  static GradedMap zero(std::shared_ptr<const GradedModule> src, std::shared_ptr<const GradedModule> tgt);
  static GradedMap identity(std::shared_ptr<const GradedModule> m);
};

struct GradedComplex {
  std::vector<std::shared_ptr<const GradedModule>> terms;
  std::vector<GradedMap> maps;  // maps[i] : terms[i] -> terms[i+1]
  std::vector<std::string> labels;

  void validate() const;
};

// --- slices ---------------------------------------------------------------

size_t free_slice_dim(const std::vector<int>& degrees, int n, int j);
// Offset of generator g's block inside the degree-j free slice.
std::vector<size_t> free_slice_offsets(const std::vector<int>& degrees, int n, int j);

// Image in the degree-j free slice over target_degrees of every basis element
// (column c, monomial m) with column_degrees[c] + 2|m| = j, one matrix column each.
Matrix free_slice_image(const std::vector<PolyColumn>& columns, const std::vector<int>& column_degrees,
                        const std::vector<int>& target_degrees, int n, int j, const CoefficientRing& ring);

// Multiplication by t_{k+1} from the degree-j free slice to degree j+2.
Matrix multiplication_block(const std::vector<int>& degrees, int n, int k, int j, const CoefficientRing& ring);

PolyColumn column_from_slice(const Matrix& vec, size_t col, const std::vector<int>& degrees, int n, int j);

Matrix relation_block(const GradedModule& m, int j);
// Degree-j block of the free-level matrix: source free slice j -> target free slice j + shift.
Matrix map_block(const GradedMap& f, int j);

FinitelyGeneratedRModule graded_piece(const GradedModule& m, int j);
// Slices for degrees 0..max_degree.
std::vector<FinitelyGeneratedRModule> hilbert_function(const GradedModule& m, int max_degree, int jobs = 1);

// Default degree bound 2(n + max generator degree) + 8.
int default_degree_bound(const GradedModule& m);

// --- constructions --------------------------------------------------------

GradedModule direct_sum(const std::vector<GradedModule>& parts);
GradedMap direct_sum(const std::vector<GradedMap>& maps, std::shared_ptr<const GradedModule> source,
                     std::shared_ptr<const GradedModule> target);
GradedModule cokernel(const GradedMap& f);
GradedMap compose(const GradedMap& second, const GradedMap& first);
// Views an A'-module, A' = R[t2..tn], as an A-module on which t1 acts by zero.
GradedModule inflate(const GradedModule& m);
GradedMap inflate(const GradedMap& f, std::shared_ptr<const GradedModule> source,
                  std::shared_ptr<const GradedModule> target);

// --- homology ---------------------------------------------------------------

struct HomologySlice {
  int degree = 0;
  FinitelyGeneratedRModule homology;
  // Witness data: generators of the kernel and of the image inside the
  // degree-j free slice of the term, the coordinates of the image in a kernel
  // basis and that matrix's SNF diagonal.
  Matrix kernel_generators;
  Matrix image_generators;
  Matrix presentation;
  std::vector<mpz_class> diagonal;
};

struct HomologyResult {
  size_t position = 0;
  int min_degree = 0;
  int max_degree = 0;
  std::vector<HomologySlice> slices;  // every degree in [min_degree, max_degree]

  bool exact() const;
  const HomologySlice* first_nonzero() const;
};

// Homology of terms[position] in degrees <= max_degree. Throws NotAComplex when
// the composite through this position is nonzero, DegreeBoundTooSmall when a
// truncated presentation does not reach max_degree.
HomologyResult homology_at(const GradedComplex& c, size_t position, int max_degree, int jobs = 1);

// --- degreewise presentations -------------------------------------------

// A graded module known slice by slice inside an ambient graded R-module whose
// degree-j slice is R^ambient_dim(j) modulo the columns of ambient_relations(j).
class SliceSource {
 public:
  virtual ~SliceSource() = default;
  virtual size_t ambient_dim(int j) const = 0;
  virtual Matrix elements(int j) const = 0;
  virtual Matrix ambient_relations(int j) const = 0;
  // t_{k+1} : ambient_j -> ambient_{j+2}
  virtual Matrix act(int k, int j) const = 0;
};

// The submodule of a finitely presented module spanned slice by slice by `elements`.
class SubmoduleSource : public SliceSource {
 public:
  SubmoduleSource(GradedModule ambient, std::function<Matrix(int)> elements);
  size_t ambient_dim(int j) const override;
  Matrix elements(int j) const override { return elements_(j); }
  Matrix ambient_relations(int j) const override { return relation_block(ambient_, j); }
  Matrix act(int k, int j) const override;

 private:
  GradedModule ambient_;
  std::function<Matrix(int)> elements_;
};

// The kernel of phi : F -> target (F free) as a submodule of F, slice by slice.
class KernelSource : public SliceSource {
 public:
  KernelSource(GradedModule source, GradedMap phi, GradedModule target);
  size_t ambient_dim(int j) const override;
  Matrix elements(int j) const override;
  Matrix ambient_relations(int j) const override { return Matrix(ambient_dim(j), 0); }
  Matrix act(int k, int j) const override;

 private:
  GradedModule source_;
  GradedMap phi_;
  GradedModule target_;
};

struct DegreewisePresentation {
  GradedModule module;
  // Ambient coordinates of each generator (one column each, in its own degree).
  std::vector<Matrix> generator_elements;
  // Order of each generator in M_j / (A_+ M)_j (0 = free); nonzero only over Z-like rings.
  std::vector<mpz_class> generator_orders;
};

// Minimal generators (and, optionally, minimal relations) of the module
// described by `source`, for degrees in [min_degree, max_degree].
DegreewisePresentation present_degreewise(const SliceSource& source, const PolynomialRingContext& ctx,
                                          int min_degree, int max_degree, bool with_relations = true);

}  // namespace exseq
