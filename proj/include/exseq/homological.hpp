#pragma once

// Minimal free resolutions, depth, Krull dimension, the Cohen-Macaulay
// property and freeness of graded modules.
//
// Over fields everything is computed from degreewise linear algebra up to a
// degree bound. Over Z and Z[1/S] the dimension is assembled from the fibres
// over Q and over the relevant primes; depth and CM are only decided for
// recognised shapes (free modules and sums of A/(linear forms)).

#include <optional>
#include <string>
#include <vector>

#include "exseq/grmod.hpp"

namespace exseq {

// An integer that may also be +inf, -inf or unknown.
class ExtInt {
 public:
  enum class Kind { Finite, PosInf, NegInf, Unknown };

  ExtInt() : kind_(Kind::Unknown) {}
  ExtInt(int v) : kind_(Kind::Finite), value_(v) {}  // NOLINT(implicit)
  static ExtInt pos_inf() { return ExtInt(Kind::PosInf); }
  static ExtInt neg_inf() { return ExtInt(Kind::NegInf); }
  static ExtInt unknown() { return ExtInt(Kind::Unknown); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  bool known() const { return kind_ != Kind::Unknown; }
  int value() const { return value_; }
  // "inf", "-inf", "unknown" or the decimal value.
  std::string to_string() const;

  bool operator==(const ExtInt&) const = default;
  // Order on known values; unknown compares false with everything.
  bool less_equal(const ExtInt& other) const;

 private:
  explicit ExtInt(Kind k) : kind_(k) {}
  Kind kind_;
  int value_ = 0;
};

enum class Tri { False, True, Unknown };
std::string_view to_string(Tri t);

struct Resolution {
  // terms[i] is the free module F_i; differentials[i] : F_{i+1} -> F_i.
  // F_0 maps onto the module through generators[..] (ambient coordinates).
  std::vector<GradedModule> terms;
  std::vector<GradedMap> differentials;
  int max_degree = 0;
  // False when a generator appeared within the last n+2 degrees below the
  // bound, so that further generators above the bound cannot be excluded.
  bool complete = true;

  int length() const;  // projective dimension (-1 for the zero module)
  // betti()[i] maps degree -> number of generators of F_i in that degree.
  std::vector<std::vector<std::pair<int, int>>> betti() const;
};

// Throws FieldRequired over non-fields.
Resolution minimal_resolution(const GradedModule& m, int max_degree, int jobs = 1);

struct DepthDimReport {
  ExtInt depth = ExtInt::unknown();
  ExtInt dim = ExtInt::unknown();
  Tri is_cm = Tri::Unknown;
  bool stable = true;  // false when the degree bound may have truncated the answer
  std::vector<long> primes_examined;
  std::string certificate;
};

// Degree bound used by the operations below when none is given.
int homological_degree_bound(const GradedModule& m);

// Depth over a field (n - projective dimension); +inf for the zero module.
DepthDimReport depth(const GradedModule& m, std::optional<int> max_degree = std::nullopt, int jobs = 1);
// Krull dimension; -inf for the zero module. Throws DegreeBoundTooSmall when
// the Hilbert function has not visibly stabilised.
DepthDimReport krull_dim(const GradedModule& m, std::optional<int> max_degree = std::nullopt, int jobs = 1);
// Depth, dimension and CM together. Works over every ring; over Z and Z[1/S]
// depth and CM may be Unknown.
DepthDimReport depth_dim(const GradedModule& m, std::optional<int> max_degree = std::nullopt, int jobs = 1);
// As depth_dim, but requires a field and a nonzero module.
DepthDimReport is_cohen_macaulay(const GradedModule& m, std::optional<int> max_degree = std::nullopt, int jobs = 1);

struct FreenessReport {
  bool free = false;
  std::vector<int> generator_degrees;
  std::optional<int> first_bad_degree;
  std::string certificate;
};

FreenessReport is_free(const GradedModule& m, std::optional<int> max_degree = std::nullopt, int jobs = 1);

// Minimal generators of m (degrees and their images in m's free slices).
DegreewisePresentation minimal_generators(const GradedModule& m, int max_degree, bool with_relations = false);

}  // namespace exseq
