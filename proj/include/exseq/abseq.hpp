#pragma once

// The Chang-Skjelbred, Atiyah-Bredon and Goertsches-Toeben sequences of a
// T-space: assembly as graded complexes, degreewise exactness checks with
// witnesses, the Chang-Skjelbred image comparison and depth/dimension profiles.

#include <optional>
#include <string>
#include <vector>

#include "exseq/grmod.hpp"
#include "exseq/homological.hpp"
#include "exseq/lattice.hpp"
#include "exseq/spaces.hpp"

namespace exseq {

enum class SequenceType { ChangSkjelbred, AtiyahBredonFull, AtiyahBredonTruncated, GoertschesToeben };

struct SequenceKind {
  SequenceType type = SequenceType::AtiyahBredonFull;
  int k = 0;  // only for AtiyahBredonTruncated

  static SequenceKind cs() { return {SequenceType::ChangSkjelbred, 0}; }
  static SequenceKind full() { return {SequenceType::AtiyahBredonFull, 0}; }
  static SequenceKind truncated(int k) { return {SequenceType::AtiyahBredonTruncated, k}; }
  static SequenceKind gt() { return {SequenceType::GoertschesToeben, 0}; }

  bool operator==(const SequenceKind&) const = default;
};

// "cs", "full", "truncated:k", "gt".
SequenceKind parse_sequence_kind(std::string_view text);
std::string to_string(const SequenceKind& kind);

struct AssembledSequence {
  SequenceKind kind;
  int start = 0;  // index of the first relative term
  // Position 0 is H_T(X); position m >= 1 holds H^{*+m-1}_T(X_{s+m-1}, X_{s+m-2}), s = start.
  GradedComplex complex;
  std::vector<size_t> checked_positions;
};

// Throws IndexOutOfRange for a truncation outside [0, n], UnsupportedModelRing
// for unsupported combinations.
AssembledSequence assemble(const SpaceModel& x, const SpaceCohomology& data, SequenceKind kind);
AssembledSequence assemble(const SpaceModel& x, const CoefficientRing& ring, SequenceKind kind, int max_degree,
                           int jobs = 1);

enum class VerdictKind { ExactUpToD, FailsAt, Inapplicable, Contradiction };

std::string_view to_string(VerdictKind v);
int exit_code(VerdictKind v);

struct Verdict {
  VerdictKind kind = VerdictKind::ExactUpToD;
  std::optional<size_t> position;
  std::optional<int> degree;
  std::optional<HomologySlice> witness;
  std::string reason;
};

struct HypothesisCheck {
  std::string name;  // "free" or "cohen-macaulay"
  Tri holds = Tri::Unknown;
  std::string detail;
};

struct ExactnessReport {
  SequenceKind kind;
  CoefficientRing ring = CoefficientRing::integers();
  int max_degree = 0;
  std::string model;
  std::vector<std::string> term_labels;
  std::vector<HomologyResult> positions;  // in checked order
  ConditionReport conditions;
  HypothesisCheck hypothesis;
  Verdict verdict;
};

ExactnessReport verify(const SpaceModel& x, const CoefficientRing& ring, SequenceKind kind, int max_degree,
                       int jobs = 1);

struct CsComparison {
  CoefficientRing ring = CoefficientRing::integers();
  int max_degree = 0;
  std::string model;
  bool equal = true;
  std::optional<int> first_discrepancy;
  // Which inclusion fails at the first discrepancy.
  bool image_in_equalizer = true;
  bool equalizer_in_image = true;
  std::vector<int> common_image_ranks;  // by degree 0..max_degree
  std::vector<int> htx_ranks;
  ConditionReport conditions;
  HypothesisCheck hypothesis;
  Verdict verdict;
};

CsComparison cs_compare(const SpaceModel& x, const CoefficientRing& ring, int max_degree, int jobs = 1);

struct ProfileRow {
  int i = 0;
  DepthDimReport tail;              // H_T(X, X_i)
  bool tail_zero_or_cm = false;     // zero or CM of dimension d + n - i - 1
  bool connecting_map_zero = false; // H_T(X, X_i) -> H_T(X_{i+1}, X_i) injective up to D
  DepthDimReport relative;          // H_T(X_i, X_{i-1})
  bool relative_depth_ok = false;   // depth >= n - i
};

struct CmProfile {
  CoefficientRing ring = CoefficientRing::rationals();
  int max_degree = 0;
  std::string model;
  int n = 0;
  int k = 0;  // min orbit dimension
  DepthDimReport htx;
  bool htx_dim_ok = false;  // dim H_T(X) = d + n - k
  std::vector<ProfileRow> rows;
};

// Requires a field; throws NotExact unless the relevant sequence (Atiyah-Bredon
// when k = 0, Goertsches-Toeben otherwise) is exact up to max_degree.
CmProfile cm_profile(const SpaceModel& x, const CoefficientRing& ring, int max_degree, int jobs = 1);

}  // namespace exseq
