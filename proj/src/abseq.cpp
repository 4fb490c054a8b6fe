#include "exseq/abseq.hpp"

#include <algorithm>

#include "exseq/error.hpp"
#include "exseq/parallel.hpp"

namespace exseq {

SequenceKind parse_sequence_kind(std::string_view text) {
  if (text == "cs") return SequenceKind::cs();
  if (text == "full") return SequenceKind::full();
  if (text == "gt") return SequenceKind::gt();
  constexpr std::string_view prefix = "truncated:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string arg(text.substr(prefix.size()));
    try {
      size_t used = 0;
      const int k = std::stoi(arg, &used);
      if (used == arg.size()) return SequenceKind::truncated(k);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::ParseError, "unknown sequence kind '" + std::string(text) + "'");
}

std::string to_string(const SequenceKind& kind) {
  switch (kind.type) {
    case SequenceType::ChangSkjelbred: return "cs";
    case SequenceType::AtiyahBredonFull: return "full";
    case SequenceType::AtiyahBredonTruncated: return "truncated:" + std::to_string(kind.k);
    case SequenceType::GoertschesToeben: return "gt";
  }
  return "?";
}

std::string_view to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::ExactUpToD: return "ExactUpToD";
    case VerdictKind::FailsAt: return "FailsAt";
    case VerdictKind::Inapplicable: return "Inapplicable";
    case VerdictKind::Contradiction: return "Contradiction";
  }
  return "?";
}

int exit_code(VerdictKind v) {
  switch (v) {
    case VerdictKind::ExactUpToD: return 0;
    case VerdictKind::FailsAt: return 2;
    case VerdictKind::Inapplicable: return 3;
    case VerdictKind::Contradiction: return 4;
  }
  return 4;
}

namespace {

using ModulePtr = std::shared_ptr<const GradedModule>;

ModulePtr share(GradedModule m) { return std::make_shared<const GradedModule>(std::move(m)); }

GradedMap rewrap(const GradedMap& f, ModulePtr src, ModulePtr tgt) {
  return GradedMap(std::move(src), std::move(tgt), f.columns, 0);
}

GradedMap zero_map(ModulePtr src, ModulePtr tgt) {
  const int n = tgt->n();
  std::vector<PolyColumn> cols(src->num_generators(), PolyColumn(tgt->num_generators(), Poly(n)));
  return GradedMap(std::move(src), std::move(tgt), std::move(cols), 0);
}

std::string relative_label(int i) {
  if (i == 0) return "H_T(X_0)";
  return "H^{*+" + std::to_string(i) + "}_T(X_" + std::to_string(i) + ", X_" + std::to_string(i - 1) + ")";
}

}  // namespace

AssembledSequence assemble(const SpaceModel& x, const SpaceCohomology& data, SequenceKind kind) {
  const int n = data.n;
  AssembledSequence out;
  out.kind = kind;
  int last = n;  // last relative index included
  switch (kind.type) {
    case SequenceType::ChangSkjelbred:
      if (n < 1) throw Error(ErrorKind::UnsupportedModelRing, "the Chang-Skjelbred sequence needs n >= 1");
      last = 1;
      break;
    case SequenceType::AtiyahBredonFull: break;
    case SequenceType::AtiyahBredonTruncated:
      if (kind.k < 0 || kind.k > n) throw Error(ErrorKind::IndexOutOfRange, "truncation index out of range");
      last = kind.k;
      break;
    case SequenceType::GoertschesToeben: out.start = min_orbit_dim(x); break;
  }
  const int s = out.start;

  auto& cx = out.complex;
  cx.terms.push_back(data.htx);
  cx.labels.push_back("H_T(X)");
  for (int i = s; i <= last; ++i) {
    const int shift = i - s;
    cx.terms.push_back(shift == 0 ? data.relative[static_cast<size_t>(i)]
                                  : share(data.relative[static_cast<size_t>(i)]->shifted(-shift)));
    if (kind.type == SequenceType::GoertschesToeben) {
      cx.labels.push_back(shift == 0 ? "H_T(X_" + std::to_string(i) + ")"
                                     : "H^{*+" + std::to_string(shift) + "}_T(X_" + std::to_string(i) + ", X_" +
                                           std::to_string(i - 1) + ")");
    } else {
      cx.labels.push_back(relative_label(i));
    }
  }

  const bool cs = kind.type == SequenceType::ChangSkjelbred;
  if (cs && data.restriction) {
    cx.maps.push_back(rewrap(*data.restriction, cx.terms[0], cx.terms[1]));
  } else if (data.first_index == s) {
    cx.maps.push_back(rewrap(data.first, cx.terms[0], cx.terms[1]));
  } else {
    cx.maps.push_back(zero_map(cx.terms[0], cx.terms[1]));
  }
  for (int i = s; i < last; ++i) {
    const size_t m = static_cast<size_t>(i - s + 1);
    const GradedMap& d = (cs && i == 0 && data.one_skeleton_delta) ? *data.one_skeleton_delta
                                                                     : data.differentials[static_cast<size_t>(i)];
    cx.maps.push_back(rewrap(d, cx.terms[m], cx.terms[m + 1]));
  }
  cx.validate();

  // Positions whose exactness the sequence asserts.
  size_t top = cx.terms.size() - 1;
  if (kind.type == SequenceType::ChangSkjelbred || kind.type == SequenceType::AtiyahBredonTruncated) --top;
  for (size_t p = 0; p <= top; ++p) out.checked_positions.push_back(p);
  return out;
}

AssembledSequence assemble(const SpaceModel& x, const CoefficientRing& ring, SequenceKind kind, int max_degree,
                           int jobs) {
  return assemble(x, space_cohomology(x, ring, max_degree, jobs), kind);
}

// --- verification ---------------------------------------------------------------

namespace {

int condition_index(const SequenceKind& kind, int n) {
  switch (kind.type) {
    case SequenceType::ChangSkjelbred: return 1;
    case SequenceType::AtiyahBredonTruncated: return kind.k;
    default: return n;
  }
}

HypothesisCheck check_hypothesis(const GradedModule& htx, const SequenceKind& kind, int max_degree, int jobs) {
  HypothesisCheck h;
  try {
    if (kind.type == SequenceType::GoertschesToeben) {
      h.name = "cohen-macaulay";
      auto r = depth_dim(htx, max_degree, jobs);
      h.holds = r.is_cm;
      h.detail = "depth " + r.depth.to_string() + ", dim " + r.dim.to_string();
    } else {
      h.name = "free";
      auto r = is_free(htx, max_degree, jobs);
      h.holds = r.free ? Tri::True : Tri::False;
      h.detail = r.certificate;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegreeBoundTooSmall) throw;
    h.holds = Tri::Unknown;
    h.detail = e.what();
  }
  return h;
}

// Outcome when the conclusion fails: the hypotheses decide who is to blame.
VerdictKind failure_kind(const ConditionReport& conditions, const HypothesisCheck& hyp) {
  if (!conditions.holds || hyp.holds == Tri::False) return VerdictKind::FailsAt;
  if (hyp.holds == Tri::Unknown) return VerdictKind::Inapplicable;
  return VerdictKind::Contradiction;
}

}  // namespace

ExactnessReport verify(const SpaceModel& x, const CoefficientRing& ring, SequenceKind kind, int max_degree,
                       int jobs) {
  const SpaceCohomology data = space_cohomology(x, ring, max_degree, jobs);
  const AssembledSequence seq = assemble(x, data, kind);

  ExactnessReport rep;
  rep.kind = kind;
  rep.ring = ring;
  rep.max_degree = max_degree;
  rep.model = x.name();
  rep.term_labels = seq.complex.labels;
  rep.conditions = check_conditions(strata(x), ring, condition_index(kind, data.n));
  rep.hypothesis = check_hypothesis(*data.htx, kind, max_degree, jobs);

  try {
    for (size_t p : seq.checked_positions) rep.positions.push_back(homology_at(seq.complex, p, max_degree, jobs));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAComplex) throw;
    rep.verdict.kind = VerdictKind::Contradiction;
    rep.verdict.reason = e.what();
    return rep;
  }

  for (const auto& h : rep.positions) {
    if (const HomologySlice* s = h.first_nonzero()) {
      rep.verdict.kind = failure_kind(rep.conditions, rep.hypothesis);
      rep.verdict.position = h.position;
      rep.verdict.degree = s->degree;
      rep.verdict.witness = *s;
      rep.verdict.reason = "nonzero homology at " + rep.term_labels[h.position] + " in degree " +
                           std::to_string(s->degree);
      return rep;
    }
  }
  rep.verdict.kind = VerdictKind::ExactUpToD;
  return rep;
}

CsComparison cs_compare(const SpaceModel& x, const CoefficientRing& ring, int max_degree, int jobs) {
  const SpaceCohomology data = space_cohomology(x, ring, max_degree, jobs);
  const AssembledSequence seq = assemble(x, data, SequenceKind::cs());
  const GradedMap& restr = seq.complex.maps[0];
  const GradedMap& delta = seq.complex.maps[1];
  const GradedModule& fixed = *seq.complex.terms[1];
  const GradedModule& edge = *seq.complex.terms[2];

  CsComparison out;
  out.ring = ring;
  out.max_degree = max_degree;
  out.model = x.name();
  out.conditions = check_conditions(strata(x), ring, 1);
  out.hypothesis = check_hypothesis(*data.htx, SequenceKind::cs(), max_degree, jobs);
  for (const auto& s : hilbert_function(*data.htx, max_degree, jobs)) out.htx_ranks.push_back(s.free_rank);

  struct Slice {
    bool image_in_equalizer = true;
    bool equalizer_in_image = true;
    int rank = 0;
  };
  auto slices = parallel_map(static_cast<size_t>(max_degree + 1), jobs, [&](size_t idx) {
    const int j = static_cast<int>(idx);
    Slice s;
    const size_t dim = free_slice_dim(fixed.generator_degrees(), fixed.n(), j);
    if (dim == 0) return s;
    const Matrix rel = relation_block(fixed, j);
    const Matrix image = hstack(map_block(restr, j), rel);
    const Matrix stacked = hstack(map_block(delta, j), relation_block(edge, j));
    Matrix equalizer;
    if (stacked.rows() == 0) {
      equalizer = Matrix::identity(dim);
    } else {
      const Matrix kb = kernel_basis(stacked, ring);
      equalizer = Matrix(dim, kb.cols());
      for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < kb.cols(); ++c) equalizer(r, c) = kb(r, c);
    }
    equalizer = hstack(equalizer, rel);
    s.image_in_equalizer = spans_contain(equalizer, image, ring);
    s.equalizer_in_image = spans_contain(image, equalizer, ring);
    s.rank = static_cast<int>(rank(image, ring) - rank(rel, ring));
    return s;
  });

  for (int j = 0; j <= max_degree; ++j) {
    const auto& s = slices[static_cast<size_t>(j)];
    out.common_image_ranks.push_back(s.rank);
    if (out.equal && !(s.image_in_equalizer && s.equalizer_in_image)) {
      out.equal = false;
      out.first_discrepancy = j;
      out.image_in_equalizer = s.image_in_equalizer;
      out.equalizer_in_image = s.equalizer_in_image;
    }
  }
  if (out.equal) {
    out.verdict.kind = VerdictKind::ExactUpToD;
  } else {
    out.verdict.kind = failure_kind(out.conditions, out.hypothesis);
    out.verdict.position = 1;
    out.verdict.degree = out.first_discrepancy;
    out.verdict.reason = out.image_in_equalizer ? "the equalizer is larger than the image of H_T(X)"
                                                : "the image of H_T(X) leaves the equalizer";
  }
  return out;
}

// --- profiles -----------------------------------------------------------------

CmProfile cm_profile(const SpaceModel& x, const CoefficientRing& ring, int max_degree, int jobs) {
  if (!ring.is_field()) throw Error(ErrorKind::FieldRequired, "profiles are computed over fields");
  const SpaceCohomology data = space_cohomology(x, ring, max_degree, jobs);
  CmProfile out;
  out.ring = ring;
  out.max_degree = max_degree;
  out.model = x.name();
  out.n = data.n;
  out.k = min_orbit_dim(x);
  const SequenceKind kind = out.k == 0 ? SequenceKind::full() : SequenceKind::gt();
  const AssembledSequence seq = assemble(x, data, kind);
  const GradedComplex& cx = seq.complex;
  for (size_t p : seq.checked_positions) {
    if (!homology_at(cx, p, max_degree, jobs).exact())
      throw Error(ErrorKind::NotExact, "the " + to_string(kind) + " sequence is not exact at " + cx.labels[p]);
  }

  // Closed-form terms are known in every degree, so their invariants use a
  // bound large enough for the Hilbert polynomial to settle.
  auto bound = [&](const GradedModule& m) {
    return m.valid_through() == kUnbounded ? std::max(max_degree, homological_degree_bound(m)) : max_degree;
  };
  out.htx = depth_dim(*data.htx, bound(*data.htx), jobs);
  out.htx_dim_ok = out.htx.dim == ExtInt(out.n - out.k);

  // H^{*+m}_T(X, X_i) is the cokernel of the map into position m = i - start + 1.
  for (int i = seq.start; i <= data.n; ++i) {
    const size_t m = static_cast<size_t>(i - seq.start);
    ProfileRow row;
    row.i = i;
    auto tail = share(cokernel(cx.maps[m]));
    row.tail = depth_dim(*tail, bound(*tail), jobs);
    const bool zero = row.tail.dim.kind() == ExtInt::Kind::NegInf;
    row.tail_zero_or_cm = zero || (row.tail.is_cm == Tri::True && row.tail.dim == ExtInt(data.n - i - 1));

    if (m + 2 < cx.terms.size()) {
      GradedComplex induced;
      induced.terms = {tail, cx.terms[m + 2]};
      induced.maps = {GradedMap(tail, cx.terms[m + 2], cx.maps[m + 1].columns, 0)};
      row.connecting_map_zero = homology_at(induced, 0, max_degree, jobs).exact();
    } else {
      row.connecting_map_zero = true;
    }

    const GradedModule& rel = *data.relative[static_cast<size_t>(i)];
    row.relative = depth_dim(rel, bound(rel), jobs);
    row.relative_depth_ok = ExtInt(data.n - i).less_equal(row.relative.depth);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace exseq
