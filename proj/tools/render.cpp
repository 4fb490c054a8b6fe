#include "render.hpp"

#include <sstream>

namespace exseq::io {

Json to_json(const FinitelyGeneratedRModule& m);

namespace {

Json strings(const std::vector<mpz_class>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.get_str());
  return out;
}

Json slice_json(const HomologySlice& s) {
  return Json{{"degree", s.degree},
              {"homology", to_json(s.homology)},
              {"kernel_generators", s.kernel_generators.to_strings()},
              {"image_generators", s.image_generators.to_strings()},
              {"presentation", s.presentation.to_strings()},
              {"snf_diagonal", strings(s.diagonal)}};
}

Json verdict_json(const Verdict& v) {
  Json j{{"kind", std::string(to_string(v.kind))}, {"exit_code", exit_code(v.kind)}};
  if (v.position) j["position"] = *v.position;
  if (v.degree) j["degree"] = *v.degree;
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.witness) j["witness"] = slice_json(*v.witness);
  return j;
}

Json hypothesis_json(const HypothesisCheck& h) {
  return Json{{"name", h.name}, {"holds", std::string(to_string(h.holds))}, {"detail", h.detail}};
}

std::string module_text(const FinitelyGeneratedRModule& m) { return m.to_string(); }

std::string verdict_text(const Verdict& v) {
  std::ostringstream out;
  out << "verdict: " << to_string(v.kind);
  if (v.position) out << " at position " << *v.position;
  if (v.degree) out << ", degree " << *v.degree;
  if (!v.reason.empty()) out << " (" << v.reason << ")";
  out << "\n";
  if (v.witness) {
    out << "witness homology: " << module_text(v.witness->homology) << "\n";
    out << "  snf diagonal:";
    for (const auto& d : v.witness->diagonal) out << ' ' << d.get_str();
    out << "\n";
  }
  return out.str();
}

}  // namespace

Json to_json(const FinitelyGeneratedRModule& m) {
  return Json{{"free_rank", m.free_rank}, {"torsion", strings(m.torsion)}};
}

Json to_json(const ConditionReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"stratum", x.stratum}, {"i", x.i}, {"p", x.p}, {"condition", std::string(to_string(x.condition))}});
  return Json{{"ring", r.ring.descriptor()}, {"k", r.k}, {"holds", r.holds}, {"violations", v}};
}

Json to_json(const DepthDimReport& r) {
  Json j{{"depth", r.depth.to_string()},
         {"dim", r.dim.to_string()},
         {"cohen_macaulay", std::string(to_string(r.is_cm))},
         {"stable", r.stable}};
  if (!r.primes_examined.empty()) j["primes_examined"] = r.primes_examined;
  j["certificate"] = r.certificate;
  return j;
}

Json to_json(const ExactnessReport& r) {
  Json positions = Json::array();
  for (const auto& h : r.positions) {
    Json nonzero = Json::array();
    for (const auto& s : h.slices)
      if (!s.homology.is_zero()) nonzero.push_back({{"degree", s.degree}, {"homology", to_json(s.homology)}});
    positions.push_back({{"position", h.position},
                         {"term", r.term_labels[h.position]},
                         {"exact", h.exact()},
                         {"nonzero_homology", nonzero}});
  }
  return Json{{"sequence", to_string(r.kind)},
              {"model", r.model},
              {"ring", r.ring.descriptor()},
              {"max_degree", r.max_degree},
              {"terms", r.term_labels},
              {"conditions", to_json(r.conditions)},
              {"hypothesis", hypothesis_json(r.hypothesis)},
              {"positions", positions},
              {"verdict", verdict_json(r.verdict)}};
}

Json to_json(const CsComparison& r) {
  Json j{{"model", r.model},
         {"ring", r.ring.descriptor()},
         {"max_degree", r.max_degree},
         {"result", r.equal ? "Equal" : "Differ"}};
  if (r.first_discrepancy) {
    j["first_discrepancy"] = *r.first_discrepancy;
    j["image_in_equalizer"] = r.image_in_equalizer;
    j["equalizer_in_image"] = r.equalizer_in_image;
  }
  j["common_image_ranks"] = r.common_image_ranks;
  j["htx_ranks"] = r.htx_ranks;
  j["conditions"] = to_json(r.conditions);
  j["hypothesis"] = hypothesis_json(r.hypothesis);
  j["verdict"] = verdict_json(r.verdict);
  return j;
}

Json to_json(const CmProfile& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"i", row.i},
                    {"tail", to_json(row.tail)},
                    {"tail_zero_or_cm_of_expected_dim", row.tail_zero_or_cm},
                    {"connecting_map_zero", row.connecting_map_zero},
                    {"relative", to_json(row.relative)},
                    {"relative_depth_at_least_n_minus_i", row.relative_depth_ok}});
  }
  return Json{{"model", r.model},
              {"ring", r.ring.descriptor()},
              {"max_degree", r.max_degree},
              {"n", r.n},
              {"min_orbit_dim", r.k},
              {"htx", to_json(r.htx)},
              {"htx_dim_is_n_minus_k", r.htx_dim_ok},
              {"rows", rows}};
}

std::string to_text(const ConditionReport& r) {
  std::ostringstream out;
  out << "conditions over " << r.ring.descriptor() << " up to k=" << r.k << ": " << (r.holds ? "hold" : "violated")
      << "\n";
  for (const auto& v : r.violations) {
    out << "  i=" << v.i;
    if (v.p != 0) out << " p=" << v.p;
    out << " " << to_string(v.condition) << " " << v.stratum << "\n";
  }
  return out.str();
}

std::string to_text(const ExactnessReport& r) {
  std::ostringstream out;
  out << "sequence " << to_string(r.kind) << " of " << r.model << " over " << r.ring.descriptor()
      << ", degrees <= " << r.max_degree << "\n";
  out << to_text(r.conditions);
  out << "hypothesis " << r.hypothesis.name << ": " << to_string(r.hypothesis.holds) << "\n";
  for (const auto& h : r.positions) {
    out << "  [" << h.position << "] " << r.term_labels[h.position] << ": " << (h.exact() ? "exact" : "not exact")
        << "\n";
    for (const auto& s : h.slices)
      if (!s.homology.is_zero()) out << "      degree " << s.degree << ": " << module_text(s.homology) << "\n";
  }
  out << verdict_text(r.verdict);
  return out.str();
}

std::string to_text(const CsComparison& r) {
  std::ostringstream out;
  out << "Chang-Skjelbred comparison for " << r.model << " over " << r.ring.descriptor() << ", degrees <= "
      << r.max_degree << ": " << (r.equal ? "Equal" : "Differ") << "\n";
  if (r.first_discrepancy) out << "  first discrepancy in degree " << *r.first_discrepancy << "\n";
  out << "  common image ranks:";
  for (int x : r.common_image_ranks) out << ' ' << x;
  out << "\n  H_T(X) ranks:      ";
  for (int x : r.htx_ranks) out << ' ' << x;
  out << "\n" << to_text(r.conditions);
  out << "hypothesis " << r.hypothesis.name << ": " << to_string(r.hypothesis.holds) << "\n";
  out << verdict_text(r.verdict);
  return out.str();
}

std::string to_text(const CmProfile& r) {
  std::ostringstream out;
  out << "profile of " << r.model << " over " << r.ring.descriptor() << " (n=" << r.n << ", k=" << r.k << ")\n";
  out << "H_T(X): dim " << r.htx.dim.to_string() << ", depth " << r.htx.depth.to_string() << ", CM "
      << to_string(r.htx.is_cm) << (r.htx_dim_ok ? " (dim = n - k)" : " (dim != n - k)") << "\n";
  out << "  i  tail dim  tail depth  CM       zero-or-CM  split  rel depth  rel ok\n";
  for (const auto& row : r.rows) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-2d %-9s %-11s %-8s %-11s %-6s %-10s %s\n", row.i,
                  row.tail.dim.to_string().c_str(), row.tail.depth.to_string().c_str(),
                  std::string(to_string(row.tail.is_cm)).c_str(), row.tail_zero_or_cm ? "yes" : "no",
                  row.connecting_map_zero ? "yes" : "no", row.relative.depth.to_string().c_str(),
                  row.relative_depth_ok ? "yes" : "no");
    out << line;
  }
  return out.str();
}

}  // namespace exseq::io
