#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "model_io.hpp"
#include "render.hpp"
#include "exseq/abseq.hpp"
#include "exseq/error.hpp"

using namespace exseq;
using io::Json;

namespace {

struct Options {
  std::string ring = "Z";
  int max_degree = 20;
  std::string kind = "full";
  std::string format = "text";
  int jobs = 1;
  std::string target;
  int n = -1;
  std::string matrix;
  int k = 1;
  bool as_module = false;
};

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

Json config(const Options& o, const std::string& command) {
  return Json{{"command", command}, {"target", o.target}, {"ring", o.ring}, {"max_degree", o.max_degree},
              {"kind", o.kind}};
}

int cmd_decompose(const Options& o) {
  const CoefficientRing ring = make_ring(o.ring);
  Json m = io::parse_json(o.matrix.empty() ? "[]" : o.matrix, "--matrix");
  if (o.n < 0) throw Error(ErrorKind::ParseError, "--n is required");
  ClosedSubgroup h(o.n, io::matrix_from_json(m, static_cast<size_t>(o.n)));
  const Decomposition d = decompose_subgroup(h);
  int s = 0;
  Json orders = Json::array();
  for (const auto& x : d.orders) {
    orders.push_back(x.get_str());
    if (!ring.is_unit(x)) ++s;
  }
  const int dim = dim_classifying(d, ring);
  std::ostringstream text;
  text << "m = (";
  for (size_t i = 0; i < d.orders.size(); ++i) text << (i ? ", " : "") << d.orders[i].get_str();
  text << "), r = " << d.torus_rank << ", s = " << s << ", dim = " << dim << "\n";
  emit(o, Json{{"n", o.n}, {"ring", ring.descriptor()}, {"m", orders}, {"r", d.torus_rank}, {"s", s}, {"dim", dim}},
       text.str());
  return 0;
}

int cmd_check_conditions(const Options& o) {
  const CoefficientRing ring = make_ring(o.ring);
  int n = 0;
  const auto strata = io::strata_from_json(io::read_json_file(o.target), n);
  const auto topo = check_conditions(strata, ring, o.k);
  const auto alg = check_conditions_algebraic(strata, ring, o.k);
  const bool agree = same_violations(topo, alg);
  Json j = config(o, "check-conditions");
  j.erase("kind");
  j.erase("max_degree");
  j["k"] = o.k;
  j["p_torus"] = io::to_json(topo);
  j["dimension_form"] = io::to_json(alg);
  j["agree"] = agree;
  emit(o, j, io::to_text(topo) + "dimension form: " + io::to_text(alg) +
                 (agree ? "checkers agree\n" : "CHECKERS DISAGREE\n"));
  return agree ? 0 : 4;
}

int cmd_verify(const Options& o) {
  const auto x = io::load_model(o.target);
  const auto r = verify(x, make_ring(o.ring), parse_sequence_kind(o.kind), o.max_degree, o.jobs);
  Json j = config(o, "verify");
  j["report"] = io::to_json(r);
  emit(o, j, io::to_text(r));
  return exit_code(r.verdict.kind);
}

int cmd_cs_compare(const Options& o) {
  const auto x = io::load_model(o.target);
  const auto r = cs_compare(x, make_ring(o.ring), o.max_degree, o.jobs);
  Json j = config(o, "cs-compare");
  j.erase("kind");
  j["report"] = io::to_json(r);
  emit(o, j, io::to_text(r));
  return exit_code(r.verdict.kind);
}

int cmd_profile(const Options& o) {
  const auto x = io::load_model(o.target);
  const auto r = cm_profile(x, make_ring(o.ring), o.max_degree, o.jobs);
  Json j = config(o, "profile");
  j.erase("kind");
  j["report"] = io::to_json(r);
  emit(o, j, io::to_text(r));
  return 0;
}

int cmd_hilbert(const Options& o) {
  GradedModule m;
  Json file;
  const bool is_file = std::filesystem::is_regular_file(o.target);
  if (is_file) file = io::read_json_file(o.target);
  if (o.as_module || (is_file && file.contains("generators"))) {
    m = io::module_from_json(file, o.ring);
  } else {
    m = equivariant_cohomology(io::load_model(o.target), make_ring(o.ring), o.max_degree, o.jobs);
  }
  Json slices = Json::array();
  std::ostringstream text;
  const auto h = hilbert_function(m, o.max_degree, o.jobs);
  for (size_t j = 0; j < h.size(); ++j) {
    slices.push_back({{"degree", j}, {"module", io::to_json(h[j])}});
    text << "degree " << j << ": " << h[j].to_string() << "\n";
  }
  Json j = config(o, "hilbert");
  j.erase("kind");
  j["ring"] = m.ring().descriptor();
  j["generator_degrees"] = m.generator_degrees();
  j["slices"] = slices;
  emit(o, j, text.str());
  return 0;
}

int cmd_catalog(const Options& o) {
  if (!o.target.empty()) {
    std::cout << io::model_to_json(catalog_model(o.target)).dump(2) << "\n";
    return 0;
  }
  Json j = catalog_names();
  std::ostringstream text;
  for (const auto& name : catalog_names()) text << name << "\n";
  emit(o, j, text.str());
  return 0;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::UnsupportedModelRing: return 3;
    case ErrorKind::NotAComplex: return 4;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of localization sequences in equivariant cohomology"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c, bool with_degree) {
    c->add_option("--ring", o.ring, "Q, Z, Fp:<p> or Z[1/p,...]")->capture_default_str();
    c->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    if (with_degree) c->add_option("--max-degree", o.max_degree)->check(CLI::NonNegativeNumber)->capture_default_str();
  };

  auto* decompose = app.add_subcommand("decompose", "decompose a closed subgroup of the torus");
  common(decompose, false);
  decompose->add_option("--n", o.n, "torus rank")->required();
  decompose->add_option("--matrix", o.matrix, "character matrix as JSON rows");

  auto* conditions = app.add_subcommand("check-conditions", "check the isotropy conditions on a strata file");
  common(conditions, false);
  conditions->add_option("strata", o.target)->required()->check(CLI::ExistingFile);
  conditions->add_option("--k", o.k)->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "check exactness of a sequence up to a degree");
  common(verify_cmd, true);
  verify_cmd->add_option("model", o.target, "model file or catalog name")->required();
  verify_cmd->add_option("--kind", o.kind, "cs, full, truncated:k or gt")->capture_default_str();

  auto* cs = app.add_subcommand("cs-compare", "compare the image of H_T(X) with the one-skeleton equalizer");
  common(cs, true);
  cs->add_option("model", o.target)->required();

  auto* profile = app.add_subcommand("profile", "depth, dimension and CM profile over a field");
  common(profile, true);
  profile->add_option("model", o.target)->required();

  auto* hilbert = app.add_subcommand("hilbert", "graded pieces of H_T(X) or of a module file");
  common(hilbert, true);
  hilbert->add_option("target", o.target, "model, catalog name or module file")->required();
  hilbert->add_flag("--module", o.as_module, "read the target as a module file");

  auto* catalog = app.add_subcommand("catalog", "list built-in models or print one as JSON");
  common(catalog, false);
  catalog->add_option("name", o.target);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*decompose) return cmd_decompose(o);
    if (*conditions) return cmd_check_conditions(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*cs) return cmd_cs_compare(o);
    if (*profile) return cmd_profile(o);
    if (*hilbert) return cmd_hilbert(o);
    if (*catalog) return cmd_catalog(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 1;
}
