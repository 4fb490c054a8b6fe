#include "model_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "exseq/error.hpp"

namespace exseq::io {

namespace {

[[noreturn]] void fail(const std::string& why) { throw Error(ErrorKind::ParseError, why); }

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("bad field '") + key + "': " + e.what());
  }
}

SpaceModel part_from_json(const Json& j) {
  if (j.is_string()) return load_model(j.get<std::string>());
  return model_from_json(j);
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(origin + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

Matrix matrix_from_json(const Json& j, size_t cols_if_empty) {
  std::vector<std::vector<long>> rows;
  try {
    rows = j.get<std::vector<std::vector<long>>>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("bad matrix: ") + e.what());
  }
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) fail("ragged matrix");
  if (!rows.empty() && cols_if_empty != 0 && rows.front().size() != cols_if_empty)
    throw Error(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(rows.front().size()) +
                                                  " columns, expected " + std::to_string(cols_if_empty));
  return Matrix::from_rows(rows, cols_if_empty);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_si());
    rows.push_back(row);
  }
  return rows;
}

SpaceModel model_from_json(const Json& j, const std::string& name) {
  if (!j.is_object()) fail("a model must be a JSON object");
  const std::string nm = j.contains("name") ? field<std::string>(j, "name") : name;
  std::string type = j.contains("type") ? field<std::string>(j, "type") : "";
  if (type.empty()) type = j.contains("rays") ? "fan" : j.contains("vertices") ? "gkm" : "";
  if (type == "fan") {
    return SpaceModel(Fan{field<int>(j, "n"), field<std::vector<std::vector<long>>>(j, "rays"),
                          field<std::vector<std::vector<int>>>(j, "cones")},
                      nm);
  }
  if (type == "gkm") {
    GkmGraph g;
    g.n = field<int>(j, "n");
    g.vertices = field<std::vector<std::string>>(j, "vertices");
    auto index = [&](const std::string& v) {
      for (size_t i = 0; i < g.vertices.size(); ++i)
        if (g.vertices[i] == v) return static_cast<int>(i);
      fail("unknown vertex '" + v + "'");
    };
    if (!j.contains("edges") || !j.at("edges").is_array()) fail("missing field 'edges'");
    for (const auto& e : j.at("edges"))
      g.edges.push_back({index(field<std::string>(e, "v")), index(field<std::string>(e, "w")),
                         field<std::vector<long>>(e, "label")});
    return SpaceModel(std::move(g), nm);
  }
  if (type == "single_orbit") {
    const int n = field<int>(j, "n");
    return SpaceModel(SingleOrbit{ClosedSubgroup(n, matrix_from_json(j.at("character_matrix"), n))}, nm);
  }
  if (type == "disjoint_union") {
    DisjointUnion u;
    if (!j.contains("parts") || !j.at("parts").is_array() || j.at("parts").empty()) fail("missing field 'parts'");
    for (const auto& p : j.at("parts")) u.parts.push_back(std::make_shared<const SpaceModel>(part_from_json(p)));
    u.n = u.parts.front()->n();
    return SpaceModel(std::move(u), nm);
  }
  if (type == "free_circle_product") {
    if (!j.contains("base")) fail("missing field 'base'");
    return SpaceModel(FreeCircleProduct{std::make_shared<const SpaceModel>(part_from_json(j.at("base")))}, nm);
  }
  fail("unknown model type '" + type + "'");
}

Json model_to_json(const SpaceModel& x) {
  Json j;
  if (!x.name().empty()) j["name"] = x.name();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Fan>) {
          j["type"] = "fan";
          j["n"] = v.n;
          j["rays"] = v.rays;
          j["cones"] = v.cones;
        } else if constexpr (std::is_same_v<T, GkmGraph>) {
          j["type"] = "gkm";
          j["n"] = v.n;
          j["vertices"] = v.vertices;
          Json edges = Json::array();
          for (const auto& e : v.edges)
            edges.push_back({{"v", v.vertices[e.v]}, {"w", v.vertices[e.w]}, {"label", e.label}});
          j["edges"] = edges;
        } else if constexpr (std::is_same_v<T, SingleOrbit>) {
          j["type"] = "single_orbit";
          j["n"] = v.isotropy.n();
          j["character_matrix"] = matrix_to_json(v.isotropy.character_matrix());
        } else if constexpr (std::is_same_v<T, DisjointUnion>) {
          j["type"] = "disjoint_union";
          Json parts = Json::array();
          for (const auto& p : v.parts) parts.push_back(model_to_json(*p));
          j["parts"] = parts;
        } else {
          j["type"] = "free_circle_product";
          j["base"] = model_to_json(*v.base);
        }
      },
      x.variant());
  return j;
}

SpaceModel load_model(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) {
    return model_from_json(read_json_file(source), std::filesystem::path(source).stem().string());
  }
  return catalog_model(source);
}

std::vector<StratumDescriptor> strata_from_json(const Json& j, int& n) {
  n = field<int>(j, "n");
  if (!j.contains("strata") || !j.at("strata").is_array()) fail("missing field 'strata'");
  std::vector<StratumDescriptor> out;
  for (const auto& s : j.at("strata")) {
    StratumDescriptor d{field<std::string>(s, "name"),
                        ClosedSubgroup(n, matrix_from_json(s.at("character_matrix"), static_cast<size_t>(n))),
                        field<int>(s, "orbit_dim")};
    validate_stratum(d, n);
    out.push_back(std::move(d));
  }
  return out;
}

GradedModule module_from_json(const Json& j, const std::string& ring_override) {
  const int n = field<int>(j, "n");
  const CoefficientRing ring =
      make_ring(!ring_override.empty() ? ring_override : j.contains("ring") ? field<std::string>(j, "ring") : "Z");
  const auto gens = field<std::vector<int>>(j, "generators");
  std::vector<PolyColumn> relations;
  if (j.contains("relations")) {
    for (const auto& r : j.at("relations")) {
      PolyColumn col(gens.size(), Poly(n));
      // Either a single entry {"target","poly"} or {"entries":[...]}.
      const Json entries = r.contains("entries") ? r.at("entries") : Json::array({r});
      for (const auto& e : entries) {
        const int t = field<int>(e, "target");
        if (t < 0 || t >= static_cast<int>(gens.size())) fail("relation target out of range");
        col[static_cast<size_t>(t)] = col[static_cast<size_t>(t)] + parse_poly(field<std::string>(e, "poly"), n);
      }
      relations.push_back(std::move(col));
    }
  }
  return GradedModule({n, ring}, gens, std::move(relations));
}

}  // namespace exseq::io
