#pragma once

// JSON ingestion and serialization for models, strata lists and modules.

#include <string>
#include <vector>

#include "json.hpp"
#include "exseq/grmod.hpp"
#include "exseq/lattice.hpp"
#include "exseq/spaces.hpp"

namespace exseq::io {

using Json = nlohmann::ordered_json;

// Reads a whole file and parses it; throws ParseError.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& origin);

// A model from a file path if one exists, else from the built-in catalog.
SpaceModel load_model(const std::string& source);
SpaceModel model_from_json(const Json& j, const std::string& name = {});
Json model_to_json(const SpaceModel& x);

Matrix matrix_from_json(const Json& j, size_t cols_if_empty);
Json matrix_to_json(const Matrix& m);

std::vector<StratumDescriptor> strata_from_json(const Json& j, int& n);

// The ring comes from the file unless `ring_override` is non-empty.
GradedModule module_from_json(const Json& j, const std::string& ring_override);

}  // namespace exseq::io
