#pragma once

// JSON and text renderings of the engine's reports. Nothing here depends on
// the parallelism hint, so equal inputs give byte-identical output.

#include <string>

#include "model_io.hpp"
#include "exseq/abseq.hpp"

namespace exseq::io {

Json to_json(const FinitelyGeneratedRModule& m);
Json to_json(const ConditionReport& r);
Json to_json(const DepthDimReport& r);
Json to_json(const ExactnessReport& r);
Json to_json(const CsComparison& r);
Json to_json(const CmProfile& r);

std::string to_text(const ConditionReport& r);
std::string to_text(const ExactnessReport& r);
std::string to_text(const CsComparison& r);
std::string to_text(const CmProfile& r);

}  // namespace exseq::io
