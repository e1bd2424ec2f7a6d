#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "simpla/models.hpp"

// JSON (de)serialization for both model kinds.  Files carry a "kind"
// discriminator; unknown keys are ignored so files can carry annotations.

namespace simpla {

using ModelVariant = std::variant<SimplicialModel, KripkeModel>;

// Parse a model from JSON text.  `origin` names the source in error messages.
// Throws ModelError on malformed input; the result is finalized but not
// semantically validated (see validate_simplicial / validate_kripke).
ModelVariant parse_model(const std::string& text, const std::string& origin = "<input>");

// Read and parse a model file.  Throws ModelError if unreadable.
ModelVariant load_model(const std::string& path);

nlohmann::json to_json(const SimplicialModel& C);
nlohmann::json to_json(const KripkeModel& M);
std::string dump_model(const ModelVariant& m);

}  // namespace simpla
