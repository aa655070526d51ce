#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "surropt/surrogate.hpp"

namespace surropt {

/// Model documents are JSON with top-level fields
///   {kind, input_dim, output_dim, <kind payload>}
/// as described in docs/file_formats.md. Unknown fields anywhere in the
/// document are rejected.
std::shared_ptr<const SurrogateModel> model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const SurrogateModel& model);

/// File variants; throw IoError on missing/unwritable paths and ParseError
/// (with a line hint from the JSON parser) on malformed content.
std::shared_ptr<const SurrogateModel> load_model(const std::string& path);
void save_model(const SurrogateModel& model, const std::string& path);

}  // namespace surropt
