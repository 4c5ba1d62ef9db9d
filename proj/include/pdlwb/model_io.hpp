#pragma once

#include <string>

#include "json.hpp"
#include "pdlwb/model.hpp"

namespace pdlwb {

// File format:
//   {"states": ["s0", ...], "alphabet": ["a", ...],
//    "kernels": {"a": [["1/2", "0"], ...], ...}, "atoms": {"p": ["s1"]}}
// Rationals are "num/den" strings (plain integers accepted). The eps kernel
// is implied. Every alphabet letter other than eps needs a kernel.
KripkeModel model_from_json(const nlohmann::json& doc);
KripkeModel parse_model(const std::string& text);
/// Throws InvalidModel when the file cannot be read or parsed.
KripkeModel load_model(const std::string& path);

nlohmann::ordered_json model_to_json(const KripkeModel& m);

}  // namespace pdlwb
