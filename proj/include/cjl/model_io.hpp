#pragma once

#include <string>
#include <variant>

#include "cjl/kripke.hpp"
#include "cjl/routley.hpp"
#include "json.hpp"

namespace cjl {

using json = nlohmann::json;

KripkeModel kripke_from_json(const json& doc);
json to_json(const KripkeModel& m);

RoutleyModel routley_from_json(const json& doc);
json to_json(const RoutleyModel& m);

using AnyModel = std::variant<KripkeModel, RoutleyModel>;
// Picks the semantics from the document's "dialect" field.
AnyModel model_from_json(const json& doc);
Dialect model_dialect(const AnyModel& m);

// [{"constant": "c1", "formula": "..."}] or {"mode": "appropriate"}.
ConstantSpecification cs_from_json(const json& doc, Dialect d);
json to_json(const ConstantSpecification& cs);

json read_json_file(const std::string& path);

}  // namespace cjl
