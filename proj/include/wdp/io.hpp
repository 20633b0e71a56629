// JSON and text forms of classes, toric systems and reports.
#pragma once

#include <string>

#include "json.hpp"
#include "wdp/classify.hpp"

namespace wdp {

using Json = nlohmann::ordered_json;

Json to_json(const DivisorClass& d);
/// Accepts a coefficient array or a class expression.
DivisorClass class_from_json(const PicardLattice& l, const Json& j);

Json to_json(const ToricSystem& a);
/// {"surface": label, "system": [...]}; `surface_override` wins over the file.
ToricSystem system_from_json(const Json& j, const Registry& reg, const std::string& surface_override = {});
/// JSON document, or text: the surface label on the first line and one class per line.
ToricSystem load_system(const std::string& path, const Registry& reg, const std::string& surface_override = {});
ToricSystem parse_system_text(const std::string& text, const Registry& reg, const std::string& surface_override = {});

Json to_json(const Surface& s);
Json to_json(const Reduction& r);
Json to_json(const ClassVerdict& v);
Json to_json(const Verdict& v);
Json to_json(const AugmentChain& c);
Json to_json(const AugmentVerdict& v);
Json to_json(const Report& r);
Json to_json(const SearchReport& r);

std::string to_text(const Report& r);

}  // namespace wdp
