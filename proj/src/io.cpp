#include "wdp/io.hpp"

#include <fstream>
#include <sstream>

namespace wdp {

Json to_json(const DivisorClass& d) {
  return Json::array_t(d.coeffs().begin(), d.coeffs().end());
}

DivisorClass class_from_json(const PicardLattice& l, const Json& j) {
  if (j.is_string()) return parse_class(l, j.get<std::string>());
  if (!j.is_array()) throw std::invalid_argument("class must be an array or a string");
  const auto v = j.get<std::vector<std::int64_t>>();
  if (static_cast<int>(v.size()) != l.rank())
    throw std::invalid_argument("class vector has length " + std::to_string(v.size()) + ", expected " +
                                std::to_string(l.rank()));
  return DivisorClass(l, std::span<const std::int64_t>(v));
}

Json to_json(const ToricSystem& a) {
  Json sys = Json::array();
  for (const auto& e : a.entries()) sys.push_back(e.pretty());
  Json vec = Json::array();
  for (const auto& e : a.entries()) vec.push_back(to_json(e));
  return {{"surface", a.surface()->name()}, {"system", sys}, {"vectors", vec}};
}

ToricSystem system_from_json(const Json& j, const Registry& reg, const std::string& surface_override) {
  std::string label = surface_override;
  if (label.empty()) {
    if (!j.contains("surface")) throw std::invalid_argument("system file has no surface label");
    label = j.at("surface").get<std::string>();
  }
  const auto s = reg.get(label);
  const Json& entries = j.contains("vectors") ? j.at("vectors") : j.at("system");
  std::vector<DivisorClass> e;
  for (const auto& x : entries) e.push_back(class_from_json(s->lattice(), x));
  return ToricSystem(s, std::move(e));
}

ToricSystem parse_system_text(const std::string& text, const Registry& reg, const std::string& surface_override) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return system_from_json(Json::parse(text), reg, surface_override);
  std::istringstream in(text);
  std::string line, label;
  std::vector<std::string> classes;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    if (label.empty())
      label = line;
    else
      classes.push_back(line);
  }
  if (!surface_override.empty()) {
    if (!label.empty()) classes.insert(classes.begin(), label);
    label = surface_override;
  }
  if (label.empty()) throw std::invalid_argument("empty system file");
  return make_system(reg.get(label), classes);
}

ToricSystem load_system(const std::string& path, const Registry& reg, const std::string& surface_override) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_system_text(ss.str(), reg, surface_override);
}

namespace {

Json pretty_list(const std::vector<DivisorClass>& v) {
  Json out = Json::array();
  for (const auto& d : v) out.push_back(d.pretty());
  return out;
}

}  // namespace

Json to_json(const Surface& s) {
  Json j;
  j["name"] = s.name();
  j["lattice"] = s.lattice().name();
  j["degree"] = s.degree();
  j["dynkin"] = s.dynkin_label();
  j["r_irr"] = pretty_list(s.r_irr());
  j["r_eff"] = pretty_list(s.r_eff());
  j["r_slo"] = pretty_list(s.r_slo());
  j["i_irr"] = pretty_list(s.i_irr());
  j["lines"] = s.i_irr().size();
  return j;
}

Json to_json(const Reduction& r) {
  return {{"bites", pretty_list(r.bites)},
          {"residual", r.residual.pretty()},
          {"kind", to_string(r.kind)},
          {"effective", r.effective}};
}

Json to_json(const ClassVerdict& v) {
  Json j{{"value", v.value}, {"rule", v.rule}};
  if (v.tested) j["tested"] = v.tested->pretty();
  if (v.reduction) j["reduction"] = to_json(*v.reduction);
  return j;
}

Json to_json(const Verdict& v) {
  Json j{{"value", v.value}, {"path", v.path}};
  if (v.witness) {
    j["witness"] = {{"k", v.witness->k},
                    {"l", v.witness->l},
                    {"segment", v.witness->segment.pretty()},
                    {"reason", v.witness->reason},
                    {"detail", to_json(v.witness->detail)}};
  }
  return j;
}

Json to_json(const AugmentChain& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) steps.push_back(describe(s));
  return {{"base", to_json(c.base)}, {"steps", steps}};
}

Json to_json(const AugmentVerdict& v) {
  Json j{{"value", v.value}, {"exhausted", v.exhausted}, {"states", v.states}};
  if (v.chain) j["chain"] = to_json(*v.chain);
  return j;
}

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"title", r.title}, {"pass", r.pass()}, {"complete", r.complete}, {"checks", checks}};
}

Json to_json(const SearchReport& r) {
  Json hits = Json::array();
  for (const auto& h : r.hits) hits.push_back(to_json(h));
  return {{"systems", r.systems}, {"complete", r.complete}, {"next_pattern", r.next_pattern}, {"hits", hits}};
}

std::string to_text(const Report& r) {
  std::string out = r.title + ": " + (r.pass() ? "pass" : "FAIL") + (r.complete ? "" : " (incomplete)") + "\n";
  for (const auto& c : r.checks) {
    out += std::string("  ") + (c.pass ? "ok   " : "FAIL ") + c.name;
    if (!c.detail.empty()) out += "  " + c.detail;
    out += "\n";
  }
  return out;
}

}  // namespace wdp
