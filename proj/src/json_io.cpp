#include "shiftsim/json_io.hpp"

#include <fstream>

#include <json.hpp>

namespace shiftsim {

namespace {

using nlohmann::json;

json point_to_json(const Point& q) { return json::array({q.ray, q.index}); }

Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw DomainError("point must be a [ray, index] pair");
  return Point{j[0].get<Int>(), j[1].get<Int>()};
}

json epperm_to_json(const EPPerm& g) {
  return json{{"p", g.period()}, {"T", g.threshold()}, {"table", g.table()}};
}

EPPerm epperm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("T") || !j.contains("table"))
    throw DomainError("permutation needs fields p, T, table");
  if (!j["p"].is_number_integer() || !j["T"].is_number_integer() || !j["table"].is_array())
    throw DomainError("malformed permutation fields");
  std::vector<Int> table;
  for (const auto& v : j["table"]) {
    if (!v.is_number_integer()) throw DomainError("table entries must be integers");
    table.push_back(v.get<Int>());
  }
  return EPPerm::from_periodic(j["p"].get<Int>(), j["T"].get<Int>(), std::move(table));
}

json triple_to_json(const Triple& t) {
  json minus = json::array(), plus = json::array(), sigma = json::array(), gs = json::array();
  for (const Point& q : t.minus().points()) minus.push_back(point_to_json(q));
  for (const Point& q : t.plus().points()) plus.push_back(point_to_json(q));
  for (const auto& [from, to] : t.sigma().pairs())
    sigma.push_back(json::array({point_to_json(from), point_to_json(to)}));
  for (const EPPerm& g : t.components()) gs.push_back(epperm_to_json(g));
  return json{{"n", t.ray_count()}, {"class", t.group_class().name()},
              {"minus", minus},     {"sigma", sigma},
              {"gs", gs},           {"plus", plus}};
}

Triple triple_from_json(const json& j) {
  for (const char* field : {"n", "class", "minus", "sigma", "gs", "plus"})
    if (!j.contains(field)) throw DomainError(std::string("triple needs field ") + field);
  Int n = j["n"].get<Int>();
  GroupClass cls = GroupClass::parse(j["class"].get<std::string>());
  std::vector<Point> minus, plus;
  for (const auto& q : j["minus"]) minus.push_back(point_from_json(q));
  for (const auto& q : j["plus"]) plus.push_back(point_from_json(q));
  std::vector<std::pair<Point, Point>> pairs;
  for (const auto& pr : j["sigma"]) {
    if (!pr.is_array() || pr.size() != 2) throw DomainError("sigma entries must be point pairs");
    pairs.emplace_back(point_from_json(pr[0]), point_from_json(pr[1]));
  }
  std::vector<EPPerm> gs;
  for (const auto& g : j["gs"]) gs.push_back(epperm_from_json(g));
  FiniteSet plus_set(n, std::move(plus));
  FiniteSet minus_set(n, std::move(minus));
  return Triple(n, minus_set, SigmaMap(plus_set, minus_set, std::move(pairs)), std::move(gs),
                plus_set, cls);
}

json element_to_json(const HoughtonElement& e) {
  return json{{"n", e.ray_count()}, {"flat", epperm_to_json(e.flat())}};
}

HoughtonElement element_from_json(const json& j) {
  if (!j.contains("n") || !j.contains("flat"))
    throw DomainError("element needs fields n and flat");
  return HoughtonElement(j["n"].get<Int>(), epperm_from_json(j["flat"]));
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw DomainError("invalid JSON");
  return j;
}

}  // namespace

std::string to_json_string(const EPPerm& g, int indent) {
  return epperm_to_json(g).dump(indent);
}
std::string to_json_string(const Triple& t, int indent) {
  return triple_to_json(t).dump(indent);
}
std::string to_json_string(const HoughtonElement& e, int indent) {
  return element_to_json(e).dump(indent);
}

EPPerm epperm_from_json_string(const std::string& text) {
  return epperm_from_json(parse_text(text));
}
Triple triple_from_json_string(const std::string& text) {
  return triple_from_json(parse_text(text));
}
HoughtonElement element_from_json_string(const std::string& text) {
  return element_from_json(parse_text(text));
}

JsonValue value_from_json_string(const std::string& text) {
  json j = parse_text(text);
  if (j.contains("gs")) return triple_from_json(j);
  if (j.contains("flat")) return element_from_json(j);
  if (j.contains("table")) return epperm_from_json(j);
  throw DomainError("JSON value is neither a permutation, a triple, nor an element");
}

JsonValue value_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return value_from_json_string(text);
}

}  // namespace shiftsim
