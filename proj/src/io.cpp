#include "formcalc/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "formcalc/error.hpp"
#include "formcalc/parser.hpp"

namespace formcalc {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

long integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + " must be an integer");
  return j.get<long>();
}

double bound(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_number(j.get<std::string>());
    } catch (const Error& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  throw InputError(where + " must be a number or a constant expression");
}

std::vector<std::string> default_parameters(std::size_t k) {
  switch (k) {
    case 0: return {};
    case 1: return {"t"};
    case 2: return {"u", "v"};
    case 3: return {"u", "v", "w"};
    default: {
      std::vector<std::string> names;
      for (std::size_t i = 1; i <= k; ++i) names.push_back("p" + std::to_string(i));
      return names;
    }
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Chain chain_from_json(std::string_view text) {
  const json doc = parse_json(text);
  const long ambient = integer(field(doc, "ambient", "chain"), "chain ambient");
  const json& cells = field(doc, "cells", "chain");
  if (!cells.is_array()) throw InputError("chain cells must be an array");
  Chain chain;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const json& c = cells[i];
    const std::string where = "cell " + std::to_string(i);
    const json& box = field(c, "box", where);
    if (!box.is_array()) throw InputError(where + ": box must be an array of [a, b] pairs");
    std::vector<Interval> intervals;
    for (const auto& iv : box) {
      if (!iv.is_array() || iv.size() != 2) throw InputError(where + ": box entries must be [a, b] pairs");
      intervals.push_back({bound(iv[0], where + " box"), bound(iv[1], where + " box")});
    }
    std::vector<std::string> params = default_parameters(intervals.size());
    if (c.contains("params")) params = c.at("params").get<std::vector<std::string>>();
    if (params.size() != intervals.size()) throw InputError(where + ": params and box differ in length");
    const json& map = field(c, "map", where);
    if (!map.is_array() || static_cast<long>(map.size()) != ambient) {
      throw InputError(where + ": map must list " + std::to_string(ambient) + " component expressions");
    }
    std::vector<ScalarExpr> components;
    for (const auto& e : map) {
      if (!e.is_string()) throw InputError(where + ": map components must be strings");
      components.push_back(parse_scalar(e.get<std::string>(), params));
    }
    const int weight = c.contains("weight") ? static_cast<int>(integer(c.at("weight"), where + " weight")) : 1;
    const int orientation = c.contains("orientation") ? static_cast<int>(integer(c.at("orientation"), where + " orientation")) : 1;
    try {
      chain.add(weight, Cell(std::move(intervals), SmoothMap(static_cast<int>(params.size()), std::move(components)), orientation));
    } catch (const DimensionError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return chain;
}

Chain load_chain(const std::string& path) { return chain_from_json(read_file(path)); }

Nerve nerve_from_json(std::string_view text) {
  const json doc = parse_json(text);
  const long vertices = integer(field(doc, "vertices", "nerve"), "nerve vertices");
  const json& simplices = field(doc, "simplices", "nerve");
  if (!simplices.is_array()) throw InputError("nerve simplices must be an array");
  std::vector<Simplex> list;
  for (const auto& s : simplices) {
    if (!s.is_array()) throw InputError("each simplex must be an array of vertex indices");
    Simplex simplex;
    for (const auto& v : s) simplex.push_back(static_cast<int>(integer(v, "simplex vertex")));
    list.push_back(std::move(simplex));
  }
  return Nerve(static_cast<int>(vertices), list);
}

Nerve load_nerve(const std::string& path) { return nerve_from_json(read_file(path)); }

ExactSequenceProblem problem_from_json(std::string_view text) {
  const json doc = parse_json(text);
  auto read = [](const json& list, const char* what) {
    if (!list.is_array()) throw InputError(std::string(what) + " must be an array");
    std::vector<std::optional<long>> out;
    for (const auto& v : list) {
      if (v.is_null()) {
        out.emplace_back();
      } else {
        out.emplace_back(integer(v, what));
      }
    }
    return out;
  };
  ExactSequenceProblem p;
  p.slots = read(field(doc, "slots", "problem"), "slots");
  if (doc.contains("ranks")) {
    p.ranks = read(doc.at("ranks"), "ranks");
  } else if (!p.slots.empty()) {
    p.ranks.assign(p.slots.size() - 1, std::nullopt);
  }
  return p;
}

ExactSequenceProblem load_problem(const std::string& path) { return problem_from_json(read_file(path)); }

SmoothMap map_from_text(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    const json doc = parse_json(text);
    const json& m = field(doc, "map", "map file");
    if (!m.is_string()) throw InputError("map file: \"map\" must be a string");
    return parse_map(m.get<std::string>());
  }
  return parse_map(text);
}

SmoothMap load_map(const std::string& path) { return map_from_text(read_file(path)); }

}  // namespace formcalc
