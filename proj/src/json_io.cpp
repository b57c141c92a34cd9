#include "cantor/json_io.hpp"

#include "cantor/errors.hpp"

namespace cantor {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& expected) { throw ParseError(what, 1, 1, expected); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'", key);
  return j.at(key);
}

std::string text(const Json& j, const char* expected) {
  if (!j.is_string()) bad("expected a string", expected);
  return j.get<std::string>();
}

NodeKind kind_from(const std::string& s) {
  if (s == "leaf") return NodeKind::Leaf;
  if (s == "union") return NodeKind::Union;
  if (s == "inter") return NodeKind::Intersection;
  if (s == "compl") return NodeKind::Complement;
  bad("unknown node kind '" + s + "'", "leaf, union, inter or compl");
}

}  // namespace

Json to_json(const Dyadic& d) { return d.str(); }

Dyadic dyadic_from_json(const Json& j) { return Dyadic::parse(text(j, "num/2^exp")); }

Json to_json(const ClopenSet& s) {
  Json out = Json::array();
  for (const auto& g : s.generators()) out.push_back(g.str());
  return out;
}

ClopenSet clopen_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of bit strings", "array");
  std::vector<Bits> gens;
  for (const auto& g : j) gens.emplace_back(text(g, "bit string"));
  return prefix_free_normalize(gens);
}

Json to_json(const StepFunction& f) {
  Json cells = Json::array();
  for (const auto& c : f.cells()) cells.push_back(Json::array({c.prefix.str(), c.value.str()}));
  return Json{{"depth", f.depth()}, {"cells", cells}};
}

StepFunction step_function_from_json(const Json& j) {
  const Json& cells = field(j, "cells");
  if (!cells.is_array()) bad("cells must be an array", "array");
  std::vector<StepFunction::Cell> out;
  for (const auto& c : cells) {
    if (!c.is_array() || c.size() != 2) bad("a cell is [prefix, value]", "[prefix, value]");
    out.push_back({Bits(text(c[0], "bit string")), dyadic_from_json(c[1])});
  }
  StepFunction f = StepFunction::from_cells(out);
  if (j.contains("depth") && (!j["depth"].is_number_unsigned() || j["depth"].get<std::size_t>() != f.depth())) {
    bad("declared depth does not match the cells", "depth " + std::to_string(f.depth()));
  }
  return f;
}

Json to_json(const L1Name& n) {
  Json terms = Json::array();
  for (const auto& t : n.sequence().terms()) terms.push_back(to_json(t));
  Json norms = Json::array();
  for (const auto& d : n.norms()) norms.push_back(to_json(d));
  return Json{{"terms", terms}, {"stationary", n.stationary()}, {"norms", norms}};
}

L1Name name_from_json(const Json& j) {
  const Json& terms = field(j, "terms");
  if (!terms.is_array() || terms.empty()) bad("terms must be a nonempty array", "array");
  std::vector<StepFunction> seq;
  for (const auto& t : terms) seq.push_back(step_function_from_json(t));
  const bool stationary = j.contains("stationary") && j["stationary"].is_boolean() && j["stationary"].get<bool>();
  return certify_rapid_cauchy(std::move(seq), stationary);
}

Json to_json(const Code& c) {
  Json out{{"kind", kind_name(c.kind())}};
  if (c.rank()) out["rank"] = c.rank()->str();
  if (c.is_leaf()) {
    out["label"] = to_json(c.label());
    return out;
  }
  Json children = Json::array();
  for (const auto& ch : c.children()) children.push_back(Json{{"index", ch.index}, {"code", to_json(ch.code)}});
  out["children"] = children;
  return out;
}

Code code_from_json(const Json& j) {
  const NodeKind kind = kind_from(text(field(j, "kind"), "node kind"));
  std::optional<Ordinal> rank;
  if (j.contains("rank")) rank = Ordinal::parse(text(j["rank"], "ordinal"));
  if (kind == NodeKind::Leaf) return Code::leaf(clopen_from_json(field(j, "label")), rank);
  std::vector<CodeChild> children;
  for (const auto& ch : field(j, "children")) {
    const Json& idx = field(ch, "index");
    if (!idx.is_number_unsigned()) bad("child index must be a natural number", "index");
    children.push_back({idx.get<std::size_t>(), code_from_json(field(ch, "code"))});
  }
  try {
    return Code::node(kind, std::move(children), rank);
  } catch (const std::invalid_argument& e) {
    bad(e.what(), "well-formed children");
  }
}

Json to_json(const Estimate& e) {
  return Json{{"value", to_json(e.value)},    {"sum", to_json(e.sum)},   {"trials", e.trials},
              {"captured", e.captured},        {"point", e.point},        {"target", e.target},
              {"value_decimal", e.value.to_double()}};
}

Json to_json(const MeasureDecomposition& d) {
  Json out = Json::object();
  for (const auto& [a, n] : d) out[address_str(a)] = to_json(n);
  return out;
}

Json to_json(const RapidGDelta& t, std::size_t levels, std::size_t stages) {
  Json out{{"name", t.name()}};
  Json ls = Json::array();
  for (std::size_t n = 0; n < levels; ++n) {
    Json st = Json::array();
    Json budgets = Json::array();
    for (std::size_t s = 0; s < stages; ++s) {
      const ClopenSet c = t.stage(n, s);
      st.push_back(to_json(c));
      budgets.push_back(to_json(mu_I(c)));
    }
    ls.push_back(Json{{"level", n}, {"stages", st}, {"budgets", budgets}});
  }
  out["levels"] = ls;
  return out;
}

std::vector<RapidGDelta> tests_from_json(const Json& j) {
  const Json& tests = field(j, "tests");
  if (!tests.is_array()) bad("tests must be an array", "array");
  std::vector<RapidGDelta> out;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const Json& t = tests[i];
    std::string name = t.contains("name") ? text(t["name"], "name") : "test" + std::to_string(i);
    std::vector<std::vector<ClopenSet>> levels;
    for (const auto& level : field(t, "levels")) {
      std::vector<ClopenSet> stages;
      for (const auto& stage : level) stages.push_back(clopen_from_json(stage));
      if (stages.empty()) stages.emplace_back();
      levels.push_back(std::move(stages));
    }
    out.push_back(RapidGDelta::from_stages(std::move(name), std::move(levels)));
  }
  return out;
}

Json to_json(const RegularityApprox& r, std::size_t levels, std::size_t stages) {
  auto dump = [&](const OpenSequence& seq) {
    Json out = Json::array();
    for (std::size_t n = 0; n < levels; ++n) {
      Json st = Json::array();
      const StagedOpenSet level = seq(n);
      for (std::size_t s = 0; s < stages; ++s) st.push_back(to_json(level.stage(s)));
      out.push_back(st);
    }
    return out;
  };
  return Json{{"A", dump(r.a)}, {"C", dump(r.c)}};
}

}  // namespace cantor
