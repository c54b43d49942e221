#include "jetvariant/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jetvariant/error.hpp"
#include "jetvariant/parser.hpp"

namespace jetvariant {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& origin, const std::string& what) {
  fail(ErrorKind::SchemaError, origin + ": " + what);
}

std::vector<std::string> string_list(const json& j, const std::string& origin,
                                     const std::string& key) {
  if (!j.is_array()) schema_fail(origin, key + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) schema_fail(origin, key + " must contain strings only");
    out.push_back(e.get<std::string>());
  }
  return out;
}

RatFun parse_in(const JetContext& ctx, const std::string& src, const std::string& origin,
                const std::string& where) {
  try {
    return parse_ratfun(src, ctx);
  } catch (const EngineError& e) {
    fail(e.kind(), origin + ": in " + where + ": " + e.what(), e.position());
  }
}

std::vector<std::string> split_components(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ';') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

VarId resolve_or_fail(const JetContext& ctx, const std::string& name, const std::string& origin,
                      const std::string& where) {
  auto v = ctx.resolve(name);
  if (!v) fail(ErrorKind::UnknownVariable, origin + ": in " + where + ": '" + name + "'");
  return *v;
}

Scenario build(const json& root, const std::string& origin) {
  if (!root.is_object()) schema_fail(origin, "top level must be an object");
  if (!root.contains("context")) schema_fail(origin, "missing context");
  const json& c = root["context"];
  if (!c.is_object() || !c.contains("independents") || !c.contains("dependents"))
    schema_fail(origin, "context needs independents and dependents");

  std::vector<AliasSpec> aliases;
  std::vector<std::string> indeps = string_list(c["independents"], origin, "context.independents");
  std::vector<std::string> deps = string_list(c["dependents"], origin, "context.dependents");
  if (c.contains("aliases")) {
    if (!c["aliases"].is_array()) schema_fail(origin, "context.aliases must be an array");
    for (const auto& a : c["aliases"]) {
      AliasSpec spec;
      if (!a.contains("name")) schema_fail(origin, "alias needs a name");
      spec.base = a["name"].get<std::string>();
      spec.dependent = a.value("dependent", 1) - 1;
      spec.direction = a.value("direction", 1) - 1;
      std::string style = a.value("style", "suffix");
      if (style == "suffix")
        spec.style = AliasSpec::Style::Suffix;
      else if (style == "underscore")
        spec.style = AliasSpec::Style::Underscore;
      else
        schema_fail(origin, "alias style must be suffix or underscore");
      if (spec.dependent < 0 || spec.dependent >= static_cast<int>(deps.size()) ||
          spec.direction < 0 || spec.direction >= static_cast<int>(indeps.size()))
        schema_fail(origin, "alias dependent/direction out of range");
      aliases.push_back(std::move(spec));
    }
  }

  Scenario sc{.name = root.value("name", "unnamed"),
              .ctx = JetContext(indeps, deps, aliases),
              .algebra = {},
              .equation = std::nullopt,
              .expressions = {},
              .sampling = {}};
  const JetContext& ctx = sc.ctx;

  if (root.contains("fields")) {
    if (!root["fields"].is_array()) schema_fail(origin, "fields must be an array");
    for (const auto& f : root["fields"]) {
      PointVectorField X;
      X.name = f.value("name", "field" + std::to_string(sc.algebra.fields.size() + 1));
      if (!f.contains("alpha") || !f.contains("beta"))
        schema_fail(origin, "field '" + X.name + "' needs alpha and beta arrays");
      for (const auto& s : string_list(f["alpha"], origin, "fields.alpha"))
        X.alpha.push_back(parse_in(ctx, s, origin, "field '" + X.name + "' alpha"));
      for (const auto& s : string_list(f["beta"], origin, "fields.beta"))
        X.beta.push_back(parse_in(ctx, s, origin, "field '" + X.name + "' beta"));
      try {
        X.validate(ctx);
      } catch (const EngineError& e) {
        schema_fail(origin, e.what());
      }
      sc.algebra.fields.push_back(std::move(X));
    }
  }

  if (root.contains("families")) {
    if (!root["families"].is_array()) schema_fail(origin, "families must be an array");
    for (const auto& f : root["families"]) {
      FamilySpec fam;
      std::string pattern = f.value("pattern", "");
      const json& params = f.contains("params") ? f["params"] : json::object();
      fam.label = f.value("name", pattern);
      if (pattern == "coef_powers") {
        fam.pattern = FamilySpec::Pattern::CoefPowers;
        if (!params.contains("function_of") || !params.contains("direction"))
          schema_fail(origin, "coef_powers family needs function_of and direction");
        for (const auto& nm : string_list(params["function_of"], origin, "family.function_of")) {
          VarId v = resolve_or_fail(ctx, nm, origin, "family function_of");
          if (v.order() >= 1)
            schema_fail(origin, "family coefficients must depend on base variables only");
          fam.function_of.push_back(v);
        }
        fam.direction = resolve_or_fail(ctx, params["direction"].get<std::string>(), origin,
                                        "family direction");
        if (fam.direction.order() >= 1)
          schema_fail(origin, "family direction must be a base variable");
        fam.min_degree = params.value("min_degree", 0);
      } else if (pattern == "hamiltonian") {
        fam.pattern = FamilySpec::Pattern::Hamiltonian;
        fam.min_degree = params.value("min_degree", 2);
      } else {
        schema_fail(origin, "unknown family pattern '" + pattern + "'");
      }
      sc.algebra.families.push_back(std::move(fam));
    }
  }

  bool point_equation = root.value("point_equation", false);
  if (root.contains("equation")) {
    if (!root["equation"].is_array()) schema_fail(origin, "equation must be an array of rules");
    std::vector<SolvedRule> rules;
    for (const auto& r : root["equation"]) {
      if (!r.contains("lead") || !r.contains("rhs"))
        schema_fail(origin, "equation rules need lead and rhs");
      std::string lead_name = r["lead"].get<std::string>();
      VarId lead = resolve_or_fail(ctx, lead_name, origin, "equation lead");
      if (!lead.is_jet())
        fail(ErrorKind::OrthonomicityError, origin + ": lead '" + lead_name + "' is not a jet");
      RatFun rhs = parse_in(ctx, r["rhs"].get<std::string>(), origin, "equation rhs");
      rules.push_back({lead, std::move(rhs)});
    }
    sc.equation.emplace(std::move(rules), ctx, point_equation);
  } else if (point_equation) {
    schema_fail(origin, "point_equation set without equation rules");
  }

  if (root.contains("expressions")) {
    if (!root["expressions"].is_object()) schema_fail(origin, "expressions must be an object");
    for (const auto& [key, val] : root["expressions"].items()) {
      if (!val.is_string()) schema_fail(origin, "expression '" + key + "' must be a string");
      std::vector<RatFun> comps;
      for (const auto& piece : split_components(val.get<std::string>()))
        comps.push_back(parse_in(ctx, piece, origin, "expression '" + key + "'"));
      sc.expressions.emplace(key, std::move(comps));
    }
  }

  if (root.contains("sampling")) {
    const json& s = root["sampling"];
    sc.sampling.seed = s.value("seed", 1u);
    if (s.contains("range")) {
      if (!s["range"].is_array() || s["range"].size() != 2)
        schema_fail(origin, "sampling.range must be [lo, hi]");
      sc.sampling.lo = s["range"][0].get<long>();
      sc.sampling.hi = s["range"][1].get<long>();
      if (sc.sampling.lo > sc.sampling.hi) schema_fail(origin, "sampling.range is empty");
    }
    if (s.contains("exclude"))
      for (const auto& e : string_list(s["exclude"], origin, "sampling.exclude"))
        sc.sampling.exclude.push_back(parse_in(ctx, e, origin, "sampling.exclude"));
    sc.sampling.retries = s.value("retries", 100);
  }

  return sc;
}

}  // namespace

const std::vector<RatFun>& Scenario::expression(const std::string& key) const {
  auto it = expressions.find(key);
  if (it == expressions.end())
    fail(ErrorKind::SchemaError, "scenario has no expression named '" + key + "'");
  return it->second;
}

RatFun Scenario::scalar_expression(const std::string& key) const {
  const auto& comps = expression(key);
  if (comps.size() != 1)
    fail(ErrorKind::SchemaError, "expression '" + key + "' is not a scalar");
  return comps[0];
}

Derivation Scenario::derivation_expression(const std::string& key) const {
  const auto& comps = expression(key);
  if (comps.size() != static_cast<size_t>(ctx.n()))
    fail(ErrorKind::SchemaError, "expression '" + key + "' does not have n components");
  Derivation d;
  d.name = key;
  d.coeffs = comps;
  return d;
}

Scenario load_scenario_text(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::SchemaError, origin + ": " + e.what());
  }
  try {
    return build(root, origin);
  } catch (const json::exception& e) {
    fail(ErrorKind::SchemaError, origin + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scenario_text(buf.str(), path);
}

}  // namespace jetvariant
