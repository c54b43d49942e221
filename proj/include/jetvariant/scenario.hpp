#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetvariant/equation.hpp"
#include "jetvariant/invariants.hpp"
#include "jetvariant/orbitdim.hpp"

namespace jetvariant {

/// One loaded scenario file: a chart, a Lie algebra (fields and families), an
/// optional solved equation, named expressions and a sampling policy.
///
/// Named expressions are ";"-separated component lists: one component is a
/// scalar, n components a derivation in the D_i basis, n+m components a point
/// map (x images then u images).
struct Scenario {
  std::string name;
  JetContext ctx;
  LieAlgebraSpec algebra;
  std::optional<SolvedEquation> equation;
  std::map<std::string, std::vector<RatFun>> expressions;
  SampleSpec sampling;

  const std::vector<RatFun>& expression(const std::string& key) const;
  RatFun scalar_expression(const std::string& key) const;
  Derivation derivation_expression(const std::string& key) const;

  const SolvedEquation* equation_ptr() const { return equation ? &*equation : nullptr; }
};

/// Loads and fully validates a scenario. Errors: IoError, SchemaError,
/// SyntaxError (with the offending key in the message), OrthonomicityError.
Scenario load_scenario(const std::string& path);

/// Same, from a JSON text (used by tests).
Scenario load_scenario_text(const std::string& text, const std::string& origin = "<memory>");

}  // namespace jetvariant
