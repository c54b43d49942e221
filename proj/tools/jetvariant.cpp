// jetvariant: exact jet-calculus CLI for differential invariants of Lie
// algebra and pseudogroup actions.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include "jetvariant/corpus.hpp"
#include "jetvariant/parser.hpp"
#include "jetvariant/scenario.hpp"

using namespace jetvariant;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInputError = 2;

#ifndef JETVARIANT_DEFAULT_DATA_DIR
#define JETVARIANT_DEFAULT_DATA_DIR "data/corpus"
#endif

struct CommonOpts {
  std::string scenario_path;
  bool json_output = false;
};

json report_skeleton(const std::string& command) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  return j;
}

void emit(const json& j, bool json_output, const std::string& text) {
  if (json_output)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

Scenario load(const CommonOpts& o) { return load_scenario(o.scenario_path); }

/// Resolves --expr values: a named scenario expression or an inline
/// expression string parsed in the scenario context.
RatFun resolve_scalar(const Scenario& sc, const std::string& key) {
  if (sc.expressions.count(key)) return sc.scalar_expression(key);
  return parse_ratfun(key, sc.ctx);
}

Derivation resolve_derivation(const Scenario& sc, const std::string& key) {
  if (sc.expressions.count(key)) return sc.derivation_expression(key);
  Derivation d;
  d.name = key;
  std::string cur;
  for (char ch : key + ";") {
    if (ch == ';') {
      d.coeffs.push_back(parse_ratfun(cur, sc.ctx));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (d.coeffs.size() != static_cast<size_t>(sc.ctx.n()))
    fail(ErrorKind::SchemaError, "derivation needs n ;-separated components");
  return d;
}

int cmd_check(const CommonOpts& o, const std::string& invariant_name, int order,
              const std::string& first_integral_name, bool symmetries,
              const std::string& derivation_name, const std::vector<std::string>& probes) {
  Scenario sc = load(o);
  json rep = report_skeleton("check");
  rep["scenario"] = sc.name;
  json results = json::array();
  bool all_pass = true;
  std::string text;

  if (!invariant_name.empty()) {
    RatFun f = resolve_scalar(sc, invariant_name);
    int k = order > 0 ? order : f.max_jet_order(sc.ctx);
    auto res = is_invariant(sc.algebra, f, sc.equation_ptr(), k, sc.ctx);
    all_pass &= res.invariant;
    json r;
    r["check"] = "invariant";
    r["target"] = invariant_name;
    r["order"] = k;
    r["pass"] = res.invariant;
    if (!res.invariant) {
      r["witness_generator"] = res.witness->generator;
      r["residue"] = print_ratfun(res.witness->residue, sc.ctx);
    }
    results.push_back(r);
    text += std::string(res.invariant ? "PASS" : "FAIL") + " invariant " + invariant_name +
            " at order " + std::to_string(k);
    if (!res.invariant) text += "  [residue under " + res.witness->generator + "]";
    text += "\n";
  }

  if (!first_integral_name.empty()) {
    if (!sc.equation) fail(ErrorKind::SchemaError, "scenario has no equation");
    RatFun f = resolve_scalar(sc, first_integral_name);
    bool ok = check_first_integral(f, *sc.equation, sc.ctx);
    all_pass &= ok;
    json r;
    r["check"] = "first_integral";
    r["target"] = first_integral_name;
    r["pass"] = ok;
    results.push_back(r);
    text += std::string(ok ? "PASS" : "FAIL") + " first integral " + first_integral_name + "\n";
  }

  if (symmetries) {
    if (!sc.equation) fail(ErrorKind::SchemaError, "scenario has no equation");
    for (const auto& X :
         instantiate_algebra(sc.algebra, sc.equation->max_order(), sc.ctx)) {
      bool ok = is_symmetry(X, *sc.equation, sc.ctx);
      all_pass &= ok;
      json r;
      r["check"] = "symmetry";
      r["target"] = X.name;
      r["pass"] = ok;
      results.push_back(r);
      text += std::string(ok ? "PASS" : "FAIL") + " symmetry " + X.name + "\n";
    }
  }

  if (!derivation_name.empty()) {
    Derivation d = resolve_derivation(sc, derivation_name);
    std::vector<RatFun> probe_fns;
    int maxorder = 1;
    for (const auto& p : probes) {
      probe_fns.push_back(resolve_scalar(sc, p));
      maxorder = std::max(maxorder, probe_fns.back().max_jet_order(sc.ctx));
    }
    int k = order > 0 ? order : maxorder;
    auto res = verify_invariant_derivation(d, sc.algebra, probe_fns, sc.equation_ptr(), k, sc.ctx);
    all_pass &= res.ok;
    json r;
    r["check"] = "invariant_derivation";
    r["target"] = derivation_name;
    r["pass"] = res.ok;
    if (!res.ok) r["detail"] = res.detail;
    results.push_back(r);
    text += std::string(res.ok ? "PASS" : "FAIL") + " invariant derivation " + derivation_name +
            "\n";
  }

  rep["results"] = results;
  rep["pass"] = all_pass;
  emit(rep, o.json_output, text);
  return all_pass ? kExitPass : kExitFail;
}

int cmd_find(const CommonOpts& o, int order, int degree, const std::string& den) {
  Scenario sc = load(o);
  Ansatz a;
  a.order = order;
  a.degree = degree;
  a.denominator = den.empty() ? RatFun::one() : resolve_scalar(sc, den);
  auto basis = find_invariants_linear(sc.algebra, a, sc.equation_ptr(), sc.ctx);
  json rep = report_skeleton("find");
  rep["scenario"] = sc.name;
  rep["order"] = order;
  rep["num_degree"] = degree;
  json jb = json::array();
  std::string text = "basis dimension " + std::to_string(basis.size()) + "\n";
  for (const auto& f : basis) {
    std::string s = print_ratfun(f, sc.ctx);
    jb.push_back(s);
    text += "  " + s + "\n";
  }
  rep["basis"] = jb;
  emit(rep, o.json_output, text);
  return kExitPass;
}

int cmd_prolong(const CommonOpts& o, const std::string& field_name, const std::string& map_name,
                int order) {
  Scenario sc = load(o);
  json rep = report_skeleton("prolong");
  rep["scenario"] = sc.name;
  std::string text;
  if (!field_name.empty()) {
    const PointVectorField* X = nullptr;
    for (const auto& f : sc.algebra.fields)
      if (f.name == field_name) X = &f;
    if (!X) fail(ErrorKind::SchemaError, "no field named '" + field_name + "'");
    ProlongedVectorField Xp = prolong_field(*X, order, sc.ctx);
    json coeffs;
    for (int i = 0; i < sc.ctx.n(); ++i) {
      std::string name = sc.ctx.name_of(sc.ctx.independent(i));
      std::string val = print_ratfun(Xp.base_coefficient(i), sc.ctx);
      coeffs[name] = val;
      text += name + ": " + val + "\n";
    }
    for (const auto& [v, c] : Xp.jet_coefficients()) {
      std::string name = sc.ctx.name_of(v);
      std::string val = print_ratfun(c, sc.ctx);
      coeffs[name] = val;
      text += name + ": " + val + "\n";
    }
    rep["field"] = field_name;
    rep["coefficients"] = coeffs;
  } else if (!map_name.empty()) {
    const auto& comps = sc.expression(map_name);
    if (comps.size() != static_cast<size_t>(sc.ctx.n() + sc.ctx.m()))
      fail(ErrorKind::SchemaError, "expression '" + map_name + "' is not a point map");
    std::vector<RatFun> xs(comps.begin(), comps.begin() + sc.ctx.n());
    std::vector<RatFun> us(comps.begin() + sc.ctx.n(), comps.end());
    PointMap pm = prolong_point_map(xs, us, order, sc.ctx);
    json images;
    for (int i = 0; i < sc.ctx.n(); ++i) {
      std::string name = sc.ctx.name_of(sc.ctx.independent(i));
      images[name] = print_ratfun(pm.x_new[static_cast<size_t>(i)], sc.ctx);
      text += name + " -> " + std::string(images[name]) + "\n";
    }
    for (const auto& [v, img] : pm.images) {
      std::string name = sc.ctx.name_of(v);
      images[name] = print_ratfun(img, sc.ctx);
      text += name + " -> " + std::string(images[name]) + "\n";
    }
    rep["map"] = map_name;
    rep["images"] = images;
  } else {
    fail(ErrorKind::SchemaError, "prolong needs --field or --map");
  }
  emit(rep, o.json_output, text);
  return kExitPass;
}

int cmd_reduce(const CommonOpts& o, const std::string& expr, int order) {
  Scenario sc = load(o);
  if (!sc.equation) fail(ErrorKind::SchemaError, "scenario has no equation");
  RatFun f = resolve_scalar(sc, expr);
  int k = order > 0 ? order : std::max(f.max_jet_order(sc.ctx), sc.equation->max_order());
  ReductionTable table = prolong_equation(*sc.equation, k, sc.ctx);
  RatFun red = reduce(f, table, sc.ctx);
  json rep = report_skeleton("reduce");
  rep["scenario"] = sc.name;
  rep["expression"] = expr;
  rep["order"] = k;
  rep["normal_form"] = print_ratfun(red, sc.ctx);
  emit(rep, o.json_output, print_ratfun(red, sc.ctx) + "\n");
  return kExitPass;
}

int cmd_tresse(const CommonOpts& o, const std::vector<std::string>& funcs, int order) {
  Scenario sc = load(o);
  std::vector<RatFun> fs;
  for (const auto& s : funcs) fs.push_back(resolve_scalar(sc, s));
  std::optional<ReductionTable> table;
  if (sc.equation) {
    int k = order > 0 ? order : sc.equation->max_order() + 1;
    table = prolong_equation(*sc.equation, k, sc.ctx);
  }
  auto ds = tresse_derivatives(fs, sc.ctx, table ? &*table : nullptr);
  json rep = report_skeleton("tresse");
  rep["scenario"] = sc.name;
  json out = json::array();
  std::string text;
  for (const auto& d : ds) {
    json comp = json::array();
    text += d.name + ":";
    for (const auto& c : d.coeffs) {
      std::string s = print_ratfun(c, sc.ctx);
      comp.push_back(s);
      text += " [" + s + "]";
    }
    text += "\n";
    out.push_back(comp);
  }
  rep["derivations"] = out;
  emit(rep, o.json_output, text);
  return kExitPass;
}

int cmd_commutators(const CommonOpts& o, const std::vector<std::string>& names, int order) {
  Scenario sc = load(o);
  std::vector<Derivation> basis;
  for (const auto& nm : names) basis.push_back(resolve_derivation(sc, nm));
  std::optional<ReductionTable> table;
  if (sc.equation) {
    int k = order > 0 ? order : sc.equation->max_order() + 2;
    table = prolong_equation(*sc.equation, k, sc.ctx);
  }
  const ReductionTable* tp = table ? &*table : nullptr;
  json rep = report_skeleton("commutators");
  rep["scenario"] = sc.name;
  json out = json::array();
  std::string text;
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      Derivation c = commutator(basis[i], basis[j], sc.ctx, tp);
      auto decomp = decompose_commutator(c, basis, sc.ctx, tp);
      json entry;
      entry["pair"] = {basis[i].name, basis[j].name};
      text += c.name + " = ";
      if (decomp) {
        json coeffs = json::array();
        bool first = true;
        for (size_t r = 0; r < decomp->size(); ++r) {
          std::string s = print_ratfun((*decomp)[r], sc.ctx);
          coeffs.push_back(s);
          if (!first) text += " + ";
          text += "(" + s + ")*" + basis[r].name;
          first = false;
        }
        entry["coefficients"] = coeffs;
      } else {
        entry["coefficients"] = nullptr;
        text += "NotInSpan";
      }
      text += "\n";
      out.push_back(entry);
    }
  }
  rep["commutators"] = out;
  emit(rep, o.json_output, text);
  return kExitPass;
}

int cmd_hilbert(const CommonOpts& o, int max_order, int trials, long seed,
                const std::vector<long>& range, bool do_poincare) {
  Scenario sc = load(o);
  SampleSpec spec = sc.sampling;
  if (seed >= 0) spec.seed = static_cast<uint64_t>(seed);
  if (range.size() == 2) {
    spec.lo = range[0];
    spec.hi = range[1];
    if (spec.lo > spec.hi) fail(ErrorKind::SchemaError, "empty sampling range");
  }
  HilbertProfile prof =
      hilbert_function(sc.algebra, sc.equation_ptr(), max_order, trials, spec, sc.ctx);
  json rep = report_skeleton(do_poincare ? "poincare" : "hilbert");
  rep["scenario"] = sc.name;
  rep["seed"] = spec.seed;
  rep["trials"] = trials;
  rep["d"] = prof.d;
  rep["ambient"] = prof.ambient;
  rep["orbit"] = prof.orbit;
  std::string text;
  for (size_t i = 0; i < prof.d.size(); ++i) {
    if (i) text += " ";
    text += std::to_string(prof.d[i]);
  }
  text += "\n";
  if (do_poincare) {
    PoincareFit fit = poincare_fit(prof.d);
    rep["status"] = fit.fits ? "fits" : "unstable";
    if (fit.fits) {
      rep["denominator_power"] = fit.d + 1;
      rep["numerator"] = fit.numerator;
      text += "status=fits R(z) coefficients:";
      for (long c : fit.numerator) text += " " + std::to_string(c);
      text += "  denominator (1-z)^" + std::to_string(fit.d + 1) + "\n";
    } else {
      text += "status=unstable\n";
    }
  }
  emit(rep, o.json_output, text);
  return kExitPass;
}

int cmd_corpus(const std::string& data_dir, const std::string& filter, bool fast,
               bool json_output) {
  CorpusReport rep = run_corpus(data_dir, filter, fast);
  json j = report_skeleton("corpus");
  j["fast"] = fast;
  j["filter"] = filter;
  json cases = json::array();
  std::string text;
  for (const auto& c : rep.cases) {
    json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    json checks = json::array();
    for (const auto& ck : c.checks) {
      json e;
      e["name"] = ck.name;
      e["kind"] = ck.kind;
      e["pass"] = ck.pass;
      e["detail"] = ck.detail;
      checks.push_back(e);
      text += std::string(ck.pass ? "PASS" : "FAIL") + " [" + c.name + "] " + ck.name;
      if (!ck.detail.empty()) text += "  (" + ck.detail + ")";
      text += "\n";
    }
    jc["checks"] = checks;
    cases.push_back(jc);
  }
  j["cases"] = cases;
  j["pass"] = rep.pass;
  text += rep.pass ? "corpus: PASS\n" : "corpus: FAIL\n";
  emit(j, json_output, text);
  return rep.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact jet-calculus engine for differential invariants"};
  app.require_subcommand(1);

  CommonOpts common;
  bool json_output = false;
  app.add_flag("--json", json_output, "structured report on stdout");

  auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", common.scenario_path, "scenario file")->required();
  };

  // check
  auto* check = app.add_subcommand("check", "invariance / symmetry / first-integral checks");
  add_scenario(check);
  std::string invariant_name, first_integral_name, derivation_name;
  std::vector<std::string> probes;
  bool symmetries = false;
  int order = 0;
  check->add_option("--invariant", invariant_name, "named or inline expression");
  check->add_option("--order", order, "jet order of the check");
  check->add_option("--first-integral", first_integral_name, "named or inline expression");
  check->add_flag("--symmetries", symmetries, "check every declared generator");
  check->add_option("--derivation", derivation_name, "derivation to verify");
  check->add_option("--probes", probes, "invariant probes for --derivation")->delimiter(',');

  // find
  auto* find = app.add_subcommand("find", "linear-ansatz invariant search");
  add_scenario(find);
  int find_order = 1, find_degree = 1;
  std::string find_den;
  find->add_option("--order", find_order, "jet order");
  find->add_option("--num-degree", find_degree, "numerator degree bound");
  find->add_option("--den", find_den, "fixed denominator (named or inline)");

  // prolong
  auto* prolong = app.add_subcommand("prolong", "prolong a field or point map");
  add_scenario(prolong);
  std::string field_name, map_name;
  int prolong_order = 2;
  prolong->add_option("--field", field_name, "declared field name");
  prolong->add_option("--map", map_name, "named point-map expression");
  prolong->add_option("--order", prolong_order, "prolongation order");

  // reduce
  auto* red = app.add_subcommand("reduce", "normal form on the equation");
  add_scenario(red);
  std::string reduce_expr;
  int reduce_order = 0;
  red->add_option("--expr", reduce_expr, "named or inline expression")->required();
  red->add_option("--order", reduce_order, "table order");

  // tresse
  auto* tresse = app.add_subcommand("tresse", "Tresse derivatives of chosen functions");
  add_scenario(tresse);
  std::vector<std::string> tresse_funcs;
  int tresse_order = 0;
  tresse->add_option("--functions", tresse_funcs, "n comma-separated expressions")
      ->delimiter(',')
      ->required();
  tresse->add_option("--order", tresse_order, "table order");

  // commutators
  auto* comm = app.add_subcommand("commutators", "commutator table of derivations");
  add_scenario(comm);
  std::vector<std::string> comm_names;
  int comm_order = 0;
  comm->add_option("--derivations", comm_names, "derivation names")->delimiter(',')->required();
  comm->add_option("--order", comm_order, "table order");

  // hilbert / poincare
  auto* hil = app.add_subcommand("hilbert", "Hilbert function by exact-rank sampling");
  add_scenario(hil);
  int max_order = 4, trials = 8;
  long seed = -1;
  std::vector<long> range;
  hil->add_option("--max-order", max_order, "largest jet order");
  hil->add_option("--trials", trials, "samples per order");
  hil->add_option("--seed", seed, "sampling seed (default: scenario)");
  hil->add_option("--range", range, "sampling range lo hi (default: scenario)")->expected(2);

  auto* poi = app.add_subcommand("poincare", "Poincare-series fit of the Hilbert function");
  add_scenario(poi);
  int poi_max_order = 6, poi_trials = 8;
  long poi_seed = -1;
  std::vector<long> poi_range;
  poi->add_option("--max-order", poi_max_order, "largest jet order");
  poi->add_option("--trials", poi_trials, "samples per order");
  poi->add_option("--seed", poi_seed, "sampling seed (default: scenario)");
  poi->add_option("--range", poi_range, "sampling range lo hi (default: scenario)")->expected(2);

  // corpus
  auto* corpus = app.add_subcommand("corpus", "run the bundled scenario corpus");
  std::string filter, data_dir = JETVARIANT_DEFAULT_DATA_DIR;
  bool fast = false;
  corpus->add_option("--filter", filter, "substring filter on case names");
  corpus->add_flag("--fast", fast, "skip the extended checks");
  corpus->add_option("--data", data_dir, "corpus scenario directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }
  common.json_output = json_output;

  try {
    if (check->parsed())
      return cmd_check(common, invariant_name, order, first_integral_name, symmetries,
                       derivation_name, probes);
    if (find->parsed()) return cmd_find(common, find_order, find_degree, find_den);
    if (prolong->parsed()) return cmd_prolong(common, field_name, map_name, prolong_order);
    if (red->parsed()) return cmd_reduce(common, reduce_expr, reduce_order);
    if (tresse->parsed()) return cmd_tresse(common, tresse_funcs, tresse_order);
    if (comm->parsed()) return cmd_commutators(common, comm_names, comm_order);
    if (hil->parsed()) return cmd_hilbert(common, max_order, trials, seed, range, false);
    if (poi->parsed())
      return cmd_hilbert(common, poi_max_order, poi_trials, poi_seed, poi_range, true);
    if (corpus->parsed()) return cmd_corpus(data_dir, filter, fast, json_output);
  } catch (const EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
