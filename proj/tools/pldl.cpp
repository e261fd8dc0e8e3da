// Command-line front end: parsing, classification, automaton export, model
// checking, optimization, realizability, and a brute-force evaluation oracle.
//
// Exit codes: 0 = positive verdict / success, 1 = negative verdict,
// 2 = usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pldl/dot.hpp"
#include "pldl/generator.hpp"
#include "pldl/oracle.hpp"
#include "pldl/realizability.hpp"

namespace {

using namespace pldl;

/// Arguments may be given inline or as `@path`; systems may also name a file
/// directly.
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string resolve(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return slurp(arg.substr(1));
  return arg;
}

std::string resolve_system(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return slurp(arg.substr(1));
  if (std::ifstream probe(arg); probe) return slurp(arg);
  return arg;
}

std::vector<std::string> split_list(const std::string& spec) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string print_opt(const OptValue& v) {
  if (!v.defined) return "none";
  if (v.infinite) return "infinite";
  return std::to_string(v.value);
}

int report_mc(const SystemDescription& sys, const McVerdict& verdict) {
  if (verdict.satisfied) {
    std::cout << "RESULT sat\n";
    if (!verdict.valuation->values.empty())
      std::cout << "VALUATION " << print_valuation(*verdict.valuation) << "\n";
    return 0;
  }
  // The counterexample trace may carry internal coloring propositions; only
  // the system's own labels are meaningful to the caller.
  LassoWord w = *verdict.witness;
  auto restrict_letter = [&](Letter& a) {
    Letter out;
    for (const auto& p : sys.props)
      if (a.count(p)) out.insert(p);
    a = std::move(out);
  };
  for (Letter& a : w.prefix) restrict_letter(a);
  for (Letter& a : w.cycle) restrict_letter(a);
  std::cout << "RESULT unsat\n";
  std::cout << "WITNESS " << print_lasso(w) << "\n";
  return 1;
}

int run_selftest(unsigned seed) {
  FormulaGenerator gen({"a", "b"}, seed);
  std::vector<LassoWord> words = enumerate_lassos({"a", "b"}, 3);
  long checks = 0;
  for (int i = 0; i < 25; ++i) {
    FormulaPtr f = gen.ldl_formula(8, false);
    Nba nba = mh_to_nba(build_aba(f, {"a", "b"}));
    for (const LassoWord& w : words) {
      ++checks;
      if (nba_lasso_membership(nba, w) != oracle_models(w, Valuation{}, f)) {
        std::cout << "SELFTEST fail\n";
        std::cout << "FORMULA " << print_formula(f) << "\n";
        std::cout << "WORD " << print_lasso(w) << "\n";
        return 1;
      }
    }
  }
  std::cout << "SELFTEST pass " << checks << " checks\n";
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Parametric linear dynamic logic toolkit"};
  app.require_subcommand(1);

  std::string formula_arg, system_arg, assume_arg, guarantee_arg, lasso_arg;
  std::string objective_arg = "min-max", valuation_arg, props_arg, inputs_arg, outputs_arg;
  bool dot = false, allow_cp = false;
  unsigned seed = 1;

  auto* classify_cmd = app.add_subcommand("classify", "report the fragment of a formula");
  classify_cmd->add_option("formula", formula_arg)->required();
  classify_cmd->add_flag("--allow-cp", allow_cp);

  auto* negate_cmd = app.add_subcommand("negate", "print the dual formula");
  negate_cmd->add_option("formula", formula_arg)->required();
  negate_cmd->add_flag("--allow-cp", allow_cp);

  auto* aba_cmd = app.add_subcommand("to-aba", "translate to an alternating automaton");
  auto* nba_cmd = app.add_subcommand("to-nba", "translate to a nondeterministic automaton");
  auto* dpa_cmd = app.add_subcommand("to-dpa", "translate to a deterministic parity automaton");
  for (auto* cmd : {aba_cmd, nba_cmd, dpa_cmd}) {
    cmd->add_option("formula", formula_arg)->required();
    cmd->add_flag("--dot", dot);
    cmd->add_flag("--allow-cp", allow_cp);
  }

  auto* mc_cmd = app.add_subcommand("mc", "model-check a system against a formula");
  mc_cmd->add_option("system", system_arg)->required();
  mc_cmd->add_option("formula", formula_arg)->required();

  auto* mcopt_cmd = app.add_subcommand("mc-opt", "optimal parameter value for model checking");
  mcopt_cmd->add_option("system", system_arg)->required();
  mcopt_cmd->add_option("formula", formula_arg)->required();
  mcopt_cmd->add_option("--objective", objective_arg, "min-min|min-max|max-max|max-min")->required();

  auto* agmc_cmd = app.add_subcommand("agmc", "assume-guarantee model checking");
  agmc_cmd->add_option("system", system_arg)->required();
  agmc_cmd->add_option("assume", assume_arg)->required();
  agmc_cmd->add_option("guarantee", guarantee_arg)->required();

  auto* implies_cmd = app.add_subcommand("implies", "check implication over all systems");
  implies_cmd->add_option("phiA", assume_arg)->required();
  implies_cmd->add_option("phiG", guarantee_arg)->required();
  implies_cmd->add_option("--props", props_arg, "comma-separated proposition universe")->required();

  auto* realize_cmd = app.add_subcommand("realize", "synthesize a controller");
  realize_cmd->add_option("formula", formula_arg)->required();
  realize_cmd->add_option("--inputs", inputs_arg, "comma-separated input propositions")->required();
  realize_cmd->add_option("--outputs", outputs_arg, "comma-separated output propositions")->required();
  realize_cmd->add_flag("--dot", dot);

  auto* realopt_cmd = app.add_subcommand("realize-opt", "optimal parameter value for synthesis");
  realopt_cmd->add_option("formula", formula_arg)->required();
  realopt_cmd->add_option("--inputs", inputs_arg)->required();
  realopt_cmd->add_option("--outputs", outputs_arg)->required();

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula on a lasso word");
  eval_cmd->add_option("lasso", lasso_arg)->required();
  eval_cmd->add_option("formula", formula_arg)->required();
  eval_cmd->add_option("--valuation", valuation_arg, "x=1,y=2");
  eval_cmd->add_flag("--allow-cp", allow_cp);

  auto* selftest_cmd = app.add_subcommand("selftest", "cross-check the pipeline against the oracle");
  selftest_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  if (*classify_cmd) {
    FormulaPtr phi = parse_formula(resolve(formula_arg), allow_cp);
    FragmentTag tag = classify(phi);
    std::cout << fragment_name(tag) << "\n";
    std::cout << "SIZE " << size_of(phi) << "\n";
    return tag == FragmentTag::NotWellFormed ? 1 : 0;
  }
  if (*negate_cmd) {
    std::cout << print_formula(negate(parse_formula(resolve(formula_arg), allow_cp))) << "\n";
    return 0;
  }
  if (*aba_cmd || *nba_cmd || *dpa_cmd) {
    FormulaPtr phi = parse_formula(resolve(formula_arg), allow_cp);
    std::set<std::string> prop_set = propositions(phi);
    std::vector<std::string> props(prop_set.begin(), prop_set.end());
    Aba aba = build_aba(phi, props);
    if (*aba_cmd) {
      if (dot)
        std::cout << exportDot(aba);
      else
        std::cout << "STATES " << aba.size() << "\n";
      return 0;
    }
    Nba nba = nba_prune(mh_to_nba(aba));
    if (*nba_cmd) {
      if (dot)
        std::cout << exportDot(nba);
      else
        std::cout << "STATES " << nba.size() << "\n";
      return 0;
    }
    Dpa dpa = determinize(nba);
    if (dot)
      std::cout << exportDot(dpa);
    else
      std::cout << "STATES " << dpa.size() << "\n";
    return 0;
  }
  if (*mc_cmd) {
    SystemDescription sys = parse_system(resolve_system(system_arg));
    return report_mc(sys, modelCheck(sys, parse_formula(resolve(formula_arg))));
  }
  if (*mcopt_cmd) {
    SystemDescription sys = parse_system(resolve_system(system_arg));
    Objective obj;
    if (objective_arg == "min-min")
      obj = Objective::MinMin;
    else if (objective_arg == "min-max")
      obj = Objective::MinMax;
    else if (objective_arg == "max-max")
      obj = Objective::MaxMax;
    else if (objective_arg == "max-min")
      obj = Objective::MaxMin;
    else
      throw std::invalid_argument("unknown objective " + objective_arg);
    OptValue v = mcOptimize(sys, parse_formula(resolve(formula_arg)), obj);
    std::cout << "OPT " << print_opt(v) << "\n";
    return v.defined ? 0 : 1;
  }
  if (*agmc_cmd) {
    SystemDescription sys = parse_system(resolve_system(system_arg));
    return report_mc(
        sys, agCheck(sys, parse_formula(resolve(assume_arg)), parse_formula(resolve(guarantee_arg))));
  }
  if (*implies_cmd) {
    bool valid = implication(parse_formula(resolve(assume_arg)), parse_formula(resolve(guarantee_arg)),
                             split_list(props_arg));
    std::cout << "RESULT " << (valid ? "valid" : "invalid") << "\n";
    return valid ? 0 : 1;
  }
  if (*realize_cmd) {
    RealizeResult res =
        realize(parse_formula(resolve(formula_arg)), split_list(inputs_arg), split_list(outputs_arg));
    if (!res.realizable) {
      std::cout << "RESULT unrealizable\n";
      return 1;
    }
    std::cout << "RESULT realizable\n";
    if (!res.valuation->values.empty())
      std::cout << "VALUATION " << print_valuation(*res.valuation) << "\n";
    if (dot)
      std::cout << exportDot(*res.transducer);
    else
      std::cout << print_transducer(*res.transducer);
    return 0;
  }
  if (*realopt_cmd) {
    OptValue v = realOptimize(parse_formula(resolve(formula_arg)), split_list(inputs_arg),
                              split_list(outputs_arg));
    std::cout << "OPT " << print_opt(v) << "\n";
    return v.defined ? 0 : 1;
  }
  if (*eval_cmd) {
    bool holds = oracle_models(parse_lasso(resolve(lasso_arg)), parse_valuation(valuation_arg),
                               parse_formula(resolve(formula_arg), allow_cp));
    std::cout << (holds ? "true" : "false") << "\n";
    return holds ? 0 : 1;
  }
  if (*selftest_cmd) return run_selftest(seed);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
