#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pldl/generator.hpp"
#include "pldl/oracle.hpp"
#include "pldl/realizability.hpp"
#include "pldl/syntax.hpp"

using namespace pldl;

namespace {

ParityGame loop(int owner, int color) {
  ParityGame g;
  int v = g.add_vertex(owner, color);
  g.succ[v].push_back(v);
  return g;
}

ParityGame random_game(std::mt19937& rng, int n, int max_color) {
  ParityGame g;
  for (int v = 0; v < n; ++v)
    g.add_vertex(static_cast<int>(rng() % 2), static_cast<int>(rng() % (max_color + 1)));
  for (int v = 0; v < n; ++v) {
    int deg = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < deg; ++k) g.succ[v].push_back(static_cast<int>(rng() % n));
  }
  return g;
}

}  // namespace

TEST_CASE("parity solving on one-vertex loops") {
  ParityGame even = loop(0, 2);
  ParitySolution s = solve_parity(even);
  CHECK(s.winner[0] == 0);
  CHECK(s.strategy[0] == 0);
  CHECK(parity_solution_sound(even, s));

  ParityGame odd = loop(1, 3);
  CHECK(solve_parity(odd).winner[0] == 1);

  ParityGame dead;
  dead.add_vertex(0, 0);
  CHECK_THROWS_AS(solve_parity(dead), std::invalid_argument);
}

TEST_CASE("parity solving picks the right edge at choice vertices") {
  // v1 loops on even color, v2 on odd; the choice vertex v0 decides the game.
  ParityGame g;
  int v0 = g.add_vertex(0, 0);
  int v1 = g.add_vertex(0, 0);
  int v2 = g.add_vertex(1, 1);
  g.succ[v0] = {v1, v2};
  g.succ[v1] = {v1};
  g.succ[v2] = {v2};
  ParitySolution s = solve_parity(g);
  CHECK(s.winner[v0] == 0);
  CHECK(g.succ[v0][s.strategy[v0]] == v1);
  CHECK(s.winner[v2] == 1);
  CHECK(parity_solution_sound(g, s));

  g.owner[v0] = 1;  // the adversary steers into the odd loop instead
  ParitySolution s2 = solve_parity(g);
  CHECK(s2.winner[v0] == 1);
}

TEST_CASE("max-even convention on a mixed cycle") {
  ParityGame g;
  int a = g.add_vertex(0, 2);
  int b = g.add_vertex(1, 1);
  g.succ[a] = {b};
  g.succ[b] = {a};
  ParitySolution s = solve_parity(g);
  CHECK(s.winner[a] == 0);
  CHECK(s.winner[b] == 0);
  CHECK(parity_solution_sound(g, s));
}

TEST_CASE("the soundness checker rejects forged solutions") {
  ParityGame g = loop(1, 1);
  ParitySolution forged;
  forged.winner = {0};
  forged.strategy = {-1};
  CHECK_FALSE(parity_solution_sound(g, forged));
}

TEST_CASE("strategies survive abandoned recursive attempts") {
  // A solver once kept a stale edge choice at vertex 3 (pointing into the
  // opponent's region) after an inner recursion was rolled back.
  ParityGame g;
  g.owner = {1, 0, 1, 0, 0, 1, 1};
  g.color = {1, 3, 1, 0, 0, 2, 0};
  g.succ = {{4, 3, 4}, {5}, {2, 0}, {5, 4, 5}, {0, 3}, {5, 5, 2}, {4, 4}};
  ParitySolution s = solve_parity(g);
  CHECK(s.winner == std::vector<int>{0, 1, 1, 0, 0, 1, 0});
  CHECK(parity_solution_sound(g, s));
}

TEST_CASE("random games: soundness and determinacy under color shift") {
  std::mt19937 rng(20240817);
  for (int iter = 0; iter < 40; ++iter) {
    ParityGame g = random_game(rng, 2 + static_cast<int>(rng() % 6), 3);
    ParitySolution s = solve_parity(g);
    CHECK(parity_solution_sound(g, s));
    // Shifting every color by one swaps which player wins each vertex.
    ParityGame flipped = g;
    for (int& c : flipped.color) ++c;
    for (int& o : flipped.owner) o = 1 - o;
    ParitySolution fs = solve_parity(flipped);
    for (int v = 0; v < g.size(); ++v) CHECK(fs.winner[v] == 1 - s.winner[v]);
    CHECK(parity_solution_sound(flipped, fs));
  }
}

TEST_CASE("arena shape over a deterministic automaton") {
  Dpa dpa = determinize(nba_prune(mh_to_nba(build_aba(parse_formula("< tt* > o"), {"i", "o"}))));
  SynthesisArena ar = build_arena(dpa, {"i"}, {"o"});
  int q = dpa.size();
  REQUIRE(ar.game.size() == q + q * 2);
  for (int v = 0; v < q; ++v) {
    CHECK(ar.game.owner[v] == 1);
    CHECK(ar.game.succ[v].size() == 2);  // one per input subset
  }
  for (int v = q; v < ar.game.size(); ++v) {
    CHECK(ar.game.owner[v] == 0);
    CHECK(ar.game.succ[v].size() == 2);  // one per output subset
  }
  CHECK(ar.game.initial == dpa.initial);
}

TEST_CASE("dualizing negates and delays the input atoms") {
  CHECK(print_formula(dualize(parse_formula("i"), {"i"})) == "< tt > !i");
  CHECK(print_formula(dualize(parse_formula("o"), {"i"})) == "!o");
  CHECK(print_formula(dualize(parse_formula("i | o"), {"i"})) == "(< tt > !i & !o)");
  // Atoms inside regex tests shift as well (negation leaves tests untouched);
  // regex propositions do not shift.
  CHECK(print_formula(dualize(parse_formula("< {i}? ; o > tt"), {"i", "o"})) ==
        "[ ({< tt > i}? ; o) ] ff");
  // Dualizing a box-fragment formula lands in the diamond fragment.
  CHECK(classify(dualize(parse_formula("[ tt* ]{<= y} o"), {"i"})) == FragmentTag::PldlDiamond);
}

TEST_CASE("pure-output and pure-input goals") {
  RealizeResult out = realize(parse_formula("o"), {"i"}, {"o"});
  REQUIRE(out.realizable);
  REQUIRE(out.transducer.has_value());
  // Every reaction of the strategy emits o on the first letter.
  for (const auto& step : out.transducer->steps[out.transducer->initial]) CHECK(step.emit.count("o") == 1);

  CHECK_FALSE(realize(parse_formula("i"), {"i"}, {"o"}).realizable);
  CHECK_FALSE(realize(parse_formula("i"), {}, {"o"}).realizable);
  CHECK(realize(parse_formula("!i | o"), {"i"}, {"o"}).realizable);
}

TEST_CASE("request-response is realizable with a working closed loop") {
  FormulaPtr phi = parse_formula("[ tt* ] (req -> < tt* > resp)");
  RealizeResult res = realize(phi, {"req"}, {"resp"});
  REQUIRE(res.realizable);
  REQUIRE(res.transducer.has_value());
  REQUIRE(res.valuation.has_value());
  for (const LassoWord& input : enumerate_lassos({"req"}, 4)) {
    LassoWord trace = transducer_run(*res.transducer, input);
    INFO("input " << print_lasso(input) << " trace " << print_lasso(trace));
    CHECK(oracle_models(trace, *res.valuation, phi));
    // The loop respects the environment: inputs pass through unchanged.
    for (std::size_t k = 0; k < trace.prefix.size() + trace.cycle.size(); ++k)
      CHECK(trace.letter_at(k).count("req") == input.letter_at(input.reduce(k)).count("req"));
  }
}

TEST_CASE("bounded response is realizable and the valuation checks out") {
  FormulaPtr phi = parse_formula("< tt* >{<= x} resp");
  RealizeResult res = realize(phi, {"req"}, {"resp"});
  REQUIRE(res.realizable);
  REQUIRE(res.valuation.has_value());
  CHECK(res.valuation->at("x") == 2L * res.transducer->size() + 2);
  for (const LassoWord& input : enumerate_lassos({"req"}, 3)) {
    LassoWord trace = transducer_run(*res.transducer, input);
    CHECK(oracle_models(trace, *res.valuation, phi));
  }
  // The concrete-valuation game agrees, all the way down to zero.
  CHECK(realQuery(phi, {"req"}, {"resp"}, *res.valuation).realizable);
  Valuation zero;
  zero.set("x", 0);
  CHECK(realQuery(phi, {"req"}, {"resp"}, zero).realizable);
  CHECK_THROWS_AS(realQuery(phi, {"req"}, {"resp"}, Valuation{}), std::invalid_argument);
}

TEST_CASE("predicting the next input is unrealizable") {
  FormulaPtr phi = parse_formula("[ tt* ] ((o & < tt > i) | (!o & < tt > !i))");
  CHECK_FALSE(realize(phi, {"i"}, {"o"}).realizable);
  // Echoing the current input is fine: outputs react after seeing the input.
  FormulaPtr echo = parse_formula("[ tt* ] ((o & i) | (!o & !i))");
  CHECK(realize(echo, {"i"}, {"o"}).realizable);
}

TEST_CASE("exactly one of a game and its dual is realizable") {
  FormulaGenerator gen({"i", "o"}, 9090);
  for (int iter = 0; iter < 10; ++iter) {
    FormulaPtr f = gen.ldl_formula(7, false);
    bool direct = realQuery(f, {"i"}, {"o"}, Valuation{}).realizable;
    bool dual = realQuery(dualize(f, {"i"}), {"o"}, {"i"}, Valuation{}).realizable;
    INFO("formula " << print_formula(f));
    CHECK(direct != dual);
  }
}

TEST_CASE("transducer text format") {
  RealizeResult res = realize(parse_formula("[ tt* ] (req -> < tt* > resp)"), {"req"}, {"resp"});
  REQUIRE(res.realizable);
  std::string text = print_transducer(*res.transducer);
  CHECK(text.rfind("transducer states " + std::to_string(res.transducer->size()) + " initial s_0\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + static_cast<std::size_t>(res.transducer->size()) * 2);
  CHECK(text.find("s_0: on {} -> goto s_") != std::string::npos);
  CHECK(text.find("s_0: on {req} -> goto s_") != std::string::npos);
}

TEST_CASE("optimal bounds for the diamond fragment") {
  CHECK(realOptimize(parse_formula("< tt* >{<= x} resp"), {"req"}, {"resp"}) == opt_of(0));
  CHECK(realOptimize(parse_formula("!resp & < tt* >{<= x} resp"), {"req"}, {"resp"}) == opt_of(1));
  // An unmet goal relying on the environment has no winning bound at all.
  CHECK(realOptimize(parse_formula("< tt* >{<= x} i"), {"i"}, {"o"}) == opt_none());
  // Waiting for the environment to move costs one extra step per delay.
  CHECK(realOptimize(parse_formula("[ tt* ] (req -> < tt ; tt* >{<= x} resp)"), {"req"}, {"resp"}) ==
        opt_of(1));
}

TEST_CASE("optimal bounds for the box fragment via the dual game") {
  // The controller owns o outright, so the guarantee never expires.
  CHECK(realOptimize(parse_formula("[ tt* ]{<= y} o"), {"i"}, {"o"}) == opt_inf());
  // The environment can violate !i immediately: no bound works.
  CHECK(realOptimize(parse_formula("[ tt* ]{<= y} !i"), {"i"}, {"o"}) == opt_none());
  // Matches shorter than the regex are vacuous, so small bounds survive.
  CHECK(realOptimize(parse_formula("[ tt ]{<= y} !i"), {"i"}, {"o"}) == opt_of(0));
  CHECK(realOptimize(parse_formula("[ tt ; tt ]{<= y} !i"), {"i"}, {"o"}) == opt_of(1));
}

TEST_CASE("optimization rejects formulas outside the two fragments") {
  CHECK_THROWS_AS(realOptimize(parse_formula("< tt >{<= x} p & [ tt ]{<= y} p"), {"i"}, {"p"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(realOptimize(parse_formula("o"), {"i"}, {"o"}), std::invalid_argument);
}
