#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pldl/generator.hpp"
#include "pldl/modelcheck.hpp"
#include "pldl/oracle.hpp"
#include "pldl/syntax.hpp"

using namespace pldl;

namespace {

const char* kDelayedResponse =
    "props req resp\n"
    "state s0 { req }\n"
    "state s1 { }\n"
    "state s2 { resp }\n"
    "init s0\n"
    "edge s0 s1\n"
    "edge s1 s2\n"
    "edge s2 s0\n";

// Deterministic system with a single trace equal to the given lasso word.
SystemDescription lasso_system(const LassoWord& w, const std::vector<std::string>& props) {
  SystemDescription s;
  s.props = props;
  int n = static_cast<int>(w.prefix.size() + w.cycle.size());
  for (int i = 0; i < n; ++i) {
    std::string name = "s" + std::to_string(i);
    s.state_index[name] = i;
    s.state_names.push_back(name);
    s.labels.push_back(w.letter_at(i));
    s.edges.push_back({i + 1 < n ? i + 1 : static_cast<int>(w.prefix.size())});
  }
  s.initial = 0;
  return s;
}

SystemDescription random_system(std::mt19937& rng, const std::vector<std::string>& props, int states) {
  SystemDescription s;
  s.props = props;
  for (int i = 0; i < states; ++i) {
    std::string name = "s" + std::to_string(i);
    s.state_index[name] = i;
    s.state_names.push_back(name);
    Letter l;
    for (const auto& p : props)
      if (rng() % 2) l.insert(p);
    s.labels.push_back(std::move(l));
    std::vector<int> succ;
    for (int t = 0; t < states; ++t)
      if (rng() % 2) succ.push_back(t);
    if (succ.empty()) succ.push_back(static_cast<int>(rng() % states));
    s.edges.push_back(std::move(succ));
  }
  s.initial = 0;
  return s;
}

Valuation uniform(const FormulaPtr& phi, long diamond, long box) {
  Valuation a;
  VariableSets vs = variables(phi);
  for (const auto& z : vs.diamond) a.set(z, diamond);
  for (const auto& z : vs.box) a.set(z, box);
  return a;
}

}  // namespace

TEST_CASE("pumpable degree-one search on hand-built graphs") {
  // Cycle with two-vertex blocks: pumpable.
  ColoredGraph g;
  g.degree = 1;
  int a = g.add_vertex(false, false, true, false, Letter{});
  int b = g.add_vertex(true, false, false, false, Letter{"p"});
  g.add_edge(a, a);
  g.add_edge(a, b);
  g.add_edge(b, b);
  g.add_edge(b, a);
  g.initial = a;
  auto path = pumpable_nonempty1(g);
  REQUIRE(path.has_value());
  bool crosses = false;
  for (std::size_t i = 0; i < path->cycle.size(); ++i) {
    int prev = i == 0 ? path->cycle.back() : path->cycle[i - 1];
    crosses = crosses || g.label_p[path->cycle[i]] != g.label_p[prev];
  }
  CHECK(crosses);

  // Strictly alternating colors: every block has length one, nothing to pump.
  ColoredGraph h;
  h.degree = 1;
  int x = h.add_vertex(false, false, true, false, Letter{});
  int y = h.add_vertex(true, false, true, false, Letter{"p"});
  h.add_edge(x, y);
  h.add_edge(y, x);
  h.initial = x;
  CHECK_FALSE(pumpable_nonempty1(h).has_value());

  // Fair cycle without any color change: not pumpable either.
  ColoredGraph u;
  u.degree = 1;
  int z = u.add_vertex(false, false, true, false, Letter{});
  u.add_edge(z, z);
  u.initial = z;
  CHECK_FALSE(pumpable_nonempty1(u).has_value());
}

TEST_CASE("pump_witness duplicates each block's repetition") {
  ColoredGraph g;
  g.degree = 1;
  int a = g.add_vertex(false, false, true, false, Letter{});
  int b = g.add_vertex(true, false, false, false, Letter{"p"});
  g.add_edge(a, a);
  g.add_edge(a, b);
  g.add_edge(b, b);
  g.add_edge(b, a);
  LassoPath path;
  path.cycle = {a, a, b, b};

  // The cycle already starts at a block boundary, so no rotation happens.
  LassoWord w0 = pump_witness(g, path, 0);
  CHECK(w0.prefix.empty());
  CHECK(w0.cycle == std::vector<Letter>{{}, {}, {"p"}, {"p"}});

  LassoWord w1 = pump_witness(g, path, 1);
  CHECK(w1.prefix.empty());
  CHECK(w1.cycle == std::vector<Letter>{{}, {}, {}, {"p"}, {"p"}, {"p"}});

  LassoWord w2 = pump_witness(g, path, 2);
  CHECK(w2.cycle.size() == 8);

  // A cycle without a color change cannot be pumped.
  LassoPath flat;
  flat.cycle = {a, a};
  CHECK_THROWS_AS(pump_witness(g, flat, 1), std::invalid_argument);
}

TEST_CASE("pumpable degree-two search needs a p-flip inside the repetition") {
  // q-blocks with an internal p-flip between two visits of the watch vertex.
  ColoredGraph g;
  g.degree = 2;
  int a = g.add_vertex(false, false, true, true, {});
  int b = g.add_vertex(true, false, true, true, {});
  int c = g.add_vertex(false, true, true, true, {});
  int d = g.add_vertex(true, true, true, true, {});
  g.add_edge(a, b);
  g.add_edge(b, a);
  g.add_edge(b, c);
  g.add_edge(c, d);
  g.add_edge(d, c);
  g.add_edge(d, a);
  g.initial = a;
  CHECK(pumpable_nonempty2(g).has_value());

  // Same block structure but constant p inside each q-block: repetitions
  // exist, yet no p-changepoint separates them.
  ColoredGraph h;
  h.degree = 2;
  int e = h.add_vertex(false, false, true, true, {});
  int f = h.add_vertex(false, true, true, true, {});
  h.add_edge(e, e);
  h.add_edge(e, f);
  h.add_edge(f, f);
  h.add_edge(f, e);
  h.initial = e;
  CHECK_FALSE(pumpable_nonempty2(h).has_value());

  // q-blocks of length one: never pumpable.
  ColoredGraph s;
  s.degree = 2;
  int m = s.add_vertex(false, false, true, true, {});
  int n = s.add_vertex(true, true, true, true, {});
  s.add_edge(m, n);
  s.add_edge(n, m);
  s.initial = m;
  CHECK_FALSE(pumpable_nonempty2(s).has_value());
}

TEST_CASE("model checking the delayed response fixture") {
  SystemDescription sys = parse_system(kDelayedResponse);
  FormulaPtr phi = parse_formula("[ tt* ] (req -> < tt* >{<= x} resp)");
  McVerdict v = modelCheck(sys, phi);
  REQUIRE(v.satisfied);
  REQUIRE(v.valuation.has_value());
  CHECK(mcQuery(sys, phi, *v.valuation));

  // The plain (unparameterized) property also holds.
  CHECK(modelCheck(sys, parse_formula("[ tt* ] (req -> < tt* > resp)")).satisfied);
  // But responses are not immediate.
  CHECK_FALSE(modelCheck(sys, parse_formula("[ tt* ] (req -> resp)")).satisfied);
}

TEST_CASE("unsatisfied verdicts carry a counterexample that pumping keeps bad") {
  SystemDescription sys = parse_system(
      "props req resp\n"
      "state s0 { req }\n"
      "state s1 { resp }\n"
      "init s0\n"
      "edge s0 s0\n"
      "edge s0 s1\n"
      "edge s1 s1\n");
  FormulaPtr phi = parse_formula("[ tt* ] (req -> < tt* >{<= x} resp)");
  McAnalysis a = modelCheckAnalysis(sys, phi);
  REQUIRE_FALSE(a.verdict.satisfied);
  REQUIRE(a.verdict.path.has_value());
  REQUIRE(a.verdict.witness.has_value());
  for (long k = 0; k <= 3; ++k) {
    LassoWord pumped = pump_witness(a.graph, *a.verdict.path, k);
    INFO("k=" << k << " pumped " << print_lasso(pumped));
    CHECK_FALSE(oracle_models(pumped, uniform(phi, k, k), phi));
  }
}

TEST_CASE("mcQuery agrees with the oracle on single-trace systems") {
  FormulaGenerator gen({"a", "b"}, 4242);
  std::vector<LassoWord> words = {
      parse_lasso("|{}"),        parse_lasso("|{a}"),         parse_lasso("{a}|{b}"),
      parse_lasso("{}{a}|{a b}"), parse_lasso("{b}|{a}{}"),    parse_lasso("|{a}{b}{}"),
  };
  for (int i = 0; i < 15; ++i) {
    FormulaPtr f = gen.single_var_formula(8, "x");
    for (long k : {0L, 1L, 2L}) {
      Valuation alpha = uniform(f, k, k);
      for (const LassoWord& w : words) {
        SystemDescription sys = lasso_system(w, {"a", "b"});
        INFO("formula " << print_formula(f) << " word " << print_lasso(w) << " k=" << k);
        CHECK(mcQuery(sys, f, alpha) == oracle_models(w, alpha, f));
      }
    }
  }
}

TEST_CASE("mcQuery requires every variable to be assigned") {
  SystemDescription sys = parse_system(kDelayedResponse);
  CHECK_THROWS_AS(mcQuery(sys, parse_formula("< tt* >{<= x} resp"), Valuation{}), std::invalid_argument);
}

TEST_CASE("modelCheck agrees with the bounded query at the constructive valuation") {
  std::mt19937 rng(90210);
  FormulaGenerator gen({"a"}, 777);
  int checked = 0;
  for (int i = 0; checked < 12 && i < 60; ++i) {
    FormulaPtr f = gen.single_var_formula(6, "x");
    if (classify(f) == FragmentTag::NotWellFormed) continue;
    SystemDescription sys = random_system(rng, {"a"}, 2 + static_cast<int>(rng() % 2));
    McAnalysis a = modelCheckAnalysis(sys, f);
    long star = a.graph.size() + 2;  // = 2|Q||S| + 2
    INFO("formula " << print_formula(f));
    CHECK(a.verdict.satisfied == mcQuery(sys, f, uniform(f, star, 0)));
    ++checked;
  }
  REQUIRE(checked == 12);
}

TEST_CASE("assume-guarantee with a trivial assumption matches plain model checking") {
  SystemDescription sys = parse_system(kDelayedResponse);
  FormulaPtr good = parse_formula("[ tt* ] (req -> < tt* >{<= x} resp)");
  FormulaPtr bad = parse_formula("[ tt* ] resp");
  CHECK(agCheck(sys, f_true(), good).satisfied == modelCheck(sys, good).satisfied);
  CHECK(agCheck(sys, f_true(), bad).satisfied == modelCheck(sys, bad).satisfied);
}

TEST_CASE("assume-guarantee discharges bounded assumptions") {
  // Under the assumption that a request is eventually answered within some
  // bound, the system that may delay forever still satisfies the guarantee.
  SystemDescription sys = parse_system(
      "props go\n"
      "state s0 { }\n"
      "state s1 { go }\n"
      "init s0\n"
      "edge s0 s0\n"
      "edge s0 s1\n"
      "edge s1 s1\n");
  FormulaPtr assume = parse_formula("< tt* >{<= x} go");
  FormulaPtr guarantee = parse_formula("< tt* > go");
  CHECK(agCheck(sys, assume, guarantee).satisfied);
  // Without the assumption the guarantee fails: the system may stay silent.
  CHECK_FALSE(modelCheck(sys, guarantee).satisfied);
}

TEST_CASE("implication over the universal system") {
  FormulaPtr bounded = parse_formula("< tt* >{<= x} a");
  FormulaPtr plain = parse_formula("< tt* > a");
  CHECK(implication(bounded, plain, {"a"}));
  CHECK_FALSE(implication(plain, bounded, {"a"}));
  CHECK(implication(bounded, bounded, {"a"}));
}

TEST_CASE("optimization on the delayed response fixture") {
  SystemDescription sys = parse_system(kDelayedResponse);
  FormulaPtr phi = parse_formula("[ tt* ] (req -> < tt* >{<= x} resp)");
  OptValue v = mcOptimize(sys, phi, Objective::MinMax);
  CHECK(v == opt_of(2));

  // Linear scan agreement.
  long scan = -1;
  for (long k = 0; k <= 6 && scan < 0; ++k)
    if (mcQuery(sys, phi, uniform(phi, k, 0))) scan = k;
  CHECK(scan == 2);

  // MinMin picks the cheapest variable.
  FormulaPtr two = parse_formula("< tt* >{<= x1} resp & < tt* >{<= x2} req");
  CHECK(mcOptimize(sys, two, Objective::MinMin) == opt_of(0));
  CHECK(mcOptimize(sys, two, Objective::MinMax) == opt_of(2));
}

TEST_CASE("optimization of box parameters, including the infinite verdict") {
  SystemDescription chain = parse_system(
      "props p\n"
      "state s0 { p }\n"
      "state s1 { p }\n"
      "state s2 { p }\n"
      "state s3 { }\n"
      "init s0\n"
      "edge s0 s1\n"
      "edge s1 s2\n"
      "edge s2 s3\n"
      "edge s3 s3\n");
  FormulaPtr box = parse_formula("[ tt* ]{<= y} p");
  CHECK(mcOptimize(chain, box, Objective::MaxMax) == opt_of(2));
  CHECK(mcOptimize(chain, box, Objective::MaxMin) == opt_of(2));

  SystemDescription always = parse_system(
      "props p\n"
      "state s0 { p }\n"
      "init s0\n"
      "edge s0 s0\n");
  CHECK(mcOptimize(always, box, Objective::MaxMax) == opt_inf());
  CHECK(mcOptimize(always, parse_formula("[ tt* ] [ tt* ]{<= y} p"), Objective::MaxMax) == opt_inf());

  SystemDescription never = parse_system(
      "props p\n"
      "state s0 { }\n"
      "init s0\n"
      "edge s0 s0\n");
  CHECK(mcOptimize(never, box, Objective::MaxMax) == opt_none());
  CHECK(mcOptimize(never, parse_formula("< tt* >{<= x} p"), Objective::MinMax) == opt_none());
}

TEST_CASE("optimization rejects the wrong fragment") {
  SystemDescription sys = parse_system(kDelayedResponse);
  CHECK_THROWS_AS(mcOptimize(sys, parse_formula("< tt* > resp"), Objective::MinMax), std::invalid_argument);
  CHECK_THROWS_AS(mcOptimize(sys, parse_formula("[ tt* ]{<= y} resp"), Objective::MinMax),
                  std::invalid_argument);
  CHECK_THROWS_AS(mcOptimize(sys, parse_formula("< tt* >{<= x} resp"), Objective::MaxMax),
                  std::invalid_argument);
}
