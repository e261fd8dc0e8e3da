#include <catch2/catch_amalgamated.hpp>

#include "pldl/generator.hpp"
#include "pldl/syntax.hpp"

using namespace pldl;

TEST_CASE("formula parsing and canonical printing") {
  CHECK(print_formula(parse_formula("< tt* >{<= x} p")) == "< tt* >{<= x} p");
  CHECK(print_formula(parse_formula("p & q | r")) == "((p & q) | r)");
  CHECK(print_formula(parse_formula("[ a ; b ] !q")) == "[ (a ; b) ] !q");
  CHECK(print_formula(parse_formula("< {p}? ; q >{<= x} p'")) == "< ({p}? ; q) >{<= x} p'");
  CHECK(print_formula(parse_formula("< (a + b)* > tt")) == "< (a + b)* > tt");
  CHECK(print_formula(parse_formula("[ (!a & b)* ] ff")) == "[ (!a & b)* ] ff");
}

TEST_CASE("ampersand binds tighter than bar") {
  FormulaPtr f = parse_formula("a | b & c");
  REQUIRE(f->kind == FormulaKind::Or);
  CHECK(f->rhs->kind == FormulaKind::And);
}

TEST_CASE("implication sugar requires a propositional antecedent") {
  FormulaPtr f = parse_formula("req -> < tt* > resp");
  REQUIRE(f->kind == FormulaKind::Or);
  CHECK(formula_equal(f->lhs, f_neg_atom("req")));
  CHECK(f->rhs->kind == FormulaKind::Diamond);

  FormulaPtr g = parse_formula("a & b -> c");
  REQUIRE(g->kind == FormulaKind::Or);
  CHECK(formula_equal(g->lhs, f_or(f_neg_atom("a"), f_neg_atom("b"))));

  CHECK_THROWS_AS(parse_formula("< tt > a -> b"), ParseError);
}

TEST_CASE("changepoint operators are opt-in") {
  CHECK_THROWS_AS(parse_formula("< tt* >{cp} p"), ParseError);
  FormulaPtr f = parse_formula("< tt* >{cp} p", /*allow_cp=*/true);
  CHECK(f->kind == FormulaKind::DiamondCp);
  FormulaPtr g = parse_formula("[ a ]{cp} p", true);
  CHECK(g->kind == FormulaKind::BoxCp);
}

TEST_CASE("regex parsing distinguishes prop and regex parentheses") {
  RegexPtr r = parse_regex("((a | b) & c)");
  REQUIRE(r->kind == RegexKind::Prop);
  CHECK(r->prop->kind == PropKind::And);

  RegexPtr s = parse_regex("(a ; b) + c");
  REQUIRE(s->kind == RegexKind::Union);
  CHECK(s->lhs->kind == RegexKind::Concat);

  RegexPtr t = parse_regex("a**");
  REQUIRE(t->kind == RegexKind::Star);
  CHECK(t->lhs->kind == RegexKind::Star);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_formula("p & ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
  CHECK_THROWS_AS(parse_formula("< a"), ParseError);
  CHECK_THROWS_AS(parse_formula("{p}?"), ParseError);
}

TEST_CASE("printing then parsing is the identity on random formulas") {
  FormulaGenerator gen({"a", "b", "c"}, 4242);
  for (int i = 0; i < 400; ++i) {
    FormulaPtr f = gen.ldl_formula(20, true);
    CHECK(formula_equal(parse_formula(print_formula(f), true), f));
  }
  for (int i = 0; i < 100; ++i) {
    FormulaPtr f = gen.single_var_formula(20, "x");
    CHECK(formula_equal(parse_formula(print_formula(f), true), f));
  }
}

TEST_CASE("system parsing") {
  const std::string good =
      "props req resp\n"
      "# a request eventually answered\n"
      "state s0 { }\n"
      "state s1 { req }\n"
      "state s2 { resp }\n"
      "init s0\n"
      "edge s0 s1\n"
      "edge s1 s2\n"
      "edge s2 s0\n"
      "edge s2 s2\n";
  SystemDescription sys = parse_system(good);
  CHECK(sys.size() == 3);
  CHECK(sys.initial == 0);
  CHECK(sys.props == std::vector<std::string>{"req", "resp"});
  CHECK(sys.labels[1] == Letter{"req"});
  CHECK(sys.edges[2] == std::vector<int>{0, 2});

  CHECK_THROWS_AS(parse_system("props p\nstate s0 { p }\nedge s0 s0\n"), ParseError);  // no init
  CHECK_THROWS_AS(parse_system("props p\nstate s0 { q }\ninit s0\nedge s0 s0\n"), ParseError);
  CHECK_THROWS_AS(parse_system("props p\nstate s0 { }\nstate s0 { }\ninit s0\nedge s0 s0\n"), ParseError);
  try {
    parse_system("props p\nstate s0 { }\nstate s1 { p }\ninit s0\nedge s0 s1\n");
    FAIL("expected a left-totality error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("not left-total") != std::string::npos);
    CHECK(std::string(e.what()).find("s1") != std::string::npos);
  }
}

TEST_CASE("lasso parsing and printing") {
  LassoWord w = parse_lasso("{p}{p q}|{q}");
  REQUIRE(w.prefix.size() == 2);
  REQUIRE(w.cycle.size() == 1);
  CHECK(w.prefix[1] == Letter{"p", "q"});
  CHECK(print_lasso(w) == "{p}{p q}|{q}");
  CHECK(print_lasso(parse_lasso("|{}")) == "|{}");
  CHECK_THROWS_AS(parse_lasso("{p}{q}"), ParseError);   // no cycle marker
  CHECK_THROWS_AS(parse_lasso("{p}|"), ParseError);     // empty cycle
  CHECK_THROWS_AS(parse_lasso("{p}|{q}|{r}"), ParseError);
}

TEST_CASE("valuation parsing and printing") {
  Valuation a = parse_valuation("x=3,y=0");
  CHECK(a.at("x") == 3);
  CHECK(a.at("y") == 0);
  CHECK(a.at("z") == 0);  // absent means 0
  CHECK(print_valuation(a) == "x=3,y=0");
  CHECK(parse_valuation(" x = 7 ").at("x") == 7);
  CHECK_THROWS_AS(parse_valuation("x=-1"), ParseError);
  CHECK_THROWS_AS(parse_valuation("x3"), ParseError);
}
