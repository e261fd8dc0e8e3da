#include <catch2/catch_amalgamated.hpp>

#include "pldl/generator.hpp"
#include "pldl/nfa.hpp"
#include "pldl/syntax.hpp"

using namespace pldl;

namespace {

long regex_length(const RegexPtr& r) {
  switch (r->kind) {
    case RegexKind::Prop:
    case RegexKind::Test: return 1;
    case RegexKind::Union:
    case RegexKind::Concat: return 1 + regex_length(r->lhs) + regex_length(r->rhs);
    case RegexKind::Star: return 1 + regex_length(r->lhs);
  }
  return 0;
}

// Structural view of a collection of marking sets, for value comparisons.
std::set<std::vector<std::string>> texts(const MarkingSets& ms) {
  std::set<std::vector<std::string>> out;
  for (const MarkingSet& m : ms) {
    std::vector<std::string> v;
    for (const FormulaPtr& f : m) v.push_back(print_formula(f));
    out.insert(std::move(v));
  }
  return out;
}

}  // namespace

TEST_CASE("gadget shapes") {
  MarkedNfa p = thompson(parse_regex("p"));
  CHECK(p.size() == 2);
  CHECK(p.initial != p.final_state);
  REQUIRE(p.letter_edges[p.initial].size() == 1);
  CHECK(p.letter_edges[p.initial][0].target == p.final_state);

  MarkedNfa t = thompson(parse_regex("{q}?"));
  CHECK(t.size() == 1);
  CHECK(t.initial == t.final_state);
  REQUIRE(t.marking[t.initial].has_value());
  CHECK(formula_equal(*t.marking[t.initial], f_atom("q")));

  CHECK(thompson(parse_regex("p + q")).size() == 6);
  CHECK(thompson(parse_regex("p ; q")).size() == 4);
  CHECK(thompson(parse_regex("p*")).size() == 4);
}

TEST_CASE("the final state never has outgoing edges") {
  FormulaGenerator gen({"a", "b"}, 17);
  for (int i = 0; i < 200; ++i) {
    RegexPtr r = gen.regex(3);
    MarkedNfa nfa = thompson(r);
    CHECK(nfa.letter_edges[nfa.final_state].empty());
    CHECK(nfa.eps_edges[nfa.final_state].empty());
    CHECK(nfa.size() <= 2 * regex_length(r));
  }
}

TEST_CASE("epsilon paths collect markings of simple paths, endpoints included") {
  // {a}? ; b : initial state is the marked test state.
  MarkedNfa nfa = thompson(parse_regex("{a}? ; b"));
  std::vector<MarkingSets> paths = epsilon_paths(nfa, nfa.initial);
  REQUIRE(paths[nfa.initial].size() == 1);
  CHECK(texts(paths[nfa.initial]) == std::set<std::vector<std::string>>{{"a"}});
  // The state consuming b is ε-reachable and inherits the test of the source.
  int bsrc = -1;
  for (int q = 0; q < nfa.size(); ++q)
    if (!nfa.letter_edges[q].empty()) bsrc = q;
  REQUIRE(bsrc >= 0);
  REQUIRE(paths[bsrc].size() == 1);
  CHECK(texts(paths[bsrc]) == std::set<std::vector<std::string>>{{"a"}});

  // A state without ε-edges reaches only itself, with empty markings.
  MarkedNfa pl = thompson(parse_regex("p"));
  std::vector<MarkingSets> only = epsilon_paths(pl, pl.initial);
  CHECK(only[pl.initial] == MarkingSets{{}});
  CHECK(only[pl.final_state].empty());
}

TEST_CASE("epsilon paths through a union offer both tests") {
  MarkedNfa nfa = thompson(parse_regex("({a}? + {b}?) ; c"));
  int csrc = -1;
  for (int q = 0; q < nfa.size(); ++q)
    if (!nfa.letter_edges[q].empty()) csrc = q;
  REQUIRE(csrc >= 0);
  std::vector<MarkingSets> paths = epsilon_paths(nfa, nfa.initial);
  CHECK(texts(paths[csrc]) == std::set<std::vector<std::string>>{{"a"}, {"b"}});
}

TEST_CASE("star skip and back edges") {
  MarkedNfa nfa = thompson(parse_regex("a*"));
  std::vector<MarkingSets> paths = epsilon_paths(nfa, nfa.initial);
  // Both the final state (skip) and the a-consuming state are ε-reachable.
  CHECK_FALSE(paths[nfa.final_state].empty());
  int asrc = -1;
  for (int q = 0; q < nfa.size(); ++q)
    if (!nfa.letter_edges[q].empty()) asrc = q;
  REQUIRE(asrc >= 0);
  CHECK_FALSE(paths[asrc].empty());
  // After consuming one a, the loop permits both continuing and stopping.
  int mid = nfa.letter_edges[asrc][0].target;
  std::vector<MarkingSets> again = epsilon_paths(nfa, mid);
  CHECK_FALSE(again[asrc].empty());
  CHECK_FALSE(again[nfa.final_state].empty());
}

TEST_CASE("changepoint DFA counts at most one flip") {
  int s = CpDfa::kEmpty;
  CHECK(CpDfa::accepting(s));
  s = CpDfa::step(s, true);   // first letter sets the color
  s = CpDfa::step(s, true);
  CHECK(CpDfa::accepting(s));
  s = CpDfa::step(s, false);  // one flip
  CHECK(CpDfa::accepting(s));
  s = CpDfa::step(s, false);
  CHECK(CpDfa::accepting(s));
  s = CpDfa::step(s, true);   // second flip
  CHECK_FALSE(CpDfa::accepting(s));
  CHECK(CpDfa::step(CpDfa::kSink, false) == CpDfa::kSink);
}

TEST_CASE("changepoint product splits letter edges on the color") {
  MarkedNfa base = thompson(parse_regex("a ; b"));
  RegexNfa prod = cp_product(base, "p");
  CHECK(prod.size() == base.size() * CpDfa::kStates);
  CHECK(prod.finals.size() == 5);  // every live counter state at the final
  // Each letter edge splits into a color and a non-color copy.
  int base_edges = 0, prod_edges = 0;
  for (int q = 0; q < base.size(); ++q) base_edges += static_cast<int>(base.letter_edges[q].size());
  for (int q = 0; q < prod.size(); ++q) prod_edges += static_cast<int>(prod.letter_edges[q].size());
  CHECK(prod_edges == 2 * CpDfa::kStates * base_edges);
  // ε-edges keep the counter component.
  for (int q = 0; q < prod.size(); ++q)
    for (int t : prod.eps_edges[q]) CHECK(t % CpDfa::kStates == q % CpDfa::kStates);
}
