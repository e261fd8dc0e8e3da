#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "pldl/dot.hpp"
#include "pldl/syntax.hpp"

using namespace pldl;

namespace {

std::size_t count_nodes(const std::string& dot) {
  std::size_t n = 0, pos = 0;
  while ((pos = dot.find("[label=", pos)) != std::string::npos) {
    // Node lines carry a label attribute and no arrow before it.
    std::size_t line_start = dot.rfind('\n', pos);
    std::string line = dot.substr(line_start + 1, pos - line_start - 1);
    if (line.find("->") == std::string::npos) ++n;
    ++pos;
  }
  return n;
}

bool graphviz_accepts(const std::string& dot) {
  // `dot` may not be installed in the build environment; fall back to a
  // structural check in that case.
  std::string cmd = "command -v dot >/dev/null 2>&1";
  if (std::system(cmd.c_str()) != 0) return dot.rfind("digraph", 0) == 0 && dot.back() == '\n';
  FILE* p = popen("dot -Tcanon -o /dev/null 2>/dev/null", "w");
  if (!p) return false;
  fwrite(dot.data(), 1, dot.size(), p);
  return pclose(p) == 0;
}

}  // namespace

TEST_CASE("the alternating automaton of a bare proposition draws three nodes") {
  std::string dot = exportDot(build_aba(parse_formula("p"), {"p"}));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count_nodes(dot) == 3);  // the state plus the tt and ff sinks
  CHECK(dot.find("\"tt\"") != std::string::npos);
  CHECK(dot.find("\"ff\"") != std::string::npos);
  CHECK(graphviz_accepts(dot));
}

TEST_CASE("conjunctive transitions get grouping nodes") {
  std::string dot = exportDot(build_aba(parse_formula("[ tt ] p & < tt > q"), {"p", "q"}));
  CHECK(dot.find("shape=point") != std::string::npos);
  CHECK(graphviz_accepts(dot));
  // A purely disjunctive formula needs none.
  std::string flat = exportDot(build_aba(parse_formula("p | q"), {"p", "q"}));
  CHECK(flat.find("shape=point") == std::string::npos);
}

TEST_CASE("the changepoint view automaton draws six nodes") {
  std::string dot = exportDot(changepoint_automaton("p"));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count_nodes(dot) == 6);
  CHECK(graphviz_accepts(dot));
}

TEST_CASE("deterministic automata show parity colors") {
  Dpa dpa = determinize(mh_to_nba(build_aba(parse_formula("< tt* > p"), {"p"})));
  std::string dot = exportDot(dpa);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count_nodes(dot) == static_cast<std::size_t>(dpa.size()));
  CHECK(dot.find("color ") != std::string::npos);
  CHECK(graphviz_accepts(dot));
}

TEST_CASE("product graphs and parity games export") {
  SystemDescription sys = parse_system(
      "props req\nstate s0 { req }\nstate s1 { }\ninit s0\nedge s0 s1\nedge s1 s0\n");
  McAnalysis an = modelCheckAnalysis(sys, parse_formula("[ tt* ] < tt* > req"));
  std::string dot = exportDot(an.graph);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count_nodes(dot) == static_cast<std::size_t>(an.graph.size()));
  CHECK(graphviz_accepts(dot));

  ParityGame g;
  g.add_vertex(0, 2);
  g.add_vertex(1, 1);
  g.succ[0] = {1};
  g.succ[1] = {0};
  std::string gd = exportDot(g);
  CHECK(gd.rfind("digraph", 0) == 0);
  CHECK(gd.find("shape=box") != std::string::npos);
  CHECK(gd.find("shape=ellipse") != std::string::npos);
  CHECK(graphviz_accepts(gd));
}

TEST_CASE("transducers export their reaction edges") {
  RealizeResult res = realize(parse_formula("[ tt* ] (req -> < tt* > resp)"), {"req"}, {"resp"});
  REQUIRE(res.realizable);
  std::string dot = exportDot(*res.transducer);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count_nodes(dot) == static_cast<std::size_t>(res.transducer->size()));
  CHECK(dot.find(" / ") != std::string::npos);
  CHECK(graphviz_accepts(dot));
}
