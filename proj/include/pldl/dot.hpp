#pragma once

#include <string>
#include <vector>

#include "pldl/aba.hpp"
#include "pldl/dpa.hpp"
#include "pldl/modelcheck.hpp"
#include "pldl/nba.hpp"
#include "pldl/realizability.hpp"
#include "pldl/syntax.hpp"

namespace pldl {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string dot_node(const std::string& id, const std::string& label, const std::string& attrs) {
  std::string out = "  " + id + " [label=\"" + dot_escape(label) + "\"";
  if (!attrs.empty()) out += " " + attrs;
  return out + "];\n";
}

inline std::string dot_edge(const std::string& from, const std::string& to, const std::string& label) {
  std::string out = "  " + from + " -> " + to;
  if (!label.empty()) out += " [label=\"" + dot_escape(label) + "\"]";
  return out + ";\n";
}

}  // namespace detail

/// Alternating automaton: one edge per disjunct of the transition formula,
/// with an auxiliary grouping node when a disjunct sends several copies.
/// Constant transitions lead to tt/ff sink nodes (emitted only when used).
inline std::string exportDot(const Aba& aba) {
  std::string nodes, edges;
  bool need_tt = false, need_ff = false;
  int groups = 0;
  for (int q = 0; q < aba.size(); ++q) {
    std::string id = "q" + std::to_string(q);
    std::string attrs = aba.accepting[q] ? "shape=doublecircle" : "shape=circle";
    if (q == aba.initial) attrs += " penwidth=2";
    nodes += detail::dot_node(id, aba.state_names[q], attrs);
    for (int a = 0; a < aba.num_letters(); ++a) {
      std::string letter = print_letter(aba.letter_of(static_cast<unsigned>(a)));
      std::vector<StateSet> disjuncts = minimal_models(aba.delta[q][a]);
      if (disjuncts.empty()) {
        need_ff = true;
        edges += detail::dot_edge(id, "ff", letter);
        continue;
      }
      for (const StateSet& d : disjuncts) {
        if (d.empty()) {
          need_tt = true;
          edges += detail::dot_edge(id, "tt", letter);
        } else if (d.size() == 1) {
          edges += detail::dot_edge(id, "q" + std::to_string(d[0]), letter);
        } else {
          std::string g = "and" + std::to_string(groups++);
          nodes += detail::dot_node(g, "", "shape=point");
          edges += detail::dot_edge(id, g, letter);
          for (int t : d) edges += detail::dot_edge(g, "q" + std::to_string(t), "");
        }
      }
    }
  }
  if (need_tt) nodes += detail::dot_node("tt", "tt", "shape=doublecircle");
  if (need_ff) nodes += detail::dot_node("ff", "ff", "shape=circle");
  return "digraph aba {\n  rankdir=LR;\n" + nodes + edges + "}\n";
}

inline std::string exportDot(const Nba& nba) {
  std::string out = "digraph nba {\n  rankdir=LR;\n";
  for (int q = 0; q < nba.size(); ++q) {
    std::string attrs = nba.accepting[q] ? "shape=doublecircle" : "shape=circle";
    if (q == nba.initial) attrs += " penwidth=2";
    out += detail::dot_node("q" + std::to_string(q), nba.state_names[q], attrs);
  }
  for (int q = 0; q < nba.size(); ++q)
    for (int a = 0; a < nba.num_letters(); ++a)
      for (int t : nba.delta[q][a])
        out += detail::dot_edge("q" + std::to_string(q), "q" + std::to_string(t),
                                print_letter(nba.letter_of(static_cast<unsigned>(a))));
  return out + "}\n";
}

inline std::string exportDot(const Dpa& dpa) {
  std::string out = "digraph dpa {\n  rankdir=LR;\n";
  for (int q = 0; q < dpa.size(); ++q) {
    std::string attrs = "shape=circle";
    if (q == dpa.initial) attrs += " penwidth=2";
    out += detail::dot_node("q" + std::to_string(q),
                            dpa.state_names[q] + "\ncolor " + std::to_string(dpa.color[q]), attrs);
  }
  for (int q = 0; q < dpa.size(); ++q)
    for (int a = 0; a < dpa.num_letters(); ++a)
      out += detail::dot_edge("q" + std::to_string(q), "q" + std::to_string(dpa.delta[q][a]),
                              print_letter(dpa.letter_of(static_cast<unsigned>(a))));
  return out + "}\n";
}

inline std::string exportDot(const ColoredGraph& g) {
  std::string out = "digraph product {\n  rankdir=LR;\n";
  for (int v = 0; v < g.size(); ++v) {
    std::string label = "v" + std::to_string(v) + "\n";
    label += g.label_p[v] ? "p" : "!p";
    if (g.degree == 2) label += g.label_q[v] ? " q" : " !q";
    std::string sets;
    if (g.f0[v]) sets += " F0";
    if (g.degree == 2 && g.f1[v]) sets += " F1";
    if (!sets.empty()) label += "\n" + sets.substr(1);
    label += "\n" + print_letter(g.trace[v]);
    std::string attrs = g.f0[v] ? "shape=doublecircle" : "shape=circle";
    if (v == g.initial) attrs += " penwidth=2";
    out += detail::dot_node("v" + std::to_string(v), label, attrs);
  }
  for (int v = 0; v < g.size(); ++v)
    for (int t : g.adj[v]) out += detail::dot_edge("v" + std::to_string(v), "v" + std::to_string(t), "");
  return out + "}\n";
}

inline std::string exportDot(const ParityGame& g) {
  std::string out = "digraph game {\n  rankdir=LR;\n";
  for (int v = 0; v < g.size(); ++v) {
    std::string attrs = g.owner[v] == 0 ? "shape=ellipse" : "shape=box";
    if (v == g.initial) attrs += " penwidth=2";
    out += detail::dot_node("v" + std::to_string(v),
                            "v" + std::to_string(v) + "\ncolor " + std::to_string(g.color[v]), attrs);
  }
  for (int v = 0; v < g.size(); ++v)
    for (int t : g.succ[v]) out += detail::dot_edge("v" + std::to_string(v), "v" + std::to_string(t), "");
  return out + "}\n";
}

inline std::string exportDot(const Transducer& t) {
  std::string out = "digraph transducer {\n  rankdir=LR;\n";
  for (int s = 0; s < t.size(); ++s) {
    std::string attrs = "shape=circle";
    if (s == t.initial) attrs += " penwidth=2";
    out += detail::dot_node("s" + std::to_string(s), "s_" + std::to_string(s), attrs);
  }
  for (int s = 0; s < t.size(); ++s)
    for (std::size_t i = 0; i < t.steps[s].size(); ++i) {
      Letter in;
      for (std::size_t k = 0; k < t.inputs.size(); ++k)
        if (i & (1u << k)) in.insert(t.inputs[k]);
      out += detail::dot_edge("s" + std::to_string(s), "s" + std::to_string(t.steps[s][i].next),
                              print_letter(in) + " / " + print_letter(t.steps[s][i].emit));
    }
  return out + "}\n";
}

}  // namespace pldl
