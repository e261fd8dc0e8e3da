#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "pldl/formula.hpp"

namespace pldl {

/// ε-NFA with markings for a regex: propositional edges consume a letter,
/// ε-edges do not, and marked states carry the test that must hold when a
/// path passes through them. Unique final state without outgoing edges.
struct MarkedNfa {
  struct Edge {
    PropPtr label;
    int target;
  };

  int initial = 0;
  int final_state = 0;
  std::vector<std::optional<FormulaPtr>> marking;
  std::vector<std::vector<Edge>> letter_edges;
  std::vector<std::vector<int>> eps_edges;

  int size() const { return static_cast<int>(marking.size()); }

  int add_state() {
    marking.emplace_back();
    letter_edges.emplace_back();
    eps_edges.emplace_back();
    return size() - 1;
  }
};

/// Variant with several final states, produced by the changepoint product.
struct RegexNfa {
  using Edge = MarkedNfa::Edge;

  int initial = 0;
  std::vector<int> finals;
  std::vector<std::optional<FormulaPtr>> marking;
  std::vector<std::vector<Edge>> letter_edges;
  std::vector<std::vector<int>> eps_edges;

  int size() const { return static_cast<int>(marking.size()); }
};

inline RegexNfa to_regex_nfa(const MarkedNfa& a) {
  RegexNfa out;
  out.initial = a.initial;
  out.finals = {a.final_state};
  out.marking = a.marking;
  out.letter_edges = a.letter_edges;
  out.eps_edges = a.eps_edges;
  return out;
}

// ---- Thompson construction -------------------------------------------------

namespace detail {

// Appends the automaton for r to nfa, returning (initial, final) indices.
inline std::pair<int, int> thompson_rec(const RegexPtr& r, MarkedNfa& nfa) {
  switch (r->kind) {
    case RegexKind::Prop: {
      int i = nfa.add_state();
      int f = nfa.add_state();
      nfa.letter_edges[i].push_back({r->prop, f});
      return {i, f};
    }
    case RegexKind::Test: {
      int q = nfa.add_state();
      nfa.marking[q] = r->test;
      return {q, q};
    }
    case RegexKind::Union: {
      auto [ia, fa] = thompson_rec(r->lhs, nfa);
      auto [ib, fb] = thompson_rec(r->rhs, nfa);
      int i = nfa.add_state();
      int f = nfa.add_state();
      nfa.eps_edges[i].push_back(ia);
      nfa.eps_edges[i].push_back(ib);
      nfa.eps_edges[fa].push_back(f);
      nfa.eps_edges[fb].push_back(f);
      return {i, f};
    }
    case RegexKind::Concat: {
      auto [ia, fa] = thompson_rec(r->lhs, nfa);
      auto [ib, fb] = thompson_rec(r->rhs, nfa);
      nfa.eps_edges[fa].push_back(ib);
      return {ia, fb};
    }
    case RegexKind::Star: {
      auto [ia, fa] = thompson_rec(r->lhs, nfa);
      int i = nfa.add_state();
      int f = nfa.add_state();
      nfa.eps_edges[i].push_back(ia);
      nfa.eps_edges[i].push_back(f);     // skip
      nfa.eps_edges[fa].push_back(ia);   // back
      nfa.eps_edges[fa].push_back(f);
      return {i, f};
    }
  }
  return {0, 0};
}

}  // namespace detail

inline MarkedNfa thompson(const RegexPtr& r) {
  MarkedNfa nfa;
  auto [i, f] = detail::thompson_rec(r, nfa);
  nfa.initial = i;
  nfa.final_state = f;
  return nfa;
}

// ---- ε-path enumeration ----------------------------------------------------

/// A marking set: the tests collected along one ε-path, sorted and deduplicated.
using MarkingSet = std::vector<FormulaPtr>;

struct MarkingSetLess {
  bool operator()(const MarkingSet& a, const MarkingSet& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const FormulaPtr& x, const FormulaPtr& y) {
                                          return formula_compare(x, y) < 0;
                                        });
  }
};

using MarkingSets = std::set<MarkingSet, MarkingSetLess>;

/// For every state reachable from q by ε-edges alone, the distinct marking sets
/// achievable via simple ε-paths. The path's endpoints contribute their
/// markings as well (a path consisting of q alone yields {m(q)}).
inline std::vector<MarkingSets> epsilon_paths(const RegexNfa& nfa, int q) {
  std::vector<MarkingSets> out(nfa.size());
  std::vector<char> on_path(nfa.size(), 0);

  struct Dfs {
    const RegexNfa& nfa;
    std::vector<MarkingSets>& out;
    std::vector<char>& on_path;

    void go(int v, MarkingSet acc) {
      if (nfa.marking[v]) {
        const FormulaPtr& m = *nfa.marking[v];
        auto it = std::lower_bound(acc.begin(), acc.end(), m, [](const FormulaPtr& x, const FormulaPtr& y) {
          return formula_compare(x, y) < 0;
        });
        if (it == acc.end() || !formula_equal(*it, m)) acc.insert(it, m);
      }
      out[v].insert(acc);
      on_path[v] = 1;
      for (int w : nfa.eps_edges[v])
        if (!on_path[w]) go(w, acc);
      on_path[v] = 0;
    }
  };

  Dfs dfs{nfa, out, on_path};
  dfs.go(q, {});
  return out;
}

inline std::vector<MarkingSets> epsilon_paths(const MarkedNfa& nfa, int q) {
  return epsilon_paths(to_regex_nfa(nfa), q);
}

// ---- changepoint automaton -------------------------------------------------

/// Six-state DFA over the color proposition tracking how many times the color
/// flips inside the infix read so far. All states except the sink accept.
struct CpDfa {
  static constexpr int kStates = 6;
  static constexpr int kEmpty = 0;  // no letter read yet
  static constexpr int kSink = 5;  // more than one flip

  // 1,2: last color false/true, no flip yet; 3,4: same with one flip seen.
  static int step(int s, bool color) {
    switch (s) {
      case kEmpty: return color ? 2 : 1;
      case 1: return color ? 3 : 1;
      case 2: return color ? 2 : 4;
      case 3: return color ? 3 : kSink;
      case 4: return color ? kSink : 4;
      default: return kSink;
    }
  }

  static bool accepting(int s) { return s != kSink; }
};

/// Product of a regex automaton with the changepoint DFA for the given color.
/// ε-moves leave the DFA component unchanged; letter edges split on the color.
inline RegexNfa cp_product(const MarkedNfa& a, const std::string& color) {
  RegexNfa out;
  auto index = [&](int q, int c) { return q * CpDfa::kStates + c; };
  int n = a.size() * CpDfa::kStates;
  out.marking.resize(n);
  out.letter_edges.resize(n);
  out.eps_edges.resize(n);
  PropPtr col = prop_atom(color);
  PropPtr ncol = prop_not(col);
  for (int q = 0; q < a.size(); ++q) {
    for (int c = 0; c < CpDfa::kStates; ++c) {
      int v = index(q, c);
      out.marking[v] = a.marking[q];
      for (int w : a.eps_edges[q]) out.eps_edges[v].push_back(index(w, c));
      for (const auto& e : a.letter_edges[q]) {
        out.letter_edges[v].push_back({prop_and(e.label, col), index(e.target, CpDfa::step(c, true))});
        out.letter_edges[v].push_back({prop_and(e.label, ncol), index(e.target, CpDfa::step(c, false))});
      }
    }
  }
  out.initial = index(a.initial, CpDfa::kEmpty);
  for (int c = 0; c < CpDfa::kStates; ++c)
    if (CpDfa::accepting(c)) out.finals.push_back(index(a.final_state, c));
  return out;
}

}  // namespace pldl
