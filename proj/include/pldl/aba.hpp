#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pldl/formula.hpp"
#include "pldl/nfa.hpp"
#include "pldl/posbool.hpp"
#include "pldl/syntax.hpp"

namespace pldl {

/// Alternating Büchi automaton over proposition-set letters. Letters are
/// bitmasks over `props`; transition formulas are positive boolean formulas
/// over states. Regex-copy states carry a region tag used by the counter
/// translation.
struct Aba {
  struct RegionInfo {
    bool is_box = false;
    bool parameterized = false;
    std::string var;
  };

  std::vector<std::string> props;  // sorted universe
  int initial = 0;
  std::vector<char> accepting;
  std::vector<std::vector<PbPtr>> delta;  // [state][letter mask]
  std::vector<int> region;                // -1 when not a regex-copy state
  std::vector<RegionInfo> regions;
  std::vector<std::string> state_names;

  int size() const { return static_cast<int>(accepting.size()); }
  int num_letters() const { return 1 << props.size(); }

  Letter letter_of(unsigned mask) const {
    Letter a;
    for (std::size_t i = 0; i < props.size(); ++i)
      if (mask & (1u << i)) a.insert(props[i]);
    return a;
  }

  unsigned mask_of(const Letter& a) const {
    unsigned m = 0;
    for (std::size_t i = 0; i < props.size(); ++i)
      if (a.count(props[i])) m |= 1u << i;
    return m;
  }
};

namespace detail {

struct AbaBuilder {
  Aba& aba;
  std::string cp_color;
  std::vector<Letter> letters;

  int add_state(std::string name, bool acc, int region) {
    aba.accepting.push_back(acc ? 1 : 0);
    aba.delta.emplace_back(aba.num_letters(), pb_false());
    aba.region.push_back(region);
    aba.state_names.push_back(std::move(name));
    return aba.size() - 1;
  }

  int build(const FormulaPtr& phi) {
    switch (phi->kind) {
      case FormulaKind::True: {
        int q = add_state("tt", true, -1);
        for (int a = 0; a < aba.num_letters(); ++a) aba.delta[q][a] = pb_true();
        return q;
      }
      case FormulaKind::False: {
        int q = add_state("ff", false, -1);
        return q;  // delta stays ff
      }
      case FormulaKind::Atom:
      case FormulaKind::NegAtom: {
        bool neg = phi->kind == FormulaKind::NegAtom;
        int q = add_state((neg ? "!" : "") + phi->atom, false, -1);
        for (int a = 0; a < aba.num_letters(); ++a) {
          bool holds = letters[a].count(phi->atom) != 0;
          aba.delta[q][a] = (holds != neg) ? pb_true() : pb_false();
        }
        return q;
      }
      case FormulaKind::And:
      case FormulaKind::Or: {
        int l = build(phi->lhs);
        int r = build(phi->rhs);
        bool conj = phi->kind == FormulaKind::And;
        int q = add_state(conj ? "and" : "or", false, -1);
        for (int a = 0; a < aba.num_letters(); ++a)
          aba.delta[q][a] =
              conj ? pb_and(aba.delta[l][a], aba.delta[r][a]) : pb_or(aba.delta[l][a], aba.delta[r][a]);
        return q;
      }
      case FormulaKind::Diamond:
        return build_modal(phi, /*box=*/false, /*cp=*/false, /*parameterized=*/false);
      case FormulaKind::Box:
        return build_modal(phi, /*box=*/true, /*cp=*/false, /*parameterized=*/false);
      case FormulaKind::DiamondCp:
        return build_modal(phi, /*box=*/false, /*cp=*/true, /*parameterized=*/false);
      case FormulaKind::BoxCp:
        return build_modal(phi, /*box=*/true, /*cp=*/true, /*parameterized=*/false);
      case FormulaKind::DiamondLe:
        return build_modal(phi, /*box=*/false, /*cp=*/false, /*parameterized=*/true);
      case FormulaKind::BoxLe:
        return build_modal(phi, /*box=*/true, /*cp=*/false, /*parameterized=*/true);
    }
    throw std::logic_error("unreachable formula kind");
  }

  int build_modal(const FormulaPtr& phi, bool box, bool cp, bool parameterized) {
    // Sub-automata for the body and for the (for boxes: negated) tests.
    int body_init = build(phi->lhs);
    std::map<FormulaPtr, int, FormulaLess> test_inits;
    collect_test_inits(phi->regex, box, test_inits);

    MarkedNfa nfa = thompson(phi->regex);
    RegexNfa rnfa = cp ? cp_product(nfa, cp_color) : to_regex_nfa(nfa);

    int region_id = static_cast<int>(aba.regions.size());
    aba.regions.push_back({box, parameterized, parameterized ? phi->var : std::string{}});

    int base = aba.size();
    for (int q = 0; q < rnfa.size(); ++q)
      add_state("r" + std::to_string(region_id) + "." + std::to_string(q), box, region_id);

    std::vector<char> is_final(rnfa.size(), 0);
    for (int f : rnfa.finals) is_final[f] = 1;

    for (int q = 0; q < rnfa.size(); ++q) {
      std::vector<MarkingSets> paths = epsilon_paths(rnfa, q);
      for (int a = 0; a < aba.num_letters(); ++a) {
        std::vector<PbPtr> outer;
        for (int t = 0; t < rnfa.size(); ++t) {
          for (const MarkingSet& m : paths[t]) {
            PbPtr tests = test_obligation(m, a, box, test_inits);
            // Letter edges leaving the ε-path's endpoint.
            for (const auto& e : rnfa.letter_edges[t]) {
              if (!prop_eval(e.label, letters[a])) continue;
              PbPtr succ = pb_state(base + e.target);
              outer.push_back(box ? pb_or(succ, tests) : pb_and(succ, tests));
            }
            // Paths reaching a final state reroute into the body automaton.
            if (is_final[t]) {
              PbPtr b = aba.delta[body_init][a];
              outer.push_back(box ? pb_or(b, tests) : pb_and(b, tests));
            }
          }
        }
        aba.delta[base + q][a] = box ? pb_big_and(outer) : pb_big_or(outer);
      }
    }
    return base + rnfa.initial;
  }

  // For diamonds the path's tests are conjoined positively; for boxes the
  // negated tests release the obligation disjunctively.
  PbPtr test_obligation(const MarkingSet& m, int a, bool box,
                        const std::map<FormulaPtr, int, FormulaLess>& test_inits) {
    PbPtr acc = box ? pb_false() : pb_true();
    for (const FormulaPtr& theta : m) {
      PbPtr entry = aba.delta[test_inits.at(theta)][a];
      acc = box ? pb_or(acc, entry) : pb_and(acc, entry);
    }
    return acc;
  }

  void collect_test_inits(const RegexPtr& r, bool box, std::map<FormulaPtr, int, FormulaLess>& out) {
    switch (r->kind) {
      case RegexKind::Prop: return;
      case RegexKind::Test:
        if (!out.count(r->test)) out.emplace(r->test, build(box ? negate(r->test) : r->test));
        return;
      case RegexKind::Union:
      case RegexKind::Concat:
        collect_test_inits(r->lhs, box, out);
        collect_test_inits(r->rhs, box, out);
        return;
      case RegexKind::Star: collect_test_inits(r->lhs, box, out); return;
    }
  }
};

inline Aba build_aba_any(const FormulaPtr& phi, std::vector<std::string> props, const std::string& cp_color) {
  Aba aba;
  aba.props = std::move(props);
  AbaBuilder b{aba, cp_color};
  b.letters.reserve(aba.num_letters());
  for (int a = 0; a < aba.num_letters(); ++a) b.letters.push_back(aba.letter_of(a));
  aba.initial = b.build(phi);
  return aba;
}

}  // namespace detail

/// Translation of a variable-free (LDL or LDL_cp) formula into an alternating
/// Büchi automaton with linearly many states.
inline Aba build_aba(const FormulaPtr& phi, std::vector<std::string> props, const std::string& cp_color = "p") {
  VariableSets vs = variables(phi);
  if (!vs.diamond.empty() || !vs.box.empty())
    throw std::invalid_argument("build_aba: formula contains parameterized operators");
  return detail::build_aba_any(phi, std::move(props), cp_color);
}

/// Variant used by the counter translation: parameterized operators are
/// admitted, their regex copies tagged with variable-carrying regions.
inline Aba build_aba_with_params(const FormulaPtr& phi, std::vector<std::string> props,
                                 const std::string& cp_color = "p") {
  return detail::build_aba_any(phi, std::move(props), cp_color);
}

/// Weakness check: every SCC of the state graph (edges = literals of the
/// transition formulas) is uniformly accepting or uniformly rejecting.
inline bool aba_is_weak(const Aba& aba) {
  int n = aba.size();
  std::vector<std::vector<int>> adj(n);
  for (int q = 0; q < n; ++q) {
    std::vector<int> succ;
    for (int a = 0; a < aba.num_letters(); ++a) pb_states(aba.delta[q][a], succ);
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    adj[q] = std::move(succ);
  }
  // Tarjan SCC, iterative.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;
  struct Frame {
    int v;
    std::size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& fr = frames.back();
      if (fr.child < adj[fr.v].size()) {
        int w = adj[fr.v][fr.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
      } else {
        if (low[fr.v] == index[fr.v]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = next_comp;
            if (w == fr.v) break;
          }
          ++next_comp;
        }
        int v = fr.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  std::vector<int> scc_acc(next_comp, -1);
  for (int q = 0; q < n; ++q) {
    int c = comp[q];
    int acc = aba.accepting[q] ? 1 : 0;
    if (scc_acc[c] == -1) scc_acc[c] = acc;
    else if (scc_acc[c] != acc) return false;
  }
  return true;
}

}  // namespace pldl
