#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pldl/dpa.hpp"
#include "pldl/modelcheck.hpp"
#include "pldl/nba.hpp"
#include "pldl/syntax.hpp"

namespace pldl {

// ---- parity games ------------------------------------------------------------

/// Max-parity game: player 0 wins a play iff the maximum color occurring
/// infinitely often is even. Every vertex must have at least one successor.
struct ParityGame {
  std::vector<int> owner;  // 0 or 1: who picks the successor
  std::vector<int> color;
  std::vector<std::vector<int>> succ;
  int initial = 0;

  int size() const { return static_cast<int>(owner.size()); }

  int add_vertex(int own, int col) {
    owner.push_back(own);
    color.push_back(col);
    succ.emplace_back();
    return size() - 1;
  }
};

/// Positional solution: per-vertex winner, and for vertices owned by their
/// winner the index of the chosen edge in `succ`.
struct ParitySolution {
  std::vector<int> winner;
  std::vector<int> strategy;  // index into succ[v], or -1
};

namespace detail {

struct ZielonkaSolver {
  const ParityGame& g;
  ParitySolution sol;

  explicit ZielonkaSolver(const ParityGame& game) : g(game) {
    sol.winner.assign(g.size(), -1);
    sol.strategy.assign(g.size(), -1);
  }

  // Attractor of `target` for player sigma within `active`; marks attracted
  // vertices in `target` and records sigma's edge choices for newly pulled
  // sigma-vertices.
  void attract(std::vector<char>& active, std::vector<char>& target, int sigma) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < g.size(); ++v) {
        if (!active[v] || target[v]) continue;
        if (g.owner[v] == sigma) {
          for (std::size_t k = 0; k < g.succ[v].size(); ++k) {
            int t = g.succ[v][k];
            if (active[t] && target[t]) {
              target[v] = 1;
              sol.strategy[v] = static_cast<int>(k);
              changed = true;
              break;
            }
          }
        } else {
          bool all = true;
          for (int t : g.succ[v])
            if (active[t] && !target[t]) all = false;
          if (all) {
            target[v] = 1;
            changed = true;
          }
        }
      }
    }
  }

  void solve(std::vector<char> active) {
    int m = -1;
    for (int v = 0; v < g.size(); ++v)
      if (active[v] && g.color[v] > m) m = g.color[v];
    if (m < 0) return;
    int sigma = m % 2 == 0 ? 0 : 1;

    std::vector<char> a(g.size(), 0);
    for (int v = 0; v < g.size(); ++v)
      if (active[v] && g.color[v] == m) a[v] = 1;
    attract(active, a, sigma);

    std::vector<char> rest = active;
    for (int v = 0; v < g.size(); ++v)
      if (a[v]) rest[v] = 0;
    solve(rest);

    std::vector<char> opp(g.size(), 0);
    bool any_opp = false;
    for (int v = 0; v < g.size(); ++v)
      if (rest[v] && sol.winner[v] == 1 - sigma) {
        opp[v] = 1;
        any_opp = true;
      }

    if (!any_opp) {
      for (int v = 0; v < g.size(); ++v) {
        if (!active[v]) continue;
        if (a[v]) {
          sol.winner[v] = sigma;
          // Top-color sigma-vertices may take any edge staying in the region.
          // Always reassign: a leftover choice from an abandoned recursive
          // attempt may point outside the current region.
          if (g.owner[v] == sigma && g.color[v] == m) {
            sol.strategy[v] = -1;
            for (std::size_t k = 0; k < g.succ[v].size(); ++k)
              if (active[g.succ[v][k]]) {
                sol.strategy[v] = static_cast<int>(k);
                break;
              }
          }
        }
      }
      return;
    }

    attract(active, opp, 1 - sigma);
    std::vector<char> next = active;
    for (int v = 0; v < g.size(); ++v)
      if (opp[v]) {
        sol.winner[v] = 1 - sigma;
        next[v] = 0;
      }
    solve(next);
  }
};

}  // namespace detail

inline ParitySolution solve_parity(const ParityGame& g) {
  for (int v = 0; v < g.size(); ++v)
    if (g.succ[v].empty()) throw std::invalid_argument("solve_parity: dead-end vertex");
  detail::ZielonkaSolver z(g);
  std::vector<char> all(g.size(), 1);
  z.solve(std::move(all));
  // Winners must form a partition (determinacy); strategies must exist where
  // the owner wins.
  for (int v = 0; v < g.size(); ++v) {
    if (z.sol.winner[v] < 0) throw std::logic_error("solve_parity: unassigned vertex");
    if (g.owner[v] == z.sol.winner[v] && z.sol.strategy[v] < 0)
      throw std::logic_error("solve_parity: missing strategy");
  }
  return std::move(z.sol);
}

/// Checks that player 0's claimed region is closed and that the strategy
/// admits no cycle whose maximum color is odd.
inline bool parity_solution_sound(const ParityGame& g, const ParitySolution& sol) {
  int n = g.size();
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v) {
    if (sol.winner[v] != 0) continue;
    if (g.owner[v] == 0) {
      int t = g.succ[v][sol.strategy[v]];
      if (sol.winner[t] != 0) return false;
      adj[v].push_back(t);
    } else {
      for (int t : g.succ[v]) {
        if (sol.winner[t] != 0) return false;  // region not closed
        adj[v].push_back(t);
      }
    }
  }
  int maxc = 0;
  for (int v = 0; v < n; ++v) maxc = std::max(maxc, g.color[v]);
  for (int c = 1; c <= maxc; c += 2) {
    // No cycle through a color-c vertex using only colors <= c.
    std::vector<std::vector<int>> sub(n);
    for (int v = 0; v < n; ++v) {
      if (sol.winner[v] != 0 || g.color[v] > c) continue;
      for (int t : adj[v])
        if (g.color[t] <= c) sub[v].push_back(t);
    }
    detail::SccResult scc = detail::tarjan(sub);
    std::vector<char> cyc(scc.count, 0);
    for (int v = 0; v < n; ++v)
      for (int t : sub[v])
        if (scc.comp[t] == scc.comp[v]) cyc[scc.comp[v]] = 1;
    for (int v = 0; v < n; ++v)
      if (sol.winner[v] == 0 && g.color[v] == c && cyc[scc.comp[v]]) return false;
  }
  return true;
}

// ---- synthesis arena ---------------------------------------------------------

/// Game arena over a deterministic parity automaton: the input player (player
/// 1) first picks a subset of the inputs, then the output player (player 0)
/// picks a subset of the outputs, and the automaton reads the union.
struct SynthesisArena {
  ParityGame game;
  std::vector<std::string> inputs, outputs;
  int states = 0;                 // automaton states; vertex q is state q
  // Vertex |Q| + q * 2^{|I|} + i is the choice vertex for (q, input set i).
  int v0_of(int q) const { return q; }
  int v1_of(int q, int i) const {
    return states + q * (1 << inputs.size()) + i;
  }
};

inline SynthesisArena build_arena(const Dpa& dpa, const std::vector<std::string>& inputs,
                                  const std::vector<std::string>& outputs) {
  SynthesisArena ar;
  ar.inputs = inputs;
  ar.outputs = outputs;
  ar.states = dpa.size();
  int ni = 1 << inputs.size(), no = 1 << outputs.size();
  for (int q = 0; q < dpa.size(); ++q) ar.game.add_vertex(1, dpa.color[q]);
  for (int q = 0; q < dpa.size(); ++q)
    for (int i = 0; i < ni; ++i) ar.game.add_vertex(0, dpa.color[q]);
  for (int q = 0; q < dpa.size(); ++q) {
    for (int i = 0; i < ni; ++i) ar.game.succ[ar.v0_of(q)].push_back(ar.v1_of(q, i));
    for (int i = 0; i < ni; ++i)
      for (int o = 0; o < no; ++o) {
        Letter letter;
        for (std::size_t k = 0; k < inputs.size(); ++k)
          if (i & (1 << k)) letter.insert(inputs[k]);
        for (std::size_t k = 0; k < outputs.size(); ++k)
          if (o & (1 << k)) letter.insert(outputs[k]);
        int q2 = dpa.delta[q][dpa.mask_of(letter)];
        ar.game.succ[ar.v1_of(q, i)].push_back(ar.v0_of(q2));
      }
  }
  ar.game.initial = ar.v0_of(dpa.initial);
  return ar;
}

// ---- transducers -------------------------------------------------------------

/// Moore-style strategy machine: after reading each input letter it emits an
/// output letter and moves on; the first output follows the first input.
struct Transducer {
  std::vector<std::string> inputs, outputs;
  int initial = 0;
  struct Step {
    int next = 0;
    Letter emit;
  };
  // Per state, indexed by input-subset number over `inputs`.
  std::vector<std::vector<Step>> steps;

  int size() const { return static_cast<int>(steps.size()); }

  int input_index(const Letter& in) const {
    int i = 0;
    for (std::size_t k = 0; k < inputs.size(); ++k)
      if (in.count(inputs[k])) i |= 1 << k;
    return i;
  }
};

inline std::string print_transducer(const Transducer& t) {
  std::string out = "transducer states " + std::to_string(t.size()) + " initial s_" +
                    std::to_string(t.initial) + "\n";
  for (int s = 0; s < t.size(); ++s)
    for (std::size_t i = 0; i < t.steps[s].size(); ++i) {
      Letter in;
      for (std::size_t k = 0; k < t.inputs.size(); ++k)
        if (i & (1u << k)) in.insert(t.inputs[k]);
      out += "s_" + std::to_string(s) + ": on " + print_letter(in) + " -> goto s_" +
             std::to_string(t.steps[s][i].next) + " emit " + print_letter(t.steps[s][i].emit) + "\n";
    }
  return out;
}

/// Closed-loop trace of the transducer against an ultimately periodic input
/// word; each letter of the result is the input joined with the emitted
/// output.
inline LassoWord transducer_run(const Transducer& t, const LassoWord& input) {
  std::map<std::pair<int, std::size_t>, std::size_t> seen;
  std::vector<Letter> trace;
  int state = t.initial;
  std::size_t pos = 0;
  for (;;) {
    std::size_t red = input.reduce(pos);
    auto key = std::make_pair(state, red);
    auto it = seen.find(key);
    if (it != seen.end()) {
      LassoWord w;
      w.prefix.assign(trace.begin(), trace.begin() + static_cast<long>(it->second));
      w.cycle.assign(trace.begin() + static_cast<long>(it->second), trace.end());
      return w;
    }
    seen.emplace(key, trace.size());
    Letter in = input.letter_at(pos);
    const Transducer::Step& st = t.steps[state][t.input_index(in)];
    Letter combined = in;
    for (const auto& p : st.emit) combined.insert(p);
    trace.push_back(std::move(combined));
    state = st.next;
    ++pos;
  }
}

// ---- realizability -----------------------------------------------------------

struct RealizeResult {
  bool realizable = false;
  std::optional<Transducer> transducer;
  std::optional<Valuation> valuation;
};

namespace detail {

/// Extracts the output player's positional strategy as a Moore machine; only
/// vertices reachable under the strategy become states. `strip` is removed
/// from emitted letters.
inline Transducer extract_transducer(const SynthesisArena& ar, const ParitySolution& sol,
                                     const std::string& strip) {
  Transducer t;
  t.inputs = ar.inputs;
  t.outputs = ar.outputs;
  std::vector<std::string> raw_outputs = ar.outputs;
  t.outputs.erase(std::remove(t.outputs.begin(), t.outputs.end(), strip), t.outputs.end());

  std::map<int, int> state_of;  // automaton state -> transducer state
  std::vector<int> order;
  auto intern = [&](int q) {
    auto [it, fresh] = state_of.emplace(q, static_cast<int>(order.size()));
    if (fresh) order.push_back(q);
    return it->second;
  };
  int ni = 1 << ar.inputs.size();
  t.initial = intern(ar.game.initial);
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    int q = order[idx];
    std::vector<Transducer::Step> row(ni);
    for (int i = 0; i < ni; ++i) {
      int v1 = ar.v1_of(q, i);
      int choice = sol.strategy[v1];
      int omask = choice;  // successors of choice vertices are in output order
      int q2 = ar.game.succ[v1][choice];
      Transducer::Step step;
      step.next = 0;  // patched after interning
      for (std::size_t k = 0; k < raw_outputs.size(); ++k)
        if ((omask & (1 << k)) && raw_outputs[k] != strip) step.emit.insert(raw_outputs[k]);
      step.next = intern(q2);
      row[i] = std::move(step);
    }
    if (t.steps.size() <= idx) t.steps.resize(idx + 1);
    t.steps[idx] = std::move(row);
  }
  return t;
}

}  // namespace detail

/// Decides whether the output player can enforce phi at some valuation,
/// reading inputs first and answering with outputs every step. Realizable
/// verdicts carry a strategy machine and a constructive valuation.
inline RealizeResult realize(const FormulaPtr& phi, const std::vector<std::string>& inputs,
                             const std::vector<std::string>& outputs) {
  if (!is_well_formed(phi)) throw std::invalid_argument("realize: formula is not well-formed");
  FormulaPtr phi2 = eliminate_boxes(phi);
  std::set<std::string> used = propositions(phi);
  for (const auto& p : inputs) used.insert(p);
  for (const auto& p : outputs) used.insert(p);
  std::string color = detail::fresh_prop("p", used);

  FormulaPtr c = color_transform(phi2, color);
  std::vector<std::string> props = inputs;
  props.insert(props.end(), outputs.begin(), outputs.end());
  props.push_back(color);
  Nba nba = nba_prune(mh_to_nba(build_aba(c, props, color)));
  Dpa dpa = determinize(nba);

  // The color guess is on the output player's side.
  std::vector<std::string> outputs_ext = outputs;
  outputs_ext.push_back(color);
  SynthesisArena ar = build_arena(dpa, inputs, outputs_ext);
  ParitySolution sol = solve_parity(ar.game);

  RealizeResult res;
  res.realizable = sol.winner[ar.game.initial] == 0;
  if (res.realizable) {
    res.transducer = detail::extract_transducer(ar, sol, color);
    Valuation alpha;
    long bound = 2L * res.transducer->size() + 2;
    VariableSets vs = variables(phi);
    for (const auto& z : vs.diamond) alpha.set(z, bound);
    for (const auto& z : vs.box) alpha.set(z, 0);
    res.valuation = std::move(alpha);
  }
  return res;
}

/// Exact realizability at the concrete valuation alpha.
inline RealizeResult realQuery(const FormulaPtr& phi, const std::vector<std::string>& inputs,
                               const std::vector<std::string>& outputs, const Valuation& alpha) {
  VariableSets vs = variables(phi);
  for (const auto& z : vs.diamond)
    if (!alpha.values.count(z)) throw std::invalid_argument("realQuery: unassigned variable " + z);
  for (const auto& z : vs.box)
    if (!alpha.values.count(z)) throw std::invalid_argument("realQuery: unassigned variable " + z);

  std::vector<std::string> props = inputs;
  props.insert(props.end(), outputs.begin(), outputs.end());
  Aba aba = build_aba_with_params(phi, props);
  std::map<int, long> bounds;
  for (std::size_t r = 0; r < aba.regions.size(); ++r)
    if (aba.regions[r].parameterized) bounds[static_cast<int>(r)] = alpha.at(aba.regions[r].var);
  Nba nba = nba_prune(counter_breakpoint_auto(aba, bounds));
  Dpa dpa = determinize(nba);
  SynthesisArena ar = build_arena(dpa, inputs, outputs);
  ParitySolution sol = solve_parity(ar.game);

  RealizeResult res;
  res.realizable = sol.winner[ar.game.initial] == 0;
  if (res.realizable) {
    res.transducer = detail::extract_transducer(ar, sol, "");
    res.valuation = alpha;
  }
  return res;
}

/// Game dual: negates the objective and delays every input atom by one step,
/// compensating for the switched move order when inputs and outputs swap
/// roles.
inline FormulaPtr dualize(const FormulaPtr& phi, const std::vector<std::string>& inputs) {
  std::set<std::string> in(inputs.begin(), inputs.end());
  std::function<FormulaPtr(const FormulaPtr&)> shift;
  std::function<RegexPtr(const RegexPtr&)> shift_r = [&](const RegexPtr& r) -> RegexPtr {
    switch (r->kind) {
      case RegexKind::Prop: return r;
      case RegexKind::Test: return r_test(shift(r->test));
      case RegexKind::Union: return r_union(shift_r(r->lhs), shift_r(r->rhs));
      case RegexKind::Concat: return r_concat(shift_r(r->lhs), shift_r(r->rhs));
      case RegexKind::Star: return r_star(shift_r(r->lhs));
    }
    throw std::logic_error("unreachable regex kind");
  };
  shift = [&](const FormulaPtr& f) -> FormulaPtr {
    switch (f->kind) {
      case FormulaKind::True:
      case FormulaKind::False: return f;
      case FormulaKind::Atom:
      case FormulaKind::NegAtom:
        if (in.count(f->atom)) return f_diamond(r_prop(prop_true()), f);
        return f;
      case FormulaKind::And: return f_and(shift(f->lhs), shift(f->rhs));
      case FormulaKind::Or: return f_or(shift(f->lhs), shift(f->rhs));
      case FormulaKind::Diamond: return f_diamond(shift_r(f->regex), shift(f->lhs));
      case FormulaKind::Box: return f_box(shift_r(f->regex), shift(f->lhs));
      case FormulaKind::DiamondLe: return f_diamond_le(shift_r(f->regex), f->var, shift(f->lhs));
      case FormulaKind::BoxLe: return f_box_le(shift_r(f->regex), f->var, shift(f->lhs));
      case FormulaKind::DiamondCp: return f_diamond_cp(shift_r(f->regex), shift(f->lhs));
      case FormulaKind::BoxCp: return f_box_cp(shift_r(f->regex), shift(f->lhs));
    }
    throw std::logic_error("unreachable formula kind");
  };
  return shift(negate(phi));
}

/// Optimal parameter value for realizability: minimal for the diamond
/// fragment, maximal (via the dual game) for the box fragment; all variables
/// are treated as one.
inline OptValue realOptimize(const FormulaPtr& phi, const std::vector<std::string>& inputs,
                             const std::vector<std::string>& outputs) {
  FragmentTag tag = classify(phi);

  auto real_min = [](const FormulaPtr& f, const std::vector<std::string>& ins,
                     const std::vector<std::string>& outs) -> OptValue {
    FormulaPtr renamed = rename_all_vars_to(f, "_z");
    RealizeResult r = realize(renamed, ins, outs);
    if (!r.realizable) return opt_none();
    long upper = 2L * r.transducer->size() + 2;
    long best = detail::binary_search_min(0, upper, [&](long k) {
      Valuation a;
      a.set("_z", k);
      return realQuery(renamed, ins, outs, a).realizable;
    });
    return best < 0 ? opt_none() : opt_of(best);
  };

  if (tag == FragmentTag::PldlDiamond) return real_min(phi, inputs, outputs);
  if (tag == FragmentTag::PldlBox) {
    FormulaPtr dual = dualize(phi, inputs);
    OptValue dmin = real_min(dual, outputs, inputs);
    if (!dmin.defined) return opt_inf();      // the dual player never wins
    if (dmin.value == 0) return opt_none();   // the dual player wins outright
    return opt_of(dmin.value - 1);
  }
  throw std::invalid_argument("realOptimize: formula must be in the diamond or box fragment");
}

}  // namespace pldl
