#pragma once

#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "pldl/aba.hpp"
#include "pldl/lasso.hpp"

namespace pldl {

/// Nondeterministic Büchi automaton over proposition-set letters (bitmasks
/// over `props`).
struct Nba {
  std::vector<std::string> props;
  int initial = 0;
  std::vector<char> accepting;
  std::vector<std::vector<std::vector<int>>> delta;  // [state][letter] -> successors
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

/// The six-state changepoint tracker as a standalone automaton over {color},
/// mainly for inspection and DOT export; every non-sink state accepts.
inline Nba changepoint_automaton(const std::string& color) {
  Nba nba;
  nba.props = {color};
  nba.initial = CpDfa::kEmpty;
  for (int s = 0; s < CpDfa::kStates; ++s) {
    nba.accepting.push_back(CpDfa::accepting(s) ? 1 : 0);
    nba.state_names.push_back("c" + std::to_string(s));
    std::vector<std::vector<int>> row(2);
    row[0] = {CpDfa::step(s, false)};
    row[1] = {CpDfa::step(s, true)};
    nba.delta.push_back(std::move(row));
  }
  return nba;
}

enum class CounterMode { Diamond, Box };

namespace detail {

/// Shared implementation of the breakpoint construction, optionally with
/// per-region counters. A state is (T, O, gamma); accepting iff O is empty.
struct BreakpointBuilder {
  const Aba& aba;
  std::map<int, long> bounds;                 // region id -> bound
  std::map<int, CounterMode> region_mode;     // only for bounded regions

  using Key = std::tuple<StateSet, StateSet, std::vector<std::pair<int, long>>>;
  std::map<Key, int> index;
  Nba nba;
  // Cached minimal models per (state, letter, expired).
  std::map<std::tuple<int, int, bool>, std::vector<StateSet>> model_cache;

  bool bounded(int q) const { return aba.region[q] >= 0 && bounds.count(aba.region[q]); }

  const std::vector<StateSet>& models_for(int q, int a, bool expired) {
    auto key = std::make_tuple(q, a, expired);
    auto it = model_cache.find(key);
    if (it != model_cache.end()) return it->second;
    PbPtr f = aba.delta[q][a];
    int qr = aba.region[q];
    f = pb_substitute(f, [&](int target) {
      int r = aba.region[target];
      if (r < 0 || !bounds.count(r)) return 0;
      bool release = region_mode.at(r) == CounterMode::Box;
      if (r == qr) return expired ? (release ? 1 : -1) : 0;
      // A target in a foreign bounded region is a fresh entry whose transition
      // already consumed the match's first letter; at bound zero that letter
      // is one too many.
      if (bounds.at(r) == 0) return release ? 1 : -1;
      return 0;
    });
    return model_cache.emplace(key, minimal_models(f)).first->second;
  }

  int intern(StateSet t, StateSet o, std::vector<std::pair<int, long>> gamma) {
    Key key{t, o, gamma};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = nba.size();
    index.emplace(std::move(key), id);
    nba.accepting.push_back(o.empty() ? 1 : 0);
    nba.delta.emplace_back(nba.num_letters());
    std::string name = "T{";
    for (int q : t) name += std::to_string(q) + " ";
    name += "}O{";
    for (int q : o) name += std::to_string(q) + " ";
    name += "}";
    nba.state_names.push_back(std::move(name));
    worklist.push_back({std::move(t), std::move(o), std::move(gamma), id});
    return id;
  }

  struct Item {
    StateSet t, o;
    std::vector<std::pair<int, long>> gamma;
    int id;
  };
  std::vector<Item> worklist;

  long gamma_of(const std::vector<std::pair<int, long>>& gamma, int q) const {
    for (const auto& [s, v] : gamma)
      if (s == q) return v;
    return -1;
  }

  Nba run() {
    nba.props = aba.props;
    StateSet t0{aba.initial};
    StateSet o0;
    if (!aba.accepting[aba.initial]) o0 = t0;
    std::vector<std::pair<int, long>> g0;
    if (bounded(aba.initial)) g0.emplace_back(aba.initial, bounds.at(aba.region[aba.initial]));
    nba.initial = intern(std::move(t0), std::move(o0), std::move(g0));

    while (!worklist.empty()) {
      Item item = std::move(worklist.back());
      worklist.pop_back();
      for (int a = 0; a < nba.num_letters(); ++a) expand(item, a);
    }
    return std::move(nba);
  }

  void expand(const Item& item, int a) {
    // One minimal model per T-state; combinations enumerated recursively.
    std::vector<const std::vector<StateSet>*> choices;
    for (int q : item.t) {
      bool expired = bounded(q) && gamma_of(item.gamma, q) == 0;
      const auto& ms = models_for(q, a, expired);
      if (ms.empty()) return;  // this letter admits no run continuation
      choices.push_back(&ms);
    }
    std::vector<const StateSet*> picked(item.t.size());
    enumerate(item, a, 0, picked);
  }

  void enumerate(const Item& item, int a, std::size_t i, std::vector<const StateSet*>& picked) {
    if (i == item.t.size()) {
      emit(item, a, picked);
      return;
    }
    int q = item.t[static_cast<int>(i)];
    bool expired = bounded(q) && gamma_of(item.gamma, q) == 0;
    for (const StateSet& m : models_for(q, a, expired)) {
      picked[i] = &m;
      enumerate(item, a, i + 1, picked);
    }
  }

  void emit(const Item& item, int a, const std::vector<const StateSet*>& picked) {
    StateSet t2;
    for (const StateSet* m : picked) t2 = detail::set_union(t2, *m);

    // Counter update: min over the region bound and in-region predecessors.
    std::vector<std::pair<int, long>> gamma2;
    for (int q2 : t2) {
      if (!bounded(q2)) continue;
      // Fresh entries consumed the match's first letter on this transition.
      long v = bounds.at(aba.region[q2]) - 1;
      for (std::size_t i = 0; i < item.t.size(); ++i) {
        int q = item.t[i];
        if (aba.region[q] != aba.region[q2]) continue;
        const StateSet& m = *picked[i];
        if (std::binary_search(m.begin(), m.end(), q2)) {
          long g = gamma_of(item.gamma, q);
          if (g - 1 < v) v = g - 1;
        }
      }
      gamma2.emplace_back(q2, v);
    }

    StateSet o_src;
    if (item.o.empty()) {
      o_src = t2;
    } else {
      for (std::size_t i = 0; i < item.t.size(); ++i)
        if (std::binary_search(item.o.begin(), item.o.end(), item.t[i]))
          o_src = detail::set_union(o_src, *picked[i]);
    }
    StateSet o2;
    for (int q : o_src)
      if (!aba.accepting[q]) o2.push_back(q);

    int target = intern(std::move(t2), std::move(o2), std::move(gamma2));
    auto& row = nba.delta[item.id][a];
    if (std::find(row.begin(), row.end(), target) == row.end()) row.push_back(target);
  }
};

}  // namespace detail

/// Breakpoint construction (alternation removal) without counters.
inline Nba mh_to_nba(const Aba& aba) {
  detail::BreakpointBuilder b{aba, {}, {}};
  return b.run();
}

/// Counter-breakpoint construction: regions listed in `bounds` enforce the
/// bounded-match property. Diamond mode blocks run branches whose counter
/// expires; box mode lets them end instead.
inline Nba counter_breakpoint(const Aba& aba, const std::map<int, long>& bounds, CounterMode mode) {
  for (const auto& [region, bound] : bounds) {
    (void)bound;
    if (region < 0 || region >= static_cast<int>(aba.regions.size()))
      throw std::invalid_argument("counter_breakpoint: unknown region " + std::to_string(region));
  }
  detail::BreakpointBuilder b{aba, bounds, {}};
  for (const auto& [region, bound] : bounds) {
    (void)bound;
    b.region_mode[region] = mode;
  }
  return b.run();
}

/// Per-region modes derived from the operator each region was built for.
inline Nba counter_breakpoint_auto(const Aba& aba, const std::map<int, long>& bounds) {
  detail::BreakpointBuilder b{aba, bounds, {}};
  for (const auto& [region, bound] : bounds) {
    (void)bound;
    if (region < 0 || region >= static_cast<int>(aba.regions.size()))
      throw std::invalid_argument("counter_breakpoint: unknown region " + std::to_string(region));
    b.region_mode[region] = aba.regions[region].is_box ? CounterMode::Box : CounterMode::Diamond;
  }
  return b.run();
}

// ---- emptiness and membership ----------------------------------------------

namespace detail {

struct SccResult {
  std::vector<int> comp;
  int count = 0;
};

/// Iterative Tarjan on an adjacency list.
inline SccResult tarjan(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  SccResult res;
  res.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0;
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
            res.comp[w] = res.count;
            if (w == fr.v) break;
          }
          ++res.count;
        }
        int v = fr.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return res;
}

}  // namespace detail

/// Accepted lasso word, or nothing if the language is empty.
inline std::optional<LassoWord> nba_emptiness(const Nba& nba) {
  int n = nba.size();
  std::vector<std::vector<int>> adj(n);
  for (int q = 0; q < n; ++q) {
    for (int a = 0; a < nba.num_letters(); ++a)
      for (int t : nba.delta[q][a]) adj[q].push_back(t);
    std::sort(adj[q].begin(), adj[q].end());
    adj[q].erase(std::unique(adj[q].begin(), adj[q].end()), adj[q].end());
  }
  // Reachability from the initial state.
  std::vector<char> reach(n, 0);
  std::vector<int> bfs{nba.initial};
  reach[nba.initial] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (int t : adj[bfs[i]])
      if (!reach[t]) {
        reach[t] = 1;
        bfs.push_back(t);
      }

  detail::SccResult scc = detail::tarjan(adj);
  std::vector<int> scc_size(scc.count, 0);
  for (int q = 0; q < n; ++q) ++scc_size[scc.comp[q]];

  int seed = -1;
  for (int q = 0; q < n && seed < 0; ++q) {
    if (!reach[q] || !nba.accepting[q]) continue;
    bool on_cycle = scc_size[scc.comp[q]] > 1;
    if (!on_cycle)
      for (int t : adj[q]) on_cycle = on_cycle || t == q;
    if (on_cycle) seed = q;
  }
  if (seed < 0) return std::nullopt;

  // Letters along shortest paths: initial -> seed, then a proper cycle
  // seed -> seed (at least one edge).
  auto bfs_letters = [&](int from, int to, bool at_least_one_edge) -> std::vector<int> {
    std::vector<int> prev(n, -1), prev_letter(n, -1);
    std::vector<char> visited(n, 0);
    std::queue<int> queue;
    if (from == to && !at_least_one_edge) return {};
    // Seed the search with the edges out of `from` so that a cycle must use
    // at least one edge even when from == to.
    for (int a = 0; a < nba.num_letters(); ++a)
      for (int t : nba.delta[from][a]) {
        if (visited[t]) continue;
        visited[t] = 1;
        prev[t] = from;
        prev_letter[t] = a;
        queue.push(t);
      }
    while (!queue.empty() && !visited[to]) {
      int v = queue.front();
      queue.pop();
      for (int a = 0; a < nba.num_letters(); ++a)
        for (int t : nba.delta[v][a]) {
          if (visited[t]) continue;
          visited[t] = 1;
          prev[t] = v;
          prev_letter[t] = a;
          queue.push(t);
        }
    }
    std::vector<int> letters;
    int cur = to;
    while (cur != from || letters.empty()) {
      letters.push_back(prev_letter[cur]);
      cur = prev[cur];
      if (letters.size() > static_cast<std::size_t>(n) + 1) break;  // defensive
    }
    std::reverse(letters.begin(), letters.end());
    return letters;
  };

  std::vector<int> stem = bfs_letters(nba.initial, seed, false);
  std::vector<int> loop = bfs_letters(seed, seed, true);

  LassoWord w;
  for (int a : stem) w.prefix.push_back(nba.letter_of(a));
  for (int a : loop) w.cycle.push_back(nba.letter_of(a));
  return w;
}

/// Acceptance of an ultimately periodic word.
inline bool nba_lasso_membership(const Nba& nba, const LassoWord& w) {
  int L = static_cast<int>(w.core_length());
  if (L == 0) throw std::invalid_argument("empty lasso");
  int n = nba.size();
  auto vid = [&](int q, int i) { return q * L + i; };
  auto nxt = [&](int i) { return i + 1 < L ? i + 1 : static_cast<int>(w.prefix.size()); };
  std::vector<std::vector<int>> adj(n * L);
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < L; ++i) {
      int a = static_cast<int>(nba.mask_of(w.letter_at(i)));
      for (int t : nba.delta[q][a]) adj[vid(q, i)].push_back(vid(t, nxt(i)));
    }
  std::vector<char> reach(n * L, 0);
  std::vector<int> bfs{vid(nba.initial, 0)};
  reach[bfs[0]] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (int t : adj[bfs[i]])
      if (!reach[t]) {
        reach[t] = 1;
        bfs.push_back(t);
      }
  detail::SccResult scc = detail::tarjan(adj);
  std::vector<int> scc_size(scc.count, 0);
  for (std::size_t v = 0; v < adj.size(); ++v) ++scc_size[scc.comp[v]];
  for (int q = 0; q < n; ++q) {
    if (!nba.accepting[q]) continue;
    for (int i = 0; i < L; ++i) {
      int v = vid(q, i);
      if (!reach[v]) continue;
      bool on_cycle = scc_size[scc.comp[v]] > 1;
      if (!on_cycle)
        for (int t : adj[v]) on_cycle = on_cycle || t == v;
      if (on_cycle) return true;
    }
  }
  return false;
}

/// Language-preserving cleanup: keeps states reachable from the initial state
/// that can still reach an accepting cycle.
inline Nba nba_prune(const Nba& nba) {
  int n = nba.size();
  std::vector<std::vector<int>> adj(n), radj(n);
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < nba.num_letters(); ++a)
      for (int t : nba.delta[q][a]) {
        adj[q].push_back(t);
        radj[t].push_back(q);
      }
  std::vector<char> reach(n, 0);
  std::vector<int> bfs{nba.initial};
  reach[nba.initial] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (int t : adj[bfs[i]])
      if (!reach[t]) {
        reach[t] = 1;
        bfs.push_back(t);
      }
  detail::SccResult scc = detail::tarjan(adj);
  std::vector<int> scc_size(scc.count, 0);
  for (int q = 0; q < n; ++q) ++scc_size[scc.comp[q]];
  std::vector<char> live(n, 0);
  std::vector<int> seeds;
  for (int q = 0; q < n; ++q) {
    if (!nba.accepting[q]) continue;
    bool on_cycle = scc_size[scc.comp[q]] > 1;
    if (!on_cycle)
      for (int t : adj[q]) on_cycle = on_cycle || t == q;
    if (on_cycle) {
      live[q] = 1;
      seeds.push_back(q);
    }
  }
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (int t : radj[seeds[i]])
      if (!live[t]) {
        live[t] = 1;
        seeds.push_back(t);
      }

  std::vector<int> remap(n, -1);
  Nba out;
  out.props = nba.props;
  auto keep = [&](int q) { return reach[q] && live[q]; };
  // The initial state is always materialized so the automaton stays well-formed.
  for (int q = 0; q < n; ++q)
    if (keep(q) || q == nba.initial) {
      remap[q] = out.size();
      out.accepting.push_back(nba.accepting[q]);
      out.state_names.push_back(nba.state_names.empty() ? "" : nba.state_names[q]);
      out.delta.emplace_back(nba.num_letters());
    }
  for (int q = 0; q < n; ++q) {
    if (remap[q] < 0) continue;
    for (int a = 0; a < nba.num_letters(); ++a)
      for (int t : nba.delta[q][a])
        if (remap[t] >= 0 && keep(t)) out.delta[remap[q]][a].push_back(remap[t]);
  }
  out.initial = remap[nba.initial];
  return out;
}

}  // namespace pldl
