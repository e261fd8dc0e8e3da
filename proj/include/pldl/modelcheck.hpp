#pragma once

#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "pldl/dpa.hpp"
#include "pldl/nba.hpp"
#include "pldl/oracle.hpp"
#include "pldl/syntax.hpp"

namespace pldl {

/// Finite graph with one or two coloring propositions and one or two Büchi
/// sets. Vertices carry the trace letter they emit, so paths project to words.
struct ColoredGraph {
  int degree = 1;
  int initial = 0;
  std::vector<char> label_p, label_q;  // per vertex; label_q unused for degree one
  std::vector<char> f0, f1;            // Büchi sets; f1 unused for degree one
  std::vector<std::vector<int>> adj;
  std::vector<Letter> trace;

  int size() const { return static_cast<int>(adj.size()); }

  int add_vertex(bool p, bool q, bool in_f0, bool in_f1, Letter tr = {}) {
    label_p.push_back(p ? 1 : 0);
    label_q.push_back(q ? 1 : 0);
    f0.push_back(in_f0 ? 1 : 0);
    f1.push_back(in_f1 ? 1 : 0);
    adj.emplace_back();
    trace.push_back(std::move(tr));
    return size() - 1;
  }
  void add_edge(int a, int b) { adj[a].push_back(b); }
};

/// Ultimately periodic path through a graph: stem then repeated cycle.
struct LassoPath {
  std::vector<int> stem;
  std::vector<int> cycle;
};

struct McVerdict {
  bool satisfied = false;
  std::optional<Valuation> valuation;   // present when satisfied
  std::optional<LassoPath> path;        // counterexample path when unsatisfied
  std::optional<LassoWord> witness;     // its trace
};

// ---- products ----------------------------------------------------------------

/// Product of a Büchi automaton over P ∪ {color} with a transition system over
/// P: vertices (q, s, C) with C ⊆ {color} guessed per position, edges follow
/// the system and the automaton on the letter ℓ(s) ∪ C.
inline ColoredGraph build_product(const Nba& nba, const SystemDescription& sys, const std::string& color) {
  for (const auto& pr : sys.props) {
    bool found = false;
    for (const auto& q : nba.props) found = found || q == pr;
    if (!found) throw std::invalid_argument("build_product: automaton alphabet misses " + pr);
  }
  ColoredGraph g;
  g.degree = 1;
  int S = sys.size();
  auto vid = [&](int q, int s, int c) { return (q * S + s) * 2 + c; };
  for (int q = 0; q < nba.size(); ++q)
    for (int s = 0; s < S; ++s)
      for (int c = 0; c < 2; ++c) {
        Letter tr = sys.labels[s];
        if (c) tr.insert(color);
        g.add_vertex(c != 0, false, nba.accepting[q] != 0, false, std::move(tr));
      }
  for (int q = 0; q < nba.size(); ++q)
    for (int s = 0; s < S; ++s)
      for (int c = 0; c < 2; ++c) {
        int a = static_cast<int>(nba.mask_of(g.trace[vid(q, s, c)]));
        for (int q2 : nba.delta[q][a])
          for (int s2 : sys.edges[s])
            for (int c2 = 0; c2 < 2; ++c2) g.add_edge(vid(q, s, c), vid(q2, s2, c2));
      }
  g.initial = vid(nba.initial, sys.initial, 0);
  return g;
}

/// Degree-two product A_A × A_G × S with independently guessed colorings
/// C ⊆ {colorP, colorQ}; F0 tracks A_A's accepting states, F1 tracks A_G's.
inline ColoredGraph build_ag_product(const Nba& nbaA, const Nba& nbaG, const SystemDescription& sys,
                                     const std::string& colorP, const std::string& colorQ) {
  ColoredGraph g;
  g.degree = 2;
  int S = sys.size(), QG = nbaG.size();
  auto vid = [&](int qa, int qg, int s, int c) { return ((qa * QG + qg) * S + s) * 4 + c; };
  for (int qa = 0; qa < nbaA.size(); ++qa)
    for (int qg = 0; qg < QG; ++qg)
      for (int s = 0; s < S; ++s)
        for (int c = 0; c < 4; ++c) {
          Letter tr = sys.labels[s];
          if (c & 1) tr.insert(colorP);
          if (c & 2) tr.insert(colorQ);
          g.add_vertex((c & 1) != 0, (c & 2) != 0, nbaA.accepting[qa] != 0, nbaG.accepting[qg] != 0,
                       std::move(tr));
        }
  for (int qa = 0; qa < nbaA.size(); ++qa)
    for (int qg = 0; qg < QG; ++qg)
      for (int s = 0; s < S; ++s)
        for (int c = 0; c < 4; ++c) {
          int v = vid(qa, qg, s, c);
          int aa = static_cast<int>(nbaA.mask_of(g.trace[v]));
          int ag = static_cast<int>(nbaG.mask_of(g.trace[v]));
          for (int qa2 : nbaA.delta[qa][aa])
            for (int qg2 : nbaG.delta[qg][ag])
              for (int s2 : sys.edges[s])
                for (int c2 = 0; c2 < 4; ++c2) g.add_edge(v, vid(qa2, qg2, s2, c2));
        }
  g.initial = vid(nbaA.initial, nbaG.initial, sys.initial, 0);
  return g;
}

// ---- pumpable nonemptiness ---------------------------------------------------

namespace detail {

/// Fair-cycle search over an implicitly defined augmented graph. Encoded
/// augmented states are interned into dense ids while exploring only the part
/// reachable from the initial states. A witness requires a reachable cycle
/// containing an accepting state and a boundary edge.
template <typename Succ, typename Acc, typename Vert, typename Bnd>
std::optional<LassoPath> augmented_lasso(const std::vector<long long>& initials, Succ successors,
                                         Acc accepting, Vert vertex_of, Bnd is_boundary) {
  std::map<long long, int> id;
  std::vector<long long> enc;
  std::vector<std::vector<int>> adj;
  auto intern = [&](long long x) {
    auto [it, fresh] = id.emplace(x, static_cast<int>(enc.size()));
    if (fresh) {
      enc.push_back(x);
      adj.emplace_back();
    }
    return it->second;
  };
  std::vector<int> init_ids;
  for (long long x : initials) init_ids.push_back(intern(x));
  for (std::size_t i = 0; i < enc.size(); ++i) {
    std::vector<int> row;
    for (long long t : successors(enc[i])) row.push_back(intern(t));
    adj[i] = std::move(row);
  }
  int n = static_cast<int>(enc.size());

  SccResult scc = tarjan(adj);
  auto boundary_edge = [&](int x, int t) { return is_boundary(vertex_of(enc[x]), vertex_of(enc[t])); };
  std::vector<char> has_acc(scc.count, 0), has_bnd(scc.count, 0), nontrivial(scc.count, 0);
  for (int x = 0; x < n; ++x) {
    int c = scc.comp[x];
    if (accepting(enc[x])) has_acc[c] = 1;
    for (int t : adj[x])
      if (scc.comp[t] == c) {
        nontrivial[c] = 1;  // cycle within the component
        if (boundary_edge(x, t)) has_bnd[c] = 1;
      }
  }
  int good = -1;
  for (int c = 0; c < scc.count && good < 0; ++c)
    if (nontrivial[c] && has_acc[c] && has_bnd[c]) good = c;
  if (good < 0) return std::nullopt;

  // Representatives inside the component.
  int acc = -1, bsrc = -1, btgt = -1;
  for (int x = 0; x < n && (acc < 0 || bsrc < 0); ++x) {
    if (scc.comp[x] != good) continue;
    if (acc < 0 && accepting(enc[x])) acc = x;
    if (bsrc < 0)
      for (int t : adj[x])
        if (scc.comp[t] == good && boundary_edge(x, t)) {
          bsrc = x;
          btgt = t;
          break;
        }
  }

  auto path_to = [&](int from, int to, bool inside_only) {
    std::vector<int> prev(n, -2);
    std::queue<int> q;
    prev[from] = -1;
    q.push(from);
    while (!q.empty() && prev[to] == -2) {
      int x = q.front();
      q.pop();
      for (int t : adj[x]) {
        if (inside_only && scc.comp[t] != good) continue;
        if (prev[t] != -2) continue;
        prev[t] = x;
        q.push(t);
      }
    }
    std::vector<int> out;
    for (int cur = to; cur != -1; cur = prev[cur]) out.push_back(cur);
    std::reverse(out.begin(), out.end());
    return out;  // from .. to inclusive
  };

  // Cycle: acc -> bsrc, boundary edge, btgt -> acc; all inside the component.
  std::vector<int> cyc = path_to(acc, bsrc, true);
  std::vector<int> back = path_to(btgt, acc, true);
  std::vector<int> cycle(cyc.begin(), cyc.end());           // acc .. bsrc
  cycle.insert(cycle.end(), back.begin(), back.end() - 1);  // btgt .. (acc excluded)

  // Stem: nearest initial to acc.
  std::vector<int> stem_best;
  bool have_stem = false;
  for (int s : init_ids) {
    std::vector<int> cand = path_to(s, acc, false);
    if (cand.empty() || cand.back() != acc) continue;
    if (!have_stem || cand.size() < stem_best.size()) {
      stem_best = cand;
      have_stem = true;
    }
  }
  stem_best.pop_back();  // acc starts the cycle

  LassoPath out;
  for (int x : stem_best) out.stem.push_back(vertex_of(enc[x]));
  for (int x : cycle) out.cycle.push_back(vertex_of(enc[x]));
  return out;
}

/// SCC decomposition of the block-monochromatic subgraph (p-blocks for degree
/// one, q-blocks for degree two). A vertex is "pumpy" when a block path
/// through it can be made to revisit it: degree one needs a monochromatic
/// cycle through the vertex; degree two additionally needs a p-changepoint on
/// that cycle, i.e. both p-labels inside the component.
struct BlockStructure {
  std::vector<int> comp;
  std::vector<char> pumpy;
};

inline BlockStructure block_structure(const ColoredGraph& g) {
  const std::vector<char>& blk = g.degree == 1 ? g.label_p : g.label_q;
  int V = g.size();
  std::vector<std::vector<int>> mono(V);
  for (int v = 0; v < V; ++v)
    for (int t : g.adj[v])
      if (blk[t] == blk[v]) mono[v].push_back(t);
  SccResult scc = tarjan(mono);
  std::vector<char> good(scc.count, 0);
  if (g.degree == 1) {
    std::vector<int> sz(scc.count, 0);
    for (int v = 0; v < V; ++v) ++sz[scc.comp[v]];
    for (int v = 0; v < V; ++v)
      for (int t : mono[v])
        if (scc.comp[t] == scc.comp[v] && (t == v || sz[scc.comp[v]] > 1)) good[scc.comp[v]] = 1;
  } else {
    std::vector<char> has0(scc.count, 0), has1(scc.count, 0);
    for (int v = 0; v < V; ++v) (g.label_p[v] ? has1 : has0)[scc.comp[v]] = 1;
    for (int c = 0; c < scc.count; ++c) good[c] = has0[c] && has1[c];
  }
  BlockStructure bs;
  bs.comp = std::move(scc.comp);
  bs.pumpy.resize(V);
  for (int v = 0; v < V; ++v) bs.pumpy[v] = good[bs.comp[v]];
  return bs;
}

/// Shortest monochromatic path from `from` to `to` inside their component,
/// using at least one edge; returns the vertices after `from`, ending in `to`.
inline std::vector<int> mono_path(const ColoredGraph& g, const BlockStructure& bs, int from, int to) {
  const std::vector<char>& blk = g.degree == 1 ? g.label_p : g.label_q;
  int V = g.size();
  std::vector<int> prev(V, -2);
  std::queue<int> q;
  auto push_succ = [&](int v) {
    for (int t : g.adj[v]) {
      if (blk[t] != blk[v] || bs.comp[t] != bs.comp[from]) continue;
      if (prev[t] != -2) continue;
      prev[t] = v;
      q.push(t);
    }
  };
  push_succ(from);  // seed with successors so from == to needs a real cycle
  while (!q.empty() && prev[to] == -2) {
    int v = q.front();
    q.pop();
    if (v != to) push_succ(v);
  }
  std::vector<int> out;
  for (int cur = to; cur != from || out.empty(); cur = prev[cur]) out.push_back(cur);
  std::reverse(out.begin(), out.end());
  return out;
}

/// Monochromatic cycle through x, as the vertices after x ending in x again;
/// for degree two the cycle passes a vertex with the other p-label.
inline std::vector<int> pump_cycle_through(const ColoredGraph& g, const BlockStructure& bs, int x) {
  if (g.degree == 1) return mono_path(g, bs, x, x);
  int y = -1;
  for (int v = 0; v < g.size() && y < 0; ++v)
    if (bs.comp[v] == bs.comp[x] && g.label_p[v] != g.label_p[x]) y = v;
  std::vector<int> fwd = mono_path(g, bs, x, y);
  std::vector<int> back = mono_path(g, bs, y, x);
  fwd.insert(fwd.end(), back.begin(), back.end());
  return fwd;
}

/// Inserts a certified repetition into every block of the sequence by splicing
/// the pump cycle of the block's first pumpy vertex.
inline std::vector<int> splice_repetitions(const ColoredGraph& g, const BlockStructure& bs,
                                           const std::vector<int>& seq) {
  const std::vector<char>& blk = g.degree == 1 ? g.label_p : g.label_q;
  std::vector<int> out;
  std::size_t i = 0;
  while (i < seq.size()) {
    std::size_t j = i;
    while (j + 1 < seq.size() && blk[seq[j + 1]] == blk[seq[i]]) ++j;
    std::size_t at = i;
    while (at <= j && !bs.pumpy[seq[at]]) ++at;
    for (std::size_t t = i; t <= j; ++t) {
      out.push_back(seq[t]);
      if (t == at) {
        std::vector<int> cyc = pump_cycle_through(g, bs, seq[t]);
        out.insert(out.end(), cyc.begin(), cyc.end());
      }
    }
    i = j + 1;
  }
  return out;
}

}  // namespace detail

/// Fair pumpable lasso in a degree-one colored Büchi graph, or nothing.
/// A path is pumpable when every block contains a vertex repetition; block
/// boundary edges are enabled only once the current block is certified, which
/// reduces to having passed a vertex on a monochromatic cycle. The returned
/// path has the repetitions spliced in explicitly.
inline std::optional<LassoPath> pumpable_nonempty1(const ColoredGraph& g) {
  if (g.degree != 1) throw std::invalid_argument("pumpable_nonempty1: degree-one graph expected");
  detail::BlockStructure bs = detail::block_structure(g);
  auto aug = [&](long long v, long long bit) { return v * 2 + bit; };
  auto successors = [&](long long x) {
    int v = static_cast<int>(x / 2);
    long long bit = x % 2;
    std::vector<long long> out;
    for (int t : g.adj[v]) {
      bool boundary = g.label_p[t] != g.label_p[v];
      if (boundary && !bit) continue;
      long long base = boundary ? 0 : bit;
      out.push_back(aug(t, (base || bs.pumpy[t]) ? 1 : 0));
    }
    return out;
  };
  std::vector<long long> initials{aug(g.initial, bs.pumpy[g.initial] ? 1 : 0)};
  auto found = detail::augmented_lasso(
      initials, successors, [&](long long x) { return g.f0[static_cast<int>(x / 2)] != 0; },
      [&](long long x) { return static_cast<int>(x / 2); },
      [&](int v, int t) { return g.label_p[t] != g.label_p[v]; });
  if (!found) return std::nullopt;
  // Rotate the cycle to a block boundary, then materialize a repetition in
  // every block so the witness can be pumped directly.
  std::vector<int> stem = found->stem, cycle = found->cycle;
  int n = static_cast<int>(cycle.size());
  int rot = 0;
  for (int i = 0; i < n; ++i) {
    int prev = i == 0 ? cycle[n - 1] : cycle[i - 1];
    if (g.label_p[cycle[i]] != g.label_p[prev]) {
      rot = i;
      break;
    }
  }
  stem.insert(stem.end(), cycle.begin(), cycle.begin() + rot);
  std::rotate(cycle.begin(), cycle.begin() + rot, cycle.end());
  LassoPath out;
  out.stem = detail::splice_repetitions(g, bs, stem);
  out.cycle = detail::splice_repetitions(g, bs, cycle);
  return out;
}

/// Degree-two variant: every q-block must contain a vertex repetition with a
/// p-changepoint in between; fairness is generalized Büchi over F0 and F1,
/// handled by an alternating phase bit accepting on wrap-around.
inline std::optional<LassoPath> pumpable_nonempty2(const ColoredGraph& g) {
  if (g.degree != 2) throw std::invalid_argument("pumpable_nonempty2: degree-two graph expected");
  detail::BlockStructure bs = detail::block_structure(g);
  auto aug = [&](long long v, long long bit, long long ph) { return (v * 2 + bit) * 2 + ph; };
  auto successors = [&](long long x) {
    long long ph = x % 2, bit = (x / 2) % 2;
    int v = static_cast<int>(x / 4);
    long long ph2 = ph;
    if (ph == 0 && g.f0[v]) ph2 = 1;
    else if (ph == 1 && g.f1[v]) ph2 = 0;
    std::vector<long long> out;
    for (int t : g.adj[v]) {
      bool qboundary = g.label_q[t] != g.label_q[v];
      if (qboundary && !bit) continue;
      long long base = qboundary ? 0 : bit;
      out.push_back(aug(t, (base || bs.pumpy[t]) ? 1 : 0, ph2));
    }
    return out;
  };
  std::vector<long long> initials{aug(g.initial, bs.pumpy[g.initial] ? 1 : 0, 0)};
  auto found = detail::augmented_lasso(
      initials, successors,
      [&](long long x) { return x % 2 == 1 && g.f1[static_cast<int>(x / 4)] != 0; },
      [&](long long x) { return static_cast<int>(x / 4); },
      [&](int v, int t) { return g.label_q[t] != g.label_q[v]; });
  if (!found) return std::nullopt;
  std::vector<int> stem = found->stem, cycle = found->cycle;
  int n = static_cast<int>(cycle.size());
  int rot = 0;
  for (int i = 0; i < n; ++i) {
    int prev = i == 0 ? cycle[n - 1] : cycle[i - 1];
    if (g.label_q[cycle[i]] != g.label_q[prev]) {
      rot = i;
      break;
    }
  }
  stem.insert(stem.end(), cycle.begin(), cycle.begin() + rot);
  std::rotate(cycle.begin(), cycle.begin() + rot, cycle.end());
  LassoPath out;
  out.stem = detail::splice_repetitions(g, bs, stem);
  out.cycle = detail::splice_repetitions(g, bs, cycle);
  return out;
}

// ---- pumping -----------------------------------------------------------------

/// Trace of the path with every block's first vertex repetition duplicated k
/// extra times. Blocks are maximal constant-p segments; the cycle is rotated to
/// start at a block boundary first.
inline LassoWord pump_witness(const ColoredGraph& g, const LassoPath& path, long k) {
  std::vector<int> stem = path.stem;
  std::vector<int> cycle = path.cycle;
  if (cycle.empty()) throw std::invalid_argument("pump_witness: empty cycle");
  int n = static_cast<int>(cycle.size());
  int rot = -1;
  for (int i = 0; i < n && rot < 0; ++i) {
    int prev = i == 0 ? cycle[n - 1] : cycle[i - 1];
    if (g.label_p[cycle[i]] != g.label_p[prev]) rot = i;
  }
  if (rot < 0) throw std::invalid_argument("pump_witness: path not pumpable (no changepoint in cycle)");
  stem.insert(stem.end(), cycle.begin(), cycle.begin() + rot);
  std::rotate(cycle.begin(), cycle.begin() + rot, cycle.end());

  auto pump_blocks = [&](const std::vector<int>& seq) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < seq.size()) {
      std::size_t j = i;
      while (j + 1 < seq.size() && g.label_p[seq[j + 1]] == g.label_p[seq[i]]) ++j;
      // Block seq[i..j]; duplicate its first repetition segment k extra times.
      std::size_t ra = 0, rb = 0;
      bool found = false;
      for (std::size_t a = i; a <= j && !found; ++a)
        for (std::size_t b = a + 1; b <= j && !found; ++b)
          if (seq[a] == seq[b]) {
            ra = a;
            rb = b;
            found = true;
          }
      for (std::size_t t = i; t <= j; ++t) {
        out.push_back(seq[t]);
        if (found && t + 1 == rb)
          for (long c = 0; c < k; ++c)
            for (std::size_t u = ra; u < rb; ++u) out.push_back(seq[u]);
      }
      i = j + 1;
    }
    return out;
  };

  std::vector<int> pstem = pump_blocks(stem);
  std::vector<int> pcycle = pump_blocks(cycle);
  LassoWord w;
  for (int v : pstem) w.prefix.push_back(g.trace[v]);
  for (int v : pcycle) w.cycle.push_back(g.trace[v]);
  return w;
}

/// Trace without pumping.
inline LassoWord path_trace(const ColoredGraph& g, const LassoPath& path) {
  LassoWord w;
  for (int v : path.stem) w.prefix.push_back(g.trace[v]);
  for (int v : path.cycle) w.cycle.push_back(g.trace[v]);
  return w;
}

// ---- model checking ----------------------------------------------------------

namespace detail {

inline std::string fresh_prop(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int i = 0;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

inline std::set<std::string> used_props(const SystemDescription& sys, const FormulaPtr& phi) {
  std::set<std::string> used = propositions(phi);
  for (const auto& p : sys.props) used.insert(p);
  return used;
}

}  // namespace detail

/// Result of modelCheck together with the product graph, for witness pumping.
struct McAnalysis {
  ColoredGraph graph;
  McVerdict verdict;
};

/// Decides whether every trace of the system satisfies phi at some uniform
/// valuation. Satisfied verdicts report the constructive valuation;
/// unsatisfied verdicts carry a pumpable counterexample path and its trace.
inline McAnalysis modelCheckAnalysis(const SystemDescription& sys, const FormulaPtr& phi) {
  if (!is_well_formed(phi)) throw std::invalid_argument("modelCheck: formula is not well-formed");
  FormulaPtr phi2 = eliminate_boxes(phi);
  std::string color = detail::fresh_prop("p", detail::used_props(sys, phi));
  FormulaPtr check = f_and(f_and(negate(rel_transform(phi2)), chi_infinitely_often(color, false)),
                           chi_infinitely_often(color, true));
  std::vector<std::string> props = sys.props;
  props.push_back(color);
  Nba nba = nba_prune(mh_to_nba(build_aba(check, props, color)));
  McAnalysis out{build_product(nba, sys, color), {}};
  std::optional<LassoPath> pumpable = pumpable_nonempty1(out.graph);
  if (!pumpable) {
    out.verdict.satisfied = true;
    Valuation alpha;
    long star = 2L * nba.size() * sys.size() + 2;
    VariableSets vs = variables(phi);
    for (const auto& z : vs.diamond) alpha.set(z, star);
    for (const auto& z : vs.box) alpha.set(z, 0);
    out.verdict.valuation = std::move(alpha);
  } else {
    out.verdict.satisfied = false;
    out.verdict.path = *pumpable;
    out.verdict.witness = path_trace(out.graph, *pumpable);
  }
  return out;
}

inline McVerdict modelCheck(const SystemDescription& sys, const FormulaPtr& phi) {
  return modelCheckAnalysis(sys, phi).verdict;
}

/// Assume-guarantee check: holds iff there is a guarantee valuation working
/// against every assumption valuation, per the degree-two pumpable-path
/// criterion.
inline McVerdict agCheck(const SystemDescription& sys, const FormulaPtr& phiA, const FormulaPtr& phiG) {
  if (!is_well_formed(phiA) || !is_well_formed(phiG))
    throw std::invalid_argument("agCheck: formulas must be well-formed");
  FormulaPtr a2 = eliminate_boxes(phiA);
  FormulaPtr g2 = eliminate_boxes(phiG);
  std::set<std::string> used = detail::used_props(sys, phiA);
  for (const auto& p : propositions(phiG)) used.insert(p);
  std::string colorP = detail::fresh_prop("p", used);
  used.insert(colorP);
  std::string colorQ = detail::fresh_prop("q", used);
  std::vector<std::string> props = sys.props;
  props.push_back(colorP);
  props.push_back(colorQ);

  FormulaPtr fa = f_and(f_and(rel_transform(a2), chi_infinitely_often(colorP, false)),
                        chi_infinitely_often(colorP, true));
  FormulaPtr fg = f_and(f_and(negate(rel_transform(g2)), chi_infinitely_often(colorQ, false)),
                        chi_infinitely_often(colorQ, true));
  Nba nbaA = nba_prune(mh_to_nba(build_aba(fa, props, colorP)));
  Nba nbaG = nba_prune(mh_to_nba(build_aba(fg, props, colorQ)));
  ColoredGraph g = build_ag_product(nbaA, nbaG, sys, colorP, colorQ);
  std::optional<LassoPath> pumpable = pumpable_nonempty2(g);

  McVerdict verdict;
  if (!pumpable) {
    verdict.satisfied = true;
    Valuation alpha;
    long ka = 2L * nbaA.size() * sys.size() + 2;
    long kb = 2L * nbaA.size() * nbaG.size() * sys.size() * ka + 1;
    VariableSets vs = variables(phiG);
    for (const auto& z : vs.diamond) alpha.set(z, kb);
    for (const auto& z : vs.box) alpha.set(z, 0);
    verdict.valuation = std::move(alpha);
  } else {
    verdict.satisfied = false;
    verdict.path = *pumpable;
    verdict.witness = path_trace(g, *pumpable);
  }
  return verdict;
}

/// Universal implication: phiA entails phiG over all traces of the given
/// proposition universe. Reduced to agCheck over a universal system; the
/// single-initial-state format is compensated by iterating over the first
/// letter.
inline bool implication(const FormulaPtr& phiA, const FormulaPtr& phiG,
                        const std::vector<std::string>& prop_universe) {
  int letters = 1 << prop_universe.size();
  for (int init = 0; init < letters; ++init) {
    SystemDescription u;
    u.props = prop_universe;
    for (int m = 0; m < letters; ++m) {
      Letter label;
      for (std::size_t i = 0; i < prop_universe.size(); ++i)
        if (m & (1 << i)) label.insert(prop_universe[i]);
      u.state_index["s" + std::to_string(m)] = m;
      u.state_names.push_back("s" + std::to_string(m));
      u.labels.push_back(std::move(label));
      std::vector<int> succ;
      for (int t = 0; t < letters; ++t) succ.push_back(t);
      u.edges.push_back(std::move(succ));
    }
    u.initial = init;
    if (!agCheck(u, phiA, phiG).satisfied) return false;
  }
  return true;
}

// ---- bounded queries and optimization ----------------------------------------

/// Exact check of sys ⊨ phi at the concrete valuation alpha, via the counter
/// automaton for the negation and a plain Büchi product.
inline bool mcQuery(const SystemDescription& sys, const FormulaPtr& phi, const Valuation& alpha) {
  VariableSets vs = variables(phi);
  for (const auto& z : vs.diamond)
    if (!alpha.values.count(z)) throw std::invalid_argument("mcQuery: unassigned variable " + z);
  for (const auto& z : vs.box)
    if (!alpha.values.count(z)) throw std::invalid_argument("mcQuery: unassigned variable " + z);

  Aba aba = build_aba_with_params(negate(phi), sys.props);
  std::map<int, long> bounds;
  for (std::size_t r = 0; r < aba.regions.size(); ++r)
    if (aba.regions[r].parameterized) bounds[static_cast<int>(r)] = alpha.at(aba.regions[r].var);
  Nba nba = counter_breakpoint_auto(aba, bounds);

  // Plain product emptiness: a trace accepted by the negation automaton is a
  // counterexample.
  int S = sys.size();
  int n = nba.size() * S;
  auto vid = [&](int q, int s) { return q * S + s; };
  std::vector<std::vector<int>> adj(n);
  std::vector<char> acc(n, 0);
  for (int q = 0; q < nba.size(); ++q)
    for (int s = 0; s < S; ++s) {
      acc[vid(q, s)] = nba.accepting[q];
      int a = static_cast<int>(nba.mask_of(sys.labels[s]));
      for (int q2 : nba.delta[q][a])
        for (int s2 : sys.edges[s]) adj[vid(q, s)].push_back(vid(q2, s2));
    }
  std::vector<char> reach(n, 0);
  std::vector<int> bfs{vid(nba.initial, sys.initial)};
  reach[bfs[0]] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (int t : adj[bfs[i]])
      if (!reach[t]) {
        reach[t] = 1;
        bfs.push_back(t);
      }
  detail::SccResult scc = detail::tarjan(adj);
  std::vector<int> scc_size(scc.count, 0);
  for (int v = 0; v < n; ++v) ++scc_size[scc.comp[v]];
  for (int v = 0; v < n; ++v) {
    if (!reach[v] || !acc[v]) continue;
    bool on_cycle = scc_size[scc.comp[v]] > 1;
    if (!on_cycle)
      for (int t : adj[v]) on_cycle = on_cycle || t == v;
    if (on_cycle) return false;
  }
  return true;
}

enum class Objective { MinMin, MinMax, MaxMax, MaxMin };

/// Optimization result; ∞ is distinguished from every number.
struct OptValue {
  bool defined = false;
  bool infinite = false;
  long value = 0;

  bool operator==(const OptValue&) const = default;
};

inline OptValue opt_none() { return {}; }
inline OptValue opt_inf() { return {true, true, 0}; }
inline OptValue opt_of(long v) { return {true, false, v}; }

namespace detail {

inline Valuation uniform_valuation(const FormulaPtr& phi, long v) {
  Valuation alpha;
  VariableSets vs = variables(phi);
  for (const auto& z : vs.diamond) alpha.set(z, v);
  for (const auto& z : vs.box) alpha.set(z, v);
  return alpha;
}

// Smallest k in [lo, hi] with pred(k) true, or -1; pred must be monotone.
template <typename Pred>
long binary_search_min(long lo, long hi, Pred pred) {
  if (!pred(hi)) return -1;
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (pred(mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

// Largest k in [lo, hi] with pred(k) true, or -1; pred must be antitone.
template <typename Pred>
long binary_search_max(long lo, long hi, Pred pred) {
  if (!pred(lo)) return -1;
  while (lo < hi) {
    long mid = lo + (hi - lo + 1) / 2;
    if (pred(mid)) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

}  // namespace detail

/// Optimal parameter values for model checking. Min objectives expect a
/// diamond-fragment formula, Max objectives a box-fragment formula; the search
/// ranges follow the constructive bounds of the deciders.
inline OptValue mcOptimize(const SystemDescription& sys, const FormulaPtr& phi, Objective objective) {
  FragmentTag tag = classify(phi);
  VariableSets vs = variables(phi);
  bool is_min = objective == Objective::MinMin || objective == Objective::MinMax;
  if (is_min) {
    if (tag != FragmentTag::PldlDiamond)
      throw std::invalid_argument("mcOptimize: Min objectives need a diamond-fragment formula with variables");
  } else {
    if (tag != FragmentTag::PldlBox)
      throw std::invalid_argument("mcOptimize: Max objectives need a box-fragment formula with variables");
  }

  if (is_min) {
    McVerdict mc = modelCheck(sys, phi);
    if (!mc.satisfied) return opt_none();
    long upper = mc.valuation->at(*vs.diamond.begin());
    if (objective == Objective::MinMax) {
      FormulaPtr renamed = rename_all_vars_to(phi, "_z");
      long best = detail::binary_search_min(0, upper, [&](long k) {
        Valuation a;
        a.set("_z", k);
        return mcQuery(sys, renamed, a);
      });
      return best < 0 ? opt_none() : opt_of(best);
    }
    // MinMin: per variable, pin the others to the constructive upper bound.
    long best = -1;
    for (const auto& x : vs.diamond) {
      long v = detail::binary_search_min(0, upper, [&](long k) {
        Valuation a = detail::uniform_valuation(phi, upper);
        a.set(x, k);
        return mcQuery(sys, phi, a);
      });
      if (v >= 0 && (best < 0 || v < best)) best = v;
    }
    return best < 0 ? opt_none() : opt_of(best);
  }

  // Max objectives: satisfaction is antitone in box values.
  auto solve_single = [&](const FormulaPtr& f, const std::string& y) -> OptValue {
    Aba aba = build_aba_with_params(negate(f), sys.props);
    long kstar = 4L * aba.size() * sys.size() + 2;
    Valuation at_kstar;
    at_kstar.set(y, kstar);
    if (mcQuery(sys, f, at_kstar)) return opt_inf();
    long v = detail::binary_search_max(0, kstar - 1, [&](long k) {
      Valuation a;
      a.set(y, k);
      return mcQuery(sys, f, a);
    });
    return v < 0 ? opt_none() : opt_of(v);
  };

  if (objective == Objective::MaxMin) {
    OptValue r = solve_single(rename_all_vars_to(phi, "_y"), "_y");
    return r;
  }
  // MaxMax: per variable via fixing all other boxes to their zero form.
  OptValue best = opt_none();
  for (const auto& y : vs.box) {
    OptValue r = solve_single(fix_all_but_one_box(phi, y), y);
    if (!r.defined) continue;
    if (r.infinite) return opt_inf();
    if (!best.defined || r.value > best.value) best = r;
  }
  return best;
}

}  // namespace pldl
