#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pldl/nba.hpp"

namespace pldl {

/// Deterministic parity automaton; a run is accepting iff the maximum color
/// seen infinitely often is even.
struct Dpa {
  std::vector<std::string> props;
  int initial = 0;
  std::vector<int> color;                 // per state
  std::vector<std::vector<int>> delta;    // [state][letter] -> state, total
  std::vector<std::string> state_names;

  int size() const { return static_cast<int>(color.size()); }
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

/// History trees for determinization: ordered trees of named nodes labeled
/// with state sets; smaller names are older. Names are compacted after every
/// transition so that they coincide with seniority ranks.
struct SafraNode {
  int name = 0;
  StateSet label;
  std::vector<SafraNode> children;
};

struct SafraTree {
  bool empty = true;
  SafraNode root;

  std::vector<int> key() const {
    std::vector<int> out;
    if (empty) return out;
    struct Ser {
      static void go(const SafraNode& n, std::vector<int>& out) {
        out.push_back(n.name);
        out.push_back(static_cast<int>(n.label.size()));
        for (int q : n.label) out.push_back(q);
        out.push_back(static_cast<int>(n.children.size()));
        for (const auto& c : n.children) go(c, out);
      }
    };
    Ser::go(root, out);
    return out;
  }
};

struct SafraStep {
  SafraTree tree;
  int min_dead = -1;        // smallest name of a removed (empty) node
  int min_breakpoint = -1;  // smallest name of a breakpoint node
};

class SafraDeterminizer {
 public:
  explicit SafraDeterminizer(const Nba& nba) : nba_(nba) {}

  SafraTree initial() const {
    SafraTree t;
    t.empty = false;
    t.root.name = 1;
    t.root.label = {nba_.initial};
    return t;
  }

  SafraStep step(const SafraTree& t, int letter) const {
    SafraStep out;
    if (t.empty) {
      out.tree.empty = true;
      return out;
    }
    SafraNode root = t.root;

    // 1. Move every label through the transition relation.
    apply_delta(root, letter);

    // 2. Spawn a youngest child with the accepting part of each label.
    int fresh = max_name(root) + 1;
    spawn(root, fresh);

    // 3. Keep each state only in the oldest sibling subtree containing it.
    horizontal(root);

    // 4. Drop empty nodes; the smallest dropped name is a bad event.
    if (root.label.empty()) {
      out.tree.empty = true;
      out.min_dead = root.name;
      return out;
    }
    remove_empty(root, out.min_dead);

    // 5. Breakpoints: a node whose children cover it sheds its subtree.
    breakpoints(root, out.min_breakpoint);

    // 6. Compact names by seniority.
    std::vector<int> names;
    collect_names(root, names);
    std::sort(names.begin(), names.end());
    std::map<int, int> remap;
    for (std::size_t i = 0; i < names.size(); ++i) remap[names[i]] = static_cast<int>(i) + 1;
    rename(root, remap);

    out.tree.empty = false;
    out.tree.root = std::move(root);
    return out;
  }

  // Transition priority, min-parity convention: odd for the oldest death,
  // even for the oldest breakpoint, a large odd value when nothing happened.
  int priority(const SafraStep& s) const {
    int neutral = neutral_priority();
    int c = neutral;
    if (s.min_dead >= 0) c = std::min(c, 2 * s.min_dead - 1);
    if (s.min_breakpoint >= 0) c = std::min(c, 2 * s.min_breakpoint);
    return c;
  }

  int neutral_priority() const { return 4 * nba_.size() + 3; }
  int priority_ceiling() const { return 4 * nba_.size() + 4; }  // even, above everything

 private:
  void apply_delta(SafraNode& n, int letter) const {
    StateSet next;
    for (int q : n.label)
      for (int t : nba_.delta[q][letter]) next.push_back(t);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    n.label = std::move(next);
    for (auto& c : n.children) apply_delta(c, letter);
  }

  static int max_name(const SafraNode& n) {
    int m = n.name;
    for (const auto& c : n.children) m = std::max(m, max_name(c));
    return m;
  }

  void spawn(SafraNode& n, int& fresh) const {
    // Children existing before this step are processed first; the new child
    // is youngest by construction.
    for (auto& c : n.children) spawn(c, fresh);
    StateSet acc;
    for (int q : n.label)
      if (nba_.accepting[q]) acc.push_back(q);
    if (!acc.empty()) {
      SafraNode child;
      child.name = fresh++;
      child.label = std::move(acc);
      n.children.push_back(std::move(child));
    }
  }

  static void remove_states(SafraNode& n, const StateSet& dead) {
    StateSet kept;
    for (int q : n.label)
      if (!std::binary_search(dead.begin(), dead.end(), q)) kept.push_back(q);
    n.label = std::move(kept);
    for (auto& c : n.children) remove_states(c, dead);
  }

  static void horizontal(SafraNode& n) {
    std::sort(n.children.begin(), n.children.end(),
              [](const SafraNode& a, const SafraNode& b) { return a.name < b.name; });
    StateSet claimed;
    for (auto& c : n.children) {
      remove_states(c, claimed);
      claimed = set_union(claimed, c.label);
    }
    for (auto& c : n.children) horizontal(c);
  }

  static void remove_empty(SafraNode& n, int& min_dead) {
    std::vector<SafraNode> kept;
    for (auto& c : n.children) {
      if (c.label.empty()) {
        int dead_name = min_subtree_name(c);
        if (min_dead < 0 || dead_name < min_dead) min_dead = dead_name;
      } else {
        remove_empty(c, min_dead);
        kept.push_back(std::move(c));
      }
    }
    n.children = std::move(kept);
  }

  static int min_subtree_name(const SafraNode& n) {
    int m = n.name;
    for (const auto& c : n.children) m = std::min(m, min_subtree_name(c));
    return m;
  }

  static void breakpoints(SafraNode& n, int& min_bp) {
    if (!n.children.empty()) {
      StateSet covered;
      for (const auto& c : n.children) covered = set_union(covered, c.label);
      if (covered == n.label) {
        n.children.clear();
        if (min_bp < 0 || n.name < min_bp) min_bp = n.name;
        return;
      }
    }
    for (auto& c : n.children) breakpoints(c, min_bp);
  }

  static void collect_names(const SafraNode& n, std::vector<int>& out) {
    out.push_back(n.name);
    for (const auto& c : n.children) collect_names(c, out);
  }

  static void rename(SafraNode& n, const std::map<int, int>& remap) {
    n.name = remap.at(n.name);
    for (auto& c : n.children) rename(c, remap);
  }

  const Nba& nba_;
};

}  // namespace detail

/// Language-preserving determinization via compact history trees. DPA states
/// carry the last transition's priority; colors are flipped into the
/// max-even convention.
inline Dpa determinize(const Nba& nba) {
  detail::SafraDeterminizer det(nba);
  Dpa dpa;
  dpa.props = nba.props;

  int ceiling = det.priority_ceiling();
  using Key = std::pair<std::vector<int>, int>;  // (tree, incoming priority)
  std::map<Key, int> index;
  std::vector<detail::SafraTree> trees;

  auto intern = [&](const detail::SafraTree& t, int prio) {
    Key key{t.key(), prio};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = dpa.size();
    index.emplace(std::move(key), id);
    trees.push_back(t);
    dpa.color.push_back(ceiling - prio);
    dpa.delta.emplace_back(dpa.num_letters(), -1);
    dpa.state_names.push_back("t" + std::to_string(id));
    return id;
  };

  int init = intern(det.initial(), det.neutral_priority());
  dpa.initial = init;
  for (int s = 0; s < dpa.size(); ++s) {
    for (int a = 0; a < dpa.num_letters(); ++a) {
      detail::SafraStep step = det.step(trees[s], a);
      dpa.delta[s][a] = intern(step.tree, det.priority(step));
    }
  }
  return dpa;
}

/// Acceptance of an ultimately periodic word by a DPA.
inline bool dpa_lasso_membership(const Dpa& dpa, const LassoWord& w) {
  int L = static_cast<int>(w.core_length());
  std::map<std::pair<int, int>, int> seen;  // (state, phase) -> step
  std::vector<int> states{dpa.initial};
  auto nxt = [&](int i) { return i + 1 < L ? i + 1 : static_cast<int>(w.prefix.size()); };
  int state = dpa.initial, phase = 0, step = 0;
  for (;;) {
    auto key = std::make_pair(state, phase);
    auto it = seen.find(key);
    if (it != seen.end()) {
      // The states of the detected loop are visited infinitely often.
      int max_color = 0;
      for (int k = it->second; k <= step; ++k) max_color = std::max(max_color, dpa.color[states[k]]);
      return max_color % 2 == 0;
    }
    seen[key] = step;
    int a = static_cast<int>(dpa.mask_of(w.letter_at(phase)));
    state = dpa.delta[state][a];
    phase = nxt(phase);
    states.push_back(state);
    ++step;
  }
}

}  // namespace pldl
