#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "pldl/formula.hpp"
#include "pldl/lasso.hpp"
#include "pldl/nfa.hpp"

namespace pldl {

/// Set of end positions m with (n, m) in the match relation of a regex,
/// represented explicitly up to the point where the simulation loops and
/// periodically from there on.
struct MatchSet {
  std::size_t start = 0;
  std::set<std::size_t> ends;     // absolute positions, offsets < explicit_limit
  std::size_t explicit_limit = 0; // offsets j < explicit_limit are listed in ends
  bool periodic = false;          // matches continue with the period below
  std::size_t loop_offset = 0;    // offsets >= loop_offset repeat with period
  std::size_t period = 1;

  bool contains(std::size_t m) const {
    if (m < start) return false;
    std::size_t j = m - start;
    if (j < explicit_limit) return ends.count(start + j) != 0;
    if (period == 0) return false;
    std::size_t r = loop_offset + (j - loop_offset) % period;
    return ends.count(start + r) != 0;
  }
};

/// Brute-force semantics on ultimately periodic words. Deliberately naive and
/// automaton-pipeline independent apart from the Thompson compilation of
/// regexes; serves as ground truth for the automata modules.
class Oracle {
 public:
  Oracle(const LassoWord& w, const Valuation& alpha, std::string color = "p")
      : w_(w), alpha_(alpha), color_(std::move(color)) {}

  bool eval_at(std::size_t n, const FormulaPtr& phi) {
    n = w_.reduce(n);
    auto key = std::make_pair(phi.get(), n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool v = eval_raw(n, phi);
    memo_[key] = v;
    return v;
  }

  bool models(const FormulaPtr& phi) { return eval_at(0, phi); }

  MatchSet match_ends(std::size_t n, const RegexPtr& r) {
    const MarkedNfa& nfa = compiled(r);
    MatchSet out;
    out.start = n;

    std::vector<char> s(nfa.size(), 0);
    s[nfa.initial] = 1;
    std::map<std::pair<std::vector<char>, std::size_t>, std::size_t> seen;
    std::size_t j = 0;
    for (;;) {
      std::size_t pos = n + j;
      auto key = std::make_pair(s, w_.reduce(pos));
      auto it = seen.find(key);
      if (it != seen.end()) {
        out.explicit_limit = j;
        out.loop_offset = it->second;
        out.period = j - it->second;
        for (std::size_t k = it->second; k < j; ++k)
          if (out.ends.count(n + k)) out.periodic = true;
        return out;
      }
      seen[key] = j;
      std::vector<char> cl = closure_with_tests(nfa, s, pos);
      if (cl[nfa.final_state]) out.ends.insert(pos);
      s = letter_step(nfa, cl, w_.letter_at(pos));
      ++j;
      bool empty = true;
      for (char b : s) empty = empty && !b;
      if (empty) {
        out.explicit_limit = j;
        out.period = 0;
        return out;
      }
    }
  }

 private:
  bool eval_raw(std::size_t n, const FormulaPtr& phi) {
    switch (phi->kind) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::Atom: return w_.letter_at(n).count(phi->atom) != 0;
      case FormulaKind::NegAtom: return w_.letter_at(n).count(phi->atom) == 0;
      case FormulaKind::And: return eval_at(n, phi->lhs) && eval_at(n, phi->rhs);
      case FormulaKind::Or: return eval_at(n, phi->lhs) || eval_at(n, phi->rhs);
      case FormulaKind::Diamond: return eval_unbounded(n, phi, /*box=*/false, /*cp=*/false);
      case FormulaKind::Box: return eval_unbounded(n, phi, /*box=*/true, /*cp=*/false);
      case FormulaKind::DiamondCp: return eval_unbounded(n, phi, /*box=*/false, /*cp=*/true);
      case FormulaKind::BoxCp: return eval_unbounded(n, phi, /*box=*/true, /*cp=*/true);
      case FormulaKind::DiamondLe: return eval_bounded(n, phi, /*box=*/false);
      case FormulaKind::BoxLe: return eval_bounded(n, phi, /*box=*/true);
    }
    return false;
  }

  // Shared loop for <r>psi, [r]psi and their changepoint variants. The NFA of
  // r is stepped letter by letter; tests gate the ε-closure position by
  // position. For cp operators an infix with two color flips can never match.
  bool eval_unbounded(std::size_t n, const FormulaPtr& phi, bool box, bool cp) {
    const MarkedNfa& nfa = compiled(phi->regex);
    std::vector<char> s(nfa.size(), 0);
    s[nfa.initial] = 1;
    int flips = 0;
    std::set<std::tuple<std::vector<char>, std::size_t, int, bool>> seen;
    std::size_t j = 0;
    for (;;) {
      std::size_t pos = n + j;
      if (cp && flips > 1) return box;
      bool prev_color = j > 0 && w_.letter_at(pos - 1).count(color_) != 0;
      if (!seen.insert({s, w_.reduce(pos), flips, prev_color}).second) return box;
      std::vector<char> cl = closure_with_tests(nfa, s, pos);
      if (cl[nfa.final_state]) {
        bool sub = eval_at(pos, phi->lhs);
        if (!box && sub) return true;
        if (box && !sub) return false;
      }
      bool color_here = w_.letter_at(pos).count(color_) != 0;
      s = letter_step(nfa, cl, w_.letter_at(pos));
      if (cp && j > 0 && color_here != prev_color) ++flips;
      ++j;
      bool empty = true;
      for (char b : s) empty = empty && !b;
      if (empty) return box;
    }
  }

  bool eval_bounded(std::size_t n, const FormulaPtr& phi, bool box) {
    long bound = alpha_.at(phi->var);
    const MarkedNfa& nfa = compiled(phi->regex);
    std::vector<char> s(nfa.size(), 0);
    s[nfa.initial] = 1;
    for (long j = 0; j <= bound; ++j) {
      std::size_t pos = n + static_cast<std::size_t>(j);
      std::vector<char> cl = closure_with_tests(nfa, s, pos);
      if (cl[nfa.final_state]) {
        bool sub = eval_at(pos, phi->lhs);
        if (!box && sub) return true;
        if (box && !sub) return false;
      }
      s = letter_step(nfa, cl, w_.letter_at(pos));
      bool empty = true;
      for (char b : s) empty = empty && !b;
      if (empty) break;
    }
    return box;
  }

  // ε-closure restricted to states whose test (if any) holds at pos; the
  // source states themselves are subject to their tests as well.
  std::vector<char> closure_with_tests(const MarkedNfa& nfa, const std::vector<char>& s, std::size_t pos) {
    std::vector<char> cl(nfa.size(), 0);
    std::vector<int> stack;
    for (int q = 0; q < nfa.size(); ++q)
      if (s[q] && state_valid(nfa, q, pos)) {
        cl[q] = 1;
        stack.push_back(q);
      }
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      for (int t : nfa.eps_edges[q])
        if (!cl[t] && state_valid(nfa, t, pos)) {
          cl[t] = 1;
          stack.push_back(t);
        }
    }
    return cl;
  }

  std::vector<char> letter_step(const MarkedNfa& nfa, const std::vector<char>& cl, const Letter& a) {
    std::vector<char> next(nfa.size(), 0);
    for (int q = 0; q < nfa.size(); ++q)
      if (cl[q])
        for (const auto& e : nfa.letter_edges[q])
          if (prop_eval(e.label, a)) next[e.target] = 1;
    return next;
  }

  bool state_valid(const MarkedNfa& nfa, int q, std::size_t pos) {
    return !nfa.marking[q] || eval_at(pos, *nfa.marking[q]);
  }

  const MarkedNfa& compiled(const RegexPtr& r) {
    auto it = nfas_.find(r.get());
    if (it == nfas_.end()) it = nfas_.emplace(r.get(), thompson(r)).first;
    return it->second;
  }

  const LassoWord& w_;
  Valuation alpha_;
  std::string color_;
  std::map<std::pair<const Formula*, std::size_t>, bool> memo_;
  std::map<const Regex*, MarkedNfa> nfas_;
};

inline bool oracle_eval_at(const LassoWord& w, std::size_t n, const Valuation& alpha, const FormulaPtr& phi,
                           const std::string& color = "p") {
  Oracle o(w, alpha, color);
  return o.eval_at(n, phi);
}

inline bool oracle_models(const LassoWord& w, const Valuation& alpha, const FormulaPtr& phi,
                          const std::string& color = "p") {
  Oracle o(w, alpha, color);
  return o.models(phi);
}

inline MatchSet oracle_match_ends(const LassoWord& w, std::size_t n, const Valuation& alpha, const RegexPtr& r,
                                  const std::string& color = "p") {
  Oracle o(w, alpha, color);
  return o.match_ends(n, r);
}

}  // namespace pldl
