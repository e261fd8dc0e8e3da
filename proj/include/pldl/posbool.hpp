#pragma once

#include <algorithm>
#include <memory>
#include <vector>

namespace pldl {

/// Positive boolean formulas over automaton states, with tt and ff.
struct PosBool;
using PbPtr = std::shared_ptr<const PosBool>;

struct PosBool {
  enum Kind { True, False, State, And, Or } kind;
  int state = -1;
  PbPtr lhs, rhs;
};

inline PbPtr pb_true() {
  static PbPtr t = std::make_shared<PosBool>(PosBool{PosBool::True, -1, nullptr, nullptr});
  return t;
}
inline PbPtr pb_false() {
  static PbPtr f = std::make_shared<PosBool>(PosBool{PosBool::False, -1, nullptr, nullptr});
  return f;
}
inline PbPtr pb_state(int q) { return std::make_shared<PosBool>(PosBool{PosBool::State, q, nullptr, nullptr}); }

inline bool pb_is_true(const PbPtr& f) { return f->kind == PosBool::True; }
inline bool pb_is_false(const PbPtr& f) { return f->kind == PosBool::False; }

inline PbPtr pb_and(PbPtr a, PbPtr b) {
  if (a->kind == PosBool::False || b->kind == PosBool::False) return pb_false();
  if (a->kind == PosBool::True) return b;
  if (b->kind == PosBool::True) return a;
  return std::make_shared<PosBool>(PosBool{PosBool::And, -1, std::move(a), std::move(b)});
}
inline PbPtr pb_or(PbPtr a, PbPtr b) {
  if (a->kind == PosBool::True || b->kind == PosBool::True) return pb_true();
  if (a->kind == PosBool::False) return b;
  if (b->kind == PosBool::False) return a;
  return std::make_shared<PosBool>(PosBool{PosBool::Or, -1, std::move(a), std::move(b)});
}

inline PbPtr pb_big_or(const std::vector<PbPtr>& terms) {
  PbPtr acc = pb_false();
  for (const auto& t : terms) acc = pb_or(acc, t);
  return acc;
}
inline PbPtr pb_big_and(const std::vector<PbPtr>& terms) {
  PbPtr acc = pb_true();
  for (const auto& t : terms) acc = pb_and(acc, t);
  return acc;
}

/// Replaces state literals by tt/ff according to `decide` (0 = keep, 1 = tt,
/// -1 = ff), simplifying constants on the way.
template <typename Decide>
PbPtr pb_substitute(const PbPtr& f, Decide decide) {
  switch (f->kind) {
    case PosBool::True:
    case PosBool::False: return f;
    case PosBool::State: {
      int d = decide(f->state);
      if (d > 0) return pb_true();
      if (d < 0) return pb_false();
      return f;
    }
    case PosBool::And: return pb_and(pb_substitute(f->lhs, decide), pb_substitute(f->rhs, decide));
    case PosBool::Or: return pb_or(pb_substitute(f->lhs, decide), pb_substitute(f->rhs, decide));
  }
  return f;
}

/// Collects every state literal occurring in the formula.
inline void pb_states(const PbPtr& f, std::vector<int>& out) {
  switch (f->kind) {
    case PosBool::State: out.push_back(f->state); break;
    case PosBool::And:
    case PosBool::Or:
      pb_states(f->lhs, out);
      pb_states(f->rhs, out);
      break;
    default: break;
  }
}

using StateSet = std::vector<int>;  // sorted, unique

namespace detail {

inline StateSet set_union(const StateSet& a, const StateSet& b) {
  StateSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool subset_of(const StateSet& a, const StateSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<StateSet> prune_non_minimal(std::vector<StateSet> models) {
  std::sort(models.begin(), models.end(), [](const StateSet& a, const StateSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  models.erase(std::unique(models.begin(), models.end()), models.end());
  std::vector<StateSet> out;
  for (const auto& m : models) {
    bool dominated = false;
    for (const auto& kept : out)
      if (subset_of(kept, m)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(m);
  }
  return out;
}

}  // namespace detail

/// Minimal satisfying state sets; tt has the empty model, ff has none.
inline std::vector<StateSet> minimal_models(const PbPtr& f) {
  switch (f->kind) {
    case PosBool::True: return {StateSet{}};
    case PosBool::False: return {};
    case PosBool::State: return {StateSet{f->state}};
    case PosBool::Or: {
      std::vector<StateSet> out = minimal_models(f->lhs);
      std::vector<StateSet> rhs = minimal_models(f->rhs);
      out.insert(out.end(), rhs.begin(), rhs.end());
      return detail::prune_non_minimal(std::move(out));
    }
    case PosBool::And: {
      std::vector<StateSet> ls = minimal_models(f->lhs);
      std::vector<StateSet> rs = minimal_models(f->rhs);
      std::vector<StateSet> out;
      out.reserve(ls.size() * rs.size());
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(detail::set_union(l, r));
      return detail::prune_non_minimal(std::move(out));
    }
  }
  return {};
}

}  // namespace pldl
