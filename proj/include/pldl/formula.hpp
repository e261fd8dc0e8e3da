#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pldl/prop.hpp"

namespace pldl {

enum class FormulaKind {
  True,
  False,
  Atom,
  NegAtom,
  And,
  Or,
  Diamond,
  Box,
  DiamondLe,
  BoxLe,
  DiamondCp,
  BoxCp,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class RegexKind { Prop, Test, Union, Concat, Star };

struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

/// Regular expressions with tests: Prop atoms consume one letter, tests none.
struct Regex {
  RegexKind kind;
  PropPtr prop;       // Prop
  FormulaPtr test;    // Test
  RegexPtr lhs, rhs;  // Star uses lhs only
};

/// Formulas in negation normal form. The changepoint variants DiamondCp/BoxCp
/// only arise through rewriting, never from user input.
struct Formula {
  FormulaKind kind;
  std::string atom;     // Atom, NegAtom
  std::string var;      // DiamondLe, BoxLe
  FormulaPtr lhs, rhs;  // And/Or use both; modalities use lhs as body
  RegexPtr regex;       // modalities
};

/// Total in effect: variables absent from the map are read as 0.
struct Valuation {
  std::map<std::string, long> values;

  long at(const std::string& v) const {
    auto it = values.find(v);
    return it == values.end() ? 0 : it->second;
  }
  void set(const std::string& v, long n) { values[v] = n; }
};

// ---- constructors ----------------------------------------------------------

inline FormulaPtr f_true() {
  static FormulaPtr t = std::make_shared<Formula>(Formula{FormulaKind::True, {}, {}, nullptr, nullptr, nullptr});
  return t;
}
inline FormulaPtr f_false() {
  static FormulaPtr f = std::make_shared<Formula>(Formula{FormulaKind::False, {}, {}, nullptr, nullptr, nullptr});
  return f;
}
inline FormulaPtr f_atom(std::string p) {
  return std::make_shared<Formula>(Formula{FormulaKind::Atom, std::move(p), {}, nullptr, nullptr, nullptr});
}
inline FormulaPtr f_neg_atom(std::string p) {
  return std::make_shared<Formula>(Formula{FormulaKind::NegAtom, std::move(p), {}, nullptr, nullptr, nullptr});
}
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{FormulaKind::And, {}, {}, std::move(a), std::move(b), nullptr});
}
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{FormulaKind::Or, {}, {}, std::move(a), std::move(b), nullptr});
}
inline FormulaPtr f_diamond(RegexPtr r, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FormulaKind::Diamond, {}, {}, std::move(body), nullptr, std::move(r)});
}
inline FormulaPtr f_box(RegexPtr r, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FormulaKind::Box, {}, {}, std::move(body), nullptr, std::move(r)});
}
inline FormulaPtr f_diamond_le(RegexPtr r, std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{FormulaKind::DiamondLe, {}, std::move(var), std::move(body), nullptr, std::move(r)});
}
inline FormulaPtr f_box_le(RegexPtr r, std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{FormulaKind::BoxLe, {}, std::move(var), std::move(body), nullptr, std::move(r)});
}
inline FormulaPtr f_diamond_cp(RegexPtr r, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FormulaKind::DiamondCp, {}, {}, std::move(body), nullptr, std::move(r)});
}
inline FormulaPtr f_box_cp(RegexPtr r, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FormulaKind::BoxCp, {}, {}, std::move(body), nullptr, std::move(r)});
}

inline RegexPtr r_prop(PropPtr phi) {
  return std::make_shared<Regex>(Regex{RegexKind::Prop, std::move(phi), nullptr, nullptr, nullptr});
}
inline RegexPtr r_test(FormulaPtr theta) {
  return std::make_shared<Regex>(Regex{RegexKind::Test, nullptr, std::move(theta), nullptr, nullptr});
}
inline RegexPtr r_union(RegexPtr a, RegexPtr b) {
  return std::make_shared<Regex>(Regex{RegexKind::Union, nullptr, nullptr, std::move(a), std::move(b)});
}
inline RegexPtr r_concat(RegexPtr a, RegexPtr b) {
  return std::make_shared<Regex>(Regex{RegexKind::Concat, nullptr, nullptr, std::move(a), std::move(b)});
}
inline RegexPtr r_star(RegexPtr a) {
  return std::make_shared<Regex>(Regex{RegexKind::Star, nullptr, nullptr, std::move(a), nullptr});
}

// ---- structural comparison -------------------------------------------------

int formula_compare(const FormulaPtr& a, const FormulaPtr& b);

inline int regex_compare(const RegexPtr& a, const RegexPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case RegexKind::Prop: return prop_compare(a->prop, b->prop);
    case RegexKind::Test: return formula_compare(a->test, b->test);
    case RegexKind::Union:
    case RegexKind::Concat: {
      int c = regex_compare(a->lhs, b->lhs);
      return c != 0 ? c : regex_compare(a->rhs, b->rhs);
    }
    case RegexKind::Star: return regex_compare(a->lhs, b->lhs);
  }
  return 0;
}

inline int formula_compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case FormulaKind::True:
    case FormulaKind::False: return 0;
    case FormulaKind::Atom:
    case FormulaKind::NegAtom: return a->atom.compare(b->atom);
    case FormulaKind::And:
    case FormulaKind::Or: {
      int c = formula_compare(a->lhs, b->lhs);
      return c != 0 ? c : formula_compare(a->rhs, b->rhs);
    }
    case FormulaKind::Diamond:
    case FormulaKind::Box:
    case FormulaKind::DiamondCp:
    case FormulaKind::BoxCp: {
      int c = regex_compare(a->regex, b->regex);
      return c != 0 ? c : formula_compare(a->lhs, b->lhs);
    }
    case FormulaKind::DiamondLe:
    case FormulaKind::BoxLe: {
      int c = a->var.compare(b->var);
      if (c != 0) return c;
      c = regex_compare(a->regex, b->regex);
      return c != 0 ? c : formula_compare(a->lhs, b->lhs);
    }
  }
  return 0;
}

inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) { return formula_compare(a, b) == 0; }
inline bool regex_equal(const RegexPtr& a, const RegexPtr& b) { return regex_compare(a, b) == 0; }

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return formula_compare(a, b) < 0; }
};

using FormulaSet = std::set<FormulaPtr, FormulaLess>;

inline bool is_temporal(FormulaKind k) {
  return k == FormulaKind::Diamond || k == FormulaKind::Box || k == FormulaKind::DiamondLe ||
         k == FormulaKind::BoxLe || k == FormulaKind::DiamondCp || k == FormulaKind::BoxCp;
}

// ---- closure, size, variables, propositions --------------------------------

namespace detail {

inline void closure_rec(const FormulaPtr& phi, FormulaSet& out);

inline void closure_regex(const RegexPtr& r, FormulaSet& out) {
  switch (r->kind) {
    case RegexKind::Prop: break;
    case RegexKind::Test: closure_rec(r->test, out); break;
    case RegexKind::Union:
    case RegexKind::Concat:
      closure_regex(r->lhs, out);
      closure_regex(r->rhs, out);
      break;
    case RegexKind::Star: closure_regex(r->lhs, out); break;
  }
}

inline void closure_rec(const FormulaPtr& phi, FormulaSet& out) {
  if (!out.insert(phi).second) return;
  switch (phi->kind) {
    case FormulaKind::And:
    case FormulaKind::Or:
      closure_rec(phi->lhs, out);
      closure_rec(phi->rhs, out);
      break;
    default:
      if (is_temporal(phi->kind)) {
        closure_regex(phi->regex, out);
        closure_rec(phi->lhs, out);
      }
      break;
  }
}

inline long regex_nodes(const RegexPtr& r);

inline long formula_regex_nodes(const FormulaPtr& phi) {
  switch (phi->kind) {
    case FormulaKind::And:
    case FormulaKind::Or: return formula_regex_nodes(phi->lhs) + formula_regex_nodes(phi->rhs);
    default:
      if (is_temporal(phi->kind)) return regex_nodes(phi->regex) + formula_regex_nodes(phi->lhs);
      return 0;
  }
}

inline long regex_nodes(const RegexPtr& r) {
  switch (r->kind) {
    case RegexKind::Prop: return 1;
    case RegexKind::Test: return 1 + formula_regex_nodes(r->test);
    case RegexKind::Union:
    case RegexKind::Concat: return 1 + regex_nodes(r->lhs) + regex_nodes(r->rhs);
    case RegexKind::Star: return 1 + regex_nodes(r->lhs);
  }
  return 0;
}

inline long regex_formula_nodes(const RegexPtr& r);

/// Subformula occurrences counted with multiplicity, tests included.
inline long formula_nodes(const FormulaPtr& phi) {
  switch (phi->kind) {
    case FormulaKind::And:
    case FormulaKind::Or: return 1 + formula_nodes(phi->lhs) + formula_nodes(phi->rhs);
    default:
      if (is_temporal(phi->kind)) return 1 + regex_formula_nodes(phi->regex) + formula_nodes(phi->lhs);
      return 1;
  }
}

inline long regex_formula_nodes(const RegexPtr& r) {
  switch (r->kind) {
    case RegexKind::Prop: return 0;
    case RegexKind::Test: return formula_nodes(r->test);
    case RegexKind::Union:
    case RegexKind::Concat: return regex_formula_nodes(r->lhs) + regex_formula_nodes(r->rhs);
    case RegexKind::Star: return regex_formula_nodes(r->lhs);
  }
  return 0;
}

}  // namespace detail

inline FormulaSet closure(const FormulaPtr& phi) {
  FormulaSet out;
  detail::closure_rec(phi, out);
  return out;
}

/// Formula nodes plus regex length (node count), both with multiplicity.
/// Counting occurrences rather than distinct closure members keeps the size
/// invariant under negation exact.
inline long size_of(const FormulaPtr& phi) {
  return detail::formula_nodes(phi) + detail::formula_regex_nodes(phi);
}

struct VariableSets {
  std::set<std::string> diamond, box;
};

inline VariableSets variables(const FormulaPtr& phi) {
  VariableSets vs;
  for (const auto& f : closure(phi)) {
    if (f->kind == FormulaKind::DiamondLe) vs.diamond.insert(f->var);
    if (f->kind == FormulaKind::BoxLe) vs.box.insert(f->var);
  }
  return vs;
}

namespace detail {
inline void props_regex(const RegexPtr& r, std::set<std::string>& out);

inline void props_rec(const FormulaPtr& phi, std::set<std::string>& out) {
  switch (phi->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom: out.insert(phi->atom); break;
    case FormulaKind::And:
    case FormulaKind::Or:
      props_rec(phi->lhs, out);
      props_rec(phi->rhs, out);
      break;
    default:
      if (is_temporal(phi->kind)) {
        props_regex(phi->regex, out);
        props_rec(phi->lhs, out);
      }
      break;
  }
}

inline void props_regex(const RegexPtr& r, std::set<std::string>& out) {
  switch (r->kind) {
    case RegexKind::Prop: collect_prop_atoms(r->prop, out); break;
    case RegexKind::Test: props_rec(r->test, out); break;
    case RegexKind::Union:
    case RegexKind::Concat:
      props_regex(r->lhs, out);
      props_regex(r->rhs, out);
      break;
    case RegexKind::Star: props_regex(r->lhs, out); break;
  }
}
}  // namespace detail

inline std::set<std::string> propositions(const FormulaPtr& phi) {
  std::set<std::string> out;
  detail::props_rec(phi, out);
  return out;
}

// ---- negation --------------------------------------------------------------

/// Dual formula: same size, involutive, negation pushed to the atoms.
/// Tests inside regexes are left untouched.
inline FormulaPtr negate(const FormulaPtr& phi) {
  switch (phi->kind) {
    case FormulaKind::True: return f_false();
    case FormulaKind::False: return f_true();
    case FormulaKind::Atom: return f_neg_atom(phi->atom);
    case FormulaKind::NegAtom: return f_atom(phi->atom);
    case FormulaKind::And: return f_or(negate(phi->lhs), negate(phi->rhs));
    case FormulaKind::Or: return f_and(negate(phi->lhs), negate(phi->rhs));
    case FormulaKind::Diamond: return f_box(phi->regex, negate(phi->lhs));
    case FormulaKind::Box: return f_diamond(phi->regex, negate(phi->lhs));
    case FormulaKind::DiamondLe: return f_box_le(phi->regex, phi->var, negate(phi->lhs));
    case FormulaKind::BoxLe: return f_diamond_le(phi->regex, phi->var, negate(phi->lhs));
    case FormulaKind::DiamondCp: return f_box_cp(phi->regex, negate(phi->lhs));
    case FormulaKind::BoxCp: return f_diamond_cp(phi->regex, negate(phi->lhs));
  }
  return phi;
}

// ---- fragments -------------------------------------------------------------

enum class FragmentTag { Ldl, PldlDiamond, PldlBox, WellFormed, NotWellFormed };

inline FragmentTag classify(const FormulaPtr& phi) {
  VariableSets vs = variables(phi);
  for (const auto& v : vs.diamond)
    if (vs.box.count(v)) return FragmentTag::NotWellFormed;
  if (vs.diamond.empty() && vs.box.empty()) return FragmentTag::Ldl;
  if (vs.box.empty()) return FragmentTag::PldlDiamond;
  if (vs.diamond.empty()) {
    FragmentTag neg = classify(negate(phi));
    if (neg == FragmentTag::PldlDiamond) return FragmentTag::PldlBox;
  }
  return FragmentTag::WellFormed;
}

inline bool is_well_formed(const FormulaPtr& phi) { return classify(phi) != FragmentTag::NotWellFormed; }

inline const char* fragment_name(FragmentTag t) {
  switch (t) {
    case FragmentTag::Ldl: return "ldl";
    case FragmentTag::PldlDiamond: return "pldl-diamond";
    case FragmentTag::PldlBox: return "pldl-box";
    case FragmentTag::WellFormed: return "well-formed";
    case FragmentTag::NotWellFormed: return "not-well-formed";
  }
  return "?";
}

// ---- regex hat rewriting ---------------------------------------------------

/// Reduces r to a single test r̂ with R(r̂,w,α) = R(r,w,α) ∩ {(n,n)}.
/// Stars become tt?, branches that must consume a letter are pruned,
/// remaining tests are merged.
inline RegexPtr regex_hat(const RegexPtr& r) {
  struct Impl {
    // Returns either a Test or a Prop node; Prop means "must consume".
    static RegexPtr reduce(const RegexPtr& r) {
      switch (r->kind) {
        case RegexKind::Star: return r_test(f_true());
        case RegexKind::Prop: return r;
        case RegexKind::Test: return r;
        case RegexKind::Union: {
          RegexPtr a = reduce(r->lhs), b = reduce(r->rhs);
          if (a->kind == RegexKind::Prop && b->kind == RegexKind::Prop) return r_prop(prop_false());
          if (a->kind == RegexKind::Prop) return b;
          if (b->kind == RegexKind::Prop) return a;
          return r_test(f_or(a->test, b->test));
        }
        case RegexKind::Concat: {
          RegexPtr a = reduce(r->lhs), b = reduce(r->rhs);
          if (a->kind == RegexKind::Prop || b->kind == RegexKind::Prop) return r_test(f_false());
          return r_test(f_and(a->test, b->test));
        }
      }
      return r;
    }
  };
  RegexPtr out = Impl::reduce(r);
  if (out->kind == RegexKind::Prop) return r_test(f_false());
  return out;
}

// ---- box elimination and related rewritings --------------------------------

namespace detail {
inline RegexPtr map_regex_formulas(const RegexPtr& r, FormulaPtr (*fn)(const FormulaPtr&));
}

/// Replaces every [r]<=y psi by [r̂]psi; the result is a PLDL-diamond formula.
inline FormulaPtr eliminate_boxes(const FormulaPtr& phi) {
  switch (phi->kind) {
    case FormulaKind::And: return f_and(eliminate_boxes(phi->lhs), eliminate_boxes(phi->rhs));
    case FormulaKind::Or: return f_or(eliminate_boxes(phi->lhs), eliminate_boxes(phi->rhs));
    case FormulaKind::Diamond:
      return f_diamond(detail::map_regex_formulas(phi->regex, &eliminate_boxes), eliminate_boxes(phi->lhs));
    case FormulaKind::Box:
      return f_box(detail::map_regex_formulas(phi->regex, &eliminate_boxes), eliminate_boxes(phi->lhs));
    case FormulaKind::DiamondLe:
      return f_diamond_le(detail::map_regex_formulas(phi->regex, &eliminate_boxes), phi->var,
                          eliminate_boxes(phi->lhs));
    case FormulaKind::BoxLe:
      return f_box(regex_hat(detail::map_regex_formulas(phi->regex, &eliminate_boxes)), eliminate_boxes(phi->lhs));
    case FormulaKind::DiamondCp:
      return f_diamond_cp(detail::map_regex_formulas(phi->regex, &eliminate_boxes), eliminate_boxes(phi->lhs));
    case FormulaKind::BoxCp:
      return f_box_cp(detail::map_regex_formulas(phi->regex, &eliminate_boxes), eliminate_boxes(phi->lhs));
    default: return phi;
  }
}

namespace detail {
inline RegexPtr map_regex_formulas(const RegexPtr& r, FormulaPtr (*fn)(const FormulaPtr&)) {
  switch (r->kind) {
    case RegexKind::Prop: return r;
    case RegexKind::Test: return r_test(fn(r->test));
    case RegexKind::Union: return r_union(map_regex_formulas(r->lhs, fn), map_regex_formulas(r->rhs, fn));
    case RegexKind::Concat: return r_concat(map_regex_formulas(r->lhs, fn), map_regex_formulas(r->rhs, fn));
    case RegexKind::Star: return r_star(map_regex_formulas(r->lhs, fn));
  }
  return r;
}
}  // namespace detail

// ---- alternating-color rewriting -------------------------------------------

/// rel: every <r>{<= x} psi becomes the changepoint-bounded <rel(r)>{cp} rel(psi),
/// inside regex tests as well.
inline FormulaPtr rel_transform(const FormulaPtr& phi) {
  switch (phi->kind) {
    case FormulaKind::And: return f_and(rel_transform(phi->lhs), rel_transform(phi->rhs));
    case FormulaKind::Or: return f_or(rel_transform(phi->lhs), rel_transform(phi->rhs));
    case FormulaKind::Diamond:
      return f_diamond(detail::map_regex_formulas(phi->regex, &rel_transform), rel_transform(phi->lhs));
    case FormulaKind::Box:
      return f_box(detail::map_regex_formulas(phi->regex, &rel_transform), rel_transform(phi->lhs));
    case FormulaKind::DiamondLe:
      return f_diamond_cp(detail::map_regex_formulas(phi->regex, &rel_transform), rel_transform(phi->lhs));
    case FormulaKind::DiamondCp:
      return f_diamond_cp(detail::map_regex_formulas(phi->regex, &rel_transform), rel_transform(phi->lhs));
    case FormulaKind::BoxCp:
      return f_box_cp(detail::map_regex_formulas(phi->regex, &rel_transform), rel_transform(phi->lhs));
    case FormulaKind::BoxLe:
      throw std::invalid_argument("rel_transform: parameterized box in a diamond-fragment formula");
    default: return phi;
  }
}

/// "p holds infinitely often" for the given proposition (or its negation).
inline FormulaPtr chi_infinitely_often(const std::string& prop, bool negated) {
  FormulaPtr at = negated ? f_neg_atom(prop) : f_atom(prop);
  return f_box(r_star(r_prop(prop_true())), f_diamond(r_star(r_prop(prop_true())), at));
}

/// rel(phi) ∧ "infinitely often color" ∧ "infinitely often not color".
inline FormulaPtr color_transform(const FormulaPtr& phi, const std::string& color) {
  FragmentTag tag = classify(phi);
  if (tag != FragmentTag::Ldl && tag != FragmentTag::PldlDiamond)
    throw std::invalid_argument("color_transform: formula is not in the diamond fragment");
  if (propositions(phi).count(color))
    throw std::invalid_argument("color_transform: color proposition occurs in the formula");
  return f_and(f_and(rel_transform(phi), chi_infinitely_often(color, false)), chi_infinitely_often(color, true));
}

// ---- single-variable reductions --------------------------------------------

inline FormulaPtr rename_all_vars_to(const FormulaPtr& phi, const std::string& z) {
  struct Impl {
    static FormulaPtr go(const FormulaPtr& phi, const std::string& z) {
      switch (phi->kind) {
        case FormulaKind::And: return f_and(go(phi->lhs, z), go(phi->rhs, z));
        case FormulaKind::Or: return f_or(go(phi->lhs, z), go(phi->rhs, z));
        case FormulaKind::Diamond: return f_diamond(regex(phi->regex, z), go(phi->lhs, z));
        case FormulaKind::Box: return f_box(regex(phi->regex, z), go(phi->lhs, z));
        case FormulaKind::DiamondCp: return f_diamond_cp(regex(phi->regex, z), go(phi->lhs, z));
        case FormulaKind::BoxCp: return f_box_cp(regex(phi->regex, z), go(phi->lhs, z));
        case FormulaKind::DiamondLe: return f_diamond_le(regex(phi->regex, z), z, go(phi->lhs, z));
        case FormulaKind::BoxLe: return f_box_le(regex(phi->regex, z), z, go(phi->lhs, z));
        default: return phi;
      }
    }
    static RegexPtr regex(const RegexPtr& r, const std::string& z) {
      switch (r->kind) {
        case RegexKind::Prop: return r;
        case RegexKind::Test: return r_test(go(r->test, z));
        case RegexKind::Union: return r_union(regex(r->lhs, z), regex(r->rhs, z));
        case RegexKind::Concat: return r_concat(regex(r->lhs, z), regex(r->rhs, z));
        case RegexKind::Star: return r_star(regex(r->lhs, z));
      }
      return r;
    }
  };
  return Impl::go(phi, z);
}

/// Keeps boxes bounded by y; every other parameterized box is hat-rewritten away.
inline FormulaPtr fix_all_but_one_box(const FormulaPtr& phi, const std::string& y) {
  struct Impl {
    static FormulaPtr go(const FormulaPtr& phi, const std::string& y) {
      switch (phi->kind) {
        case FormulaKind::And: return f_and(go(phi->lhs, y), go(phi->rhs, y));
        case FormulaKind::Or: return f_or(go(phi->lhs, y), go(phi->rhs, y));
        case FormulaKind::Diamond: return f_diamond(regex(phi->regex, y), go(phi->lhs, y));
        case FormulaKind::Box: return f_box(regex(phi->regex, y), go(phi->lhs, y));
        case FormulaKind::DiamondCp: return f_diamond_cp(regex(phi->regex, y), go(phi->lhs, y));
        case FormulaKind::BoxCp: return f_box_cp(regex(phi->regex, y), go(phi->lhs, y));
        case FormulaKind::DiamondLe: return f_diamond_le(regex(phi->regex, y), phi->var, go(phi->lhs, y));
        case FormulaKind::BoxLe:
          if (phi->var == y) return f_box_le(regex(phi->regex, y), y, go(phi->lhs, y));
          return f_box(regex_hat(regex(phi->regex, y)), go(phi->lhs, y));
        default: return phi;
      }
    }
    static RegexPtr regex(const RegexPtr& r, const std::string& y) {
      switch (r->kind) {
        case RegexKind::Prop: return r;
        case RegexKind::Test: return r_test(go(r->test, y));
        case RegexKind::Union: return r_union(regex(r->lhs, y), regex(r->rhs, y));
        case RegexKind::Concat: return r_concat(regex(r->lhs, y), regex(r->rhs, y));
        case RegexKind::Star: return r_star(regex(r->lhs, y));
      }
      return r;
    }
  };
  return Impl::go(phi, y);
}

}  // namespace pldl
