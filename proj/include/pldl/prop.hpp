#pragma once

#include <memory>
#include <set>
#include <string>

namespace pldl {

/// A letter of the word alphabet: the set of atomic propositions holding at a position.
using Letter = std::set<std::string>;

enum class PropKind { True, False, Atom, Not, And, Or };

struct PropFormula;
using PropPtr = std::shared_ptr<const PropFormula>;

/// Propositional formulas over atomic propositions, used as consuming regex atoms
/// and as edge labels of regex automata.
struct PropFormula {
  PropKind kind;
  std::string atom;   // Atom
  PropPtr lhs, rhs;   // Not uses lhs only
};

inline PropPtr prop_true() {
  static PropPtr t = std::make_shared<PropFormula>(PropFormula{PropKind::True, {}, nullptr, nullptr});
  return t;
}
inline PropPtr prop_false() {
  static PropPtr f = std::make_shared<PropFormula>(PropFormula{PropKind::False, {}, nullptr, nullptr});
  return f;
}
inline PropPtr prop_atom(std::string name) {
  return std::make_shared<PropFormula>(PropFormula{PropKind::Atom, std::move(name), nullptr, nullptr});
}
inline PropPtr prop_not(PropPtr a) {
  return std::make_shared<PropFormula>(PropFormula{PropKind::Not, {}, std::move(a), nullptr});
}
inline PropPtr prop_and(PropPtr a, PropPtr b) {
  return std::make_shared<PropFormula>(PropFormula{PropKind::And, {}, std::move(a), std::move(b)});
}
inline PropPtr prop_or(PropPtr a, PropPtr b) {
  return std::make_shared<PropFormula>(PropFormula{PropKind::Or, {}, std::move(a), std::move(b)});
}

/// A |= phi for a concrete letter A.
inline bool prop_eval(const PropPtr& phi, const Letter& a) {
  switch (phi->kind) {
    case PropKind::True: return true;
    case PropKind::False: return false;
    case PropKind::Atom: return a.count(phi->atom) != 0;
    case PropKind::Not: return !prop_eval(phi->lhs, a);
    case PropKind::And: return prop_eval(phi->lhs, a) && prop_eval(phi->rhs, a);
    case PropKind::Or: return prop_eval(phi->lhs, a) || prop_eval(phi->rhs, a);
  }
  return false;
}

inline int prop_compare(const PropPtr& a, const PropPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case PropKind::True:
    case PropKind::False: return 0;
    case PropKind::Atom: return a->atom.compare(b->atom);
    case PropKind::Not: return prop_compare(a->lhs, b->lhs);
    case PropKind::And:
    case PropKind::Or: {
      int c = prop_compare(a->lhs, b->lhs);
      return c != 0 ? c : prop_compare(a->rhs, b->rhs);
    }
  }
  return 0;
}

inline void collect_prop_atoms(const PropPtr& phi, std::set<std::string>& out) {
  switch (phi->kind) {
    case PropKind::Atom: out.insert(phi->atom); break;
    case PropKind::Not: collect_prop_atoms(phi->lhs, out); break;
    case PropKind::And:
    case PropKind::Or:
      collect_prop_atoms(phi->lhs, out);
      collect_prop_atoms(phi->rhs, out);
      break;
    default: break;
  }
}

inline std::string print_prop(const PropPtr& phi) {
  switch (phi->kind) {
    case PropKind::True: return "tt";
    case PropKind::False: return "ff";
    case PropKind::Atom: return phi->atom;
    case PropKind::Not: return "!" + (phi->lhs->kind == PropKind::Atom
                                          ? print_prop(phi->lhs)
                                          : "(" + print_prop(phi->lhs) + ")");
    case PropKind::And: return "(" + print_prop(phi->lhs) + " & " + print_prop(phi->rhs) + ")";
    case PropKind::Or: return "(" + print_prop(phi->lhs) + " | " + print_prop(phi->rhs) + ")";
  }
  return {};
}

}  // namespace pldl
