#pragma once

#include <random>
#include <string>
#include <vector>

#include "pldl/formula.hpp"
#include "pldl/lasso.hpp"

namespace pldl {

/// Seeded random formulas and exhaustive small lassos for the
/// cross-validation suites.
class FormulaGenerator {
 public:
  FormulaGenerator(std::vector<std::string> props, unsigned seed) : props_(std::move(props)), rng_(seed) {}

  /// Variable-free formula, optionally with changepoint operators, with
  /// size_of at most max_size (retries until the budget is met).
  FormulaPtr ldl_formula(long max_size, bool with_cp) {
    for (;;) {
      FormulaPtr f = formula(3, with_cp);
      if (size_of(f) <= max_size) return f;
    }
  }

  /// Formula with exactly one parameterized operator bounded by `var`;
  /// diamond- or box-parameterized with equal probability unless forced.
  FormulaPtr single_var_formula(long max_size, const std::string& var, int force_box = -1) {
    for (;;) {
      bool box = force_box >= 0 ? force_box != 0 : coin();
      FormulaPtr body = formula(2, false);
      RegexPtr r = regex(2);
      FormulaPtr f = box ? f_box_le(r, var, body) : f_diamond_le(r, var, body);
      if (pick(3) == 0) f = coin() ? f_and(f, formula(1, false)) : f_or(formula(1, false), f);
      if (pick(4) == 0) f = coin() ? f_diamond(regex(1), f) : f_box(regex(1), f);
      VariableSets vs = variables(f);
      if (size_of(f) <= max_size && vs.diamond.size() + vs.box.size() == 1) return f;
    }
  }

  FormulaPtr formula(int depth, bool with_cp) {
    if (depth == 0) return atom_formula();
    switch (pick(with_cp ? 8 : 6)) {
      case 0:
      case 1: return atom_formula();
      case 2: return f_and(formula(depth - 1, with_cp), formula(depth - 1, with_cp));
      case 3: return f_or(formula(depth - 1, with_cp), formula(depth - 1, with_cp));
      case 4: return f_diamond(regex(depth - 1), formula(depth - 1, with_cp));
      case 5: return f_box(regex(depth - 1), formula(depth - 1, with_cp));
      case 6: return f_diamond_cp(regex(depth - 1), formula(depth - 1, with_cp));
      default: return f_box_cp(regex(depth - 1), formula(depth - 1, with_cp));
    }
  }

  RegexPtr regex(int depth) {
    if (depth == 0) return r_prop(prop_formula(1));
    switch (pick(6)) {
      case 0:
      case 1: return r_prop(prop_formula(depth));
      case 2: return r_test(formula(depth - 1, false));
      case 3: return r_union(regex(depth - 1), regex(depth - 1));
      case 4: return r_concat(regex(depth - 1), regex(depth - 1));
      default: return r_star(regex(depth - 1));
    }
  }

  PropPtr prop_formula(int depth) {
    if (depth == 0 || pick(2) == 0) {
      switch (pick(props_.size() + 2)) {
        case 0: return prop_true();
        case 1: return coin() ? prop_not(prop_atom(props_[pick(props_.size())])) : prop_false();
        default: return prop_atom(props_[pick(props_.size())]);
      }
    }
    return coin() ? prop_and(prop_formula(depth - 1), prop_formula(depth - 1))
                  : prop_or(prop_formula(depth - 1), prop_formula(depth - 1));
  }

  FormulaPtr atom_formula() {
    std::size_t i = pick(props_.size());
    return coin() ? f_atom(props_[i]) : f_neg_atom(props_[i]);
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return pick(2) == 0; }

 private:
  std::vector<std::string> props_;
  std::mt19937 rng_;
};

/// Every letter over the given propositions.
inline std::vector<Letter> all_letters(const std::vector<std::string>& props) {
  std::vector<Letter> out;
  for (unsigned m = 0; m < (1u << props.size()); ++m) {
    Letter a;
    for (std::size_t i = 0; i < props.size(); ++i)
      if (m & (1u << i)) a.insert(props[i]);
    out.push_back(std::move(a));
  }
  return out;
}

/// Every lasso with |prefix| + |cycle| <= max_total (cycle nonempty).
inline std::vector<LassoWord> enumerate_lassos(const std::vector<std::string>& props, int max_total) {
  std::vector<Letter> letters = all_letters(props);
  std::vector<LassoWord> out;
  for (int total = 1; total <= max_total; ++total) {
    std::vector<std::size_t> idx(total, 0);
    for (;;) {
      for (int plen = 0; plen < total; ++plen) {
        LassoWord w;
        for (int i = 0; i < plen; ++i) w.prefix.push_back(letters[idx[i]]);
        for (int i = plen; i < total; ++i) w.cycle.push_back(letters[idx[i]]);
        out.push_back(std::move(w));
      }
      int pos = total - 1;
      while (pos >= 0 && idx[pos] + 1 == letters.size()) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
  }
  return out;
}

}  // namespace pldl
