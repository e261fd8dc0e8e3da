#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pldl/formula.hpp"
#include "pldl/lasso.hpp"

namespace pldl {

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(pos) + ": " + msg), position(pos) {}
};

// ---- formula lexer/parser --------------------------------------------------

namespace detail {

enum class Tok {
  Ident,
  Bang,
  Amp,
  Bar,
  LParen,
  RParen,
  Lt,
  Gt,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Question,
  Star,
  Semi,
  Plus,
  Le,
  Arrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex_formula(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t pos = i;
    auto push = [&](Tok k, std::size_t len) {
      out.push_back({k, s.substr(pos, len), pos});
      i += len;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), pos});
      i = j;
      continue;
    }
    switch (c) {
      case '!': push(Tok::Bang, 1); break;
      case '&': push(Tok::Amp, 1); break;
      case '|': push(Tok::Bar, 1); break;
      case '(': push(Tok::LParen, 1); break;
      case ')': push(Tok::RParen, 1); break;
      case '<':
        if (i + 1 < s.size() && s[i + 1] == '=') push(Tok::Le, 2);
        else push(Tok::Lt, 1);
        break;
      case '>': push(Tok::Gt, 1); break;
      case '[': push(Tok::LBracket, 1); break;
      case ']': push(Tok::RBracket, 1); break;
      case '{': push(Tok::LBrace, 1); break;
      case '}': push(Tok::RBrace, 1); break;
      case '?': push(Tok::Question, 1); break;
      case '*': push(Tok::Star, 1); break;
      case ';': push(Tok::Semi, 1); break;
      case '+': push(Tok::Plus, 1); break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          push(Tok::Arrow, 2);
          break;
        }
        throw ParseError(pos, "unexpected character '-'");
      default: throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

inline bool formula_is_propositional(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom:
    case FormulaKind::NegAtom: return true;
    case FormulaKind::And:
    case FormulaKind::Or: return formula_is_propositional(f->lhs) && formula_is_propositional(f->rhs);
    default: return false;
  }
}

struct FormulaParser {
  std::vector<Token> toks;
  std::size_t at = 0;
  bool allow_cp;

  const Token& peek() const { return toks[at]; }
  Token next() { return toks[at++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++at;
      return true;
    }
    return false;
  }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(peek().pos, std::string("expected ") + what);
    return next();
  }

  FormulaPtr parse_formula() {
    FormulaPtr left = parse_or();
    if (peek().kind == Tok::Arrow) {
      Token arrow = next();
      if (!formula_is_propositional(left))
        throw ParseError(arrow.pos, "'->' requires a propositional antecedent");
      FormulaPtr right = parse_formula();
      return f_or(negate(left), right);
    }
    return left;
  }

  FormulaPtr parse_or() {
    FormulaPtr left = parse_and();
    while (accept(Tok::Bar)) left = f_or(left, parse_and());
    return left;
  }

  FormulaPtr parse_and() {
    FormulaPtr left = parse_unary();
    while (accept(Tok::Amp)) left = f_and(left, parse_unary());
    return left;
  }

  FormulaPtr parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        Token id = next();
        if (id.text == "tt") return f_true();
        if (id.text == "ff") return f_false();
        return f_atom(id.text);
      }
      case Tok::Bang: {
        next();
        Token id = expect(Tok::Ident, "proposition after '!'");
        if (id.text == "tt") return f_false();
        if (id.text == "ff") return f_true();
        return f_neg_atom(id.text);
      }
      case Tok::LParen: {
        next();
        FormulaPtr f = parse_formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Lt: {
        next();
        RegexPtr r = parse_regex();
        expect(Tok::Gt, "'>'");
        return parse_modality_tail(r, /*box=*/false);
      }
      case Tok::LBracket: {
        next();
        RegexPtr r = parse_regex();
        expect(Tok::RBracket, "']'");
        return parse_modality_tail(r, /*box=*/true);
      }
      default: throw ParseError(t.pos, "expected a formula");
    }
  }

  FormulaPtr parse_modality_tail(RegexPtr r, bool box) {
    if (accept(Tok::LBrace)) {
      if (accept(Tok::Le)) {
        Token var = expect(Tok::Ident, "variable name");
        expect(Tok::RBrace, "'}'");
        FormulaPtr body = parse_unary();
        return box ? f_box_le(r, var.text, body) : f_diamond_le(r, var.text, body);
      }
      Token kw = expect(Tok::Ident, "'<=' or 'cp'");
      if (kw.text != "cp") throw ParseError(kw.pos, "expected '<=' or 'cp' in modality bound");
      expect(Tok::RBrace, "'}'");
      if (!allow_cp)
        throw ParseError(kw.pos, "changepoint operators are not accepted here (pass --allow-cp)");
      FormulaPtr body = parse_unary();
      return box ? f_box_cp(r, body) : f_diamond_cp(r, body);
    }
    FormulaPtr body = parse_unary();
    return box ? f_box(r, body) : f_diamond(r, body);
  }

  // Regexes: '+' (union) < ';' (concat) < postfix '*'. Propositional atoms may
  // use '&', '|', '!' and parentheses; a parenthesized pure propositional
  // formula is a single consuming atom.
  RegexPtr parse_regex() {
    RegexPtr left = parse_regex_cat();
    while (accept(Tok::Plus)) left = r_union(left, parse_regex_cat());
    return left;
  }

  RegexPtr parse_regex_cat() {
    RegexPtr left = parse_regex_post();
    while (accept(Tok::Semi)) left = r_concat(left, parse_regex_post());
    return left;
  }

  RegexPtr parse_regex_post() {
    RegexPtr r = parse_regex_prim();
    while (accept(Tok::Star)) r = r_star(r);
    return r;
  }

  RegexPtr parse_regex_prim() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LBrace: {
        next();
        FormulaPtr theta = parse_formula();
        expect(Tok::RBrace, "'}'");
        expect(Tok::Question, "'?' after test");
        return r_test(theta);
      }
      case Tok::LParen: {
        next();
        RegexPtr r = parse_regex();
        expect(Tok::RParen, "')'");
        if (r->kind == RegexKind::Prop && (peek().kind == Tok::Amp || peek().kind == Tok::Bar))
          return r_prop(parse_prop_or(r->prop));
        return r;
      }
      case Tok::Ident:
      case Tok::Bang: return r_prop(parse_prop_or(std::nullopt));
      default: throw ParseError(t.pos, "expected a regular expression");
    }
  }

  PropPtr parse_prop_or(std::optional<PropPtr> init) {
    PropPtr left = parse_prop_and(std::move(init));
    while (accept(Tok::Bar)) left = prop_or(left, parse_prop_and(std::nullopt));
    return left;
  }

  PropPtr parse_prop_and(std::optional<PropPtr> init) {
    PropPtr left = init ? *init : parse_prop_unit();
    while (accept(Tok::Amp)) left = prop_and(left, parse_prop_unit());
    return left;
  }

  PropPtr parse_prop_unit() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        Token id = next();
        if (id.text == "tt") return prop_true();
        if (id.text == "ff") return prop_false();
        return prop_atom(id.text);
      }
      case Tok::Bang: {
        next();
        return prop_not(parse_prop_unit());
      }
      case Tok::LParen: {
        next();
        PropPtr p = parse_prop_or(std::nullopt);
        expect(Tok::RParen, "')'");
        return p;
      }
      default: throw ParseError(t.pos, "expected a propositional formula");
    }
  }
};

}  // namespace detail

inline FormulaPtr parse_formula(const std::string& text, bool allow_cp = false) {
  detail::FormulaParser p;
  p.toks = detail::lex_formula(text);
  p.allow_cp = allow_cp;
  FormulaPtr f = p.parse_formula();
  if (p.peek().kind != detail::Tok::End) throw ParseError(p.peek().pos, "trailing input after formula");
  return f;
}

inline RegexPtr parse_regex(const std::string& text, bool allow_cp = true) {
  detail::FormulaParser p;
  p.toks = detail::lex_formula(text);
  p.allow_cp = allow_cp;
  RegexPtr r = p.parse_regex();
  if (p.peek().kind != detail::Tok::End) throw ParseError(p.peek().pos, "trailing input after regex");
  return r;
}

// ---- printer ---------------------------------------------------------------

std::string print_formula(const FormulaPtr& phi);

inline std::string print_regex(const RegexPtr& r) {
  switch (r->kind) {
    case RegexKind::Prop: return print_prop(r->prop);
    case RegexKind::Test: return "{" + print_formula(r->test) + "}?";
    case RegexKind::Union: return "(" + print_regex(r->lhs) + " + " + print_regex(r->rhs) + ")";
    case RegexKind::Concat: return "(" + print_regex(r->lhs) + " ; " + print_regex(r->rhs) + ")";
    case RegexKind::Star: {
      const RegexPtr& in = r->lhs;
      std::string body = print_regex(in);
      bool atomic = in->kind == RegexKind::Test || in->kind == RegexKind::Star ||
                    in->kind == RegexKind::Union || in->kind == RegexKind::Concat ||
                    (in->kind == RegexKind::Prop &&
                     (in->prop->kind == PropKind::True || in->prop->kind == PropKind::False ||
                      in->prop->kind == PropKind::Atom || in->prop->kind == PropKind::And ||
                      in->prop->kind == PropKind::Or));
      // Union/Concat and compound props already carry parentheses.
      if (!atomic) body = "(" + body + ")";
      return body + "*";
    }
  }
  return {};
}

inline std::string print_formula(const FormulaPtr& phi) {
  switch (phi->kind) {
    case FormulaKind::True: return "tt";
    case FormulaKind::False: return "ff";
    case FormulaKind::Atom: return phi->atom;
    case FormulaKind::NegAtom: return "!" + phi->atom;
    case FormulaKind::And: return "(" + print_formula(phi->lhs) + " & " + print_formula(phi->rhs) + ")";
    case FormulaKind::Or: return "(" + print_formula(phi->lhs) + " | " + print_formula(phi->rhs) + ")";
    case FormulaKind::Diamond: return "< " + print_regex(phi->regex) + " > " + print_formula(phi->lhs);
    case FormulaKind::Box: return "[ " + print_regex(phi->regex) + " ] " + print_formula(phi->lhs);
    case FormulaKind::DiamondLe:
      return "< " + print_regex(phi->regex) + " >{<= " + phi->var + "} " + print_formula(phi->lhs);
    case FormulaKind::BoxLe:
      return "[ " + print_regex(phi->regex) + " ]{<= " + phi->var + "} " + print_formula(phi->lhs);
    case FormulaKind::DiamondCp: return "< " + print_regex(phi->regex) + " >{cp} " + print_formula(phi->lhs);
    case FormulaKind::BoxCp: return "[ " + print_regex(phi->regex) + " ]{cp} " + print_formula(phi->lhs);
  }
  return {};
}

// ---- transition systems ----------------------------------------------------

/// Finite transition system with a left-total edge relation.
struct SystemDescription {
  std::vector<std::string> props;
  std::vector<std::string> state_names;
  std::map<std::string, int> state_index;
  int initial = -1;
  std::vector<Letter> labels;             // per state
  std::vector<std::vector<int>> edges;    // per state, successor indices

  int size() const { return static_cast<int>(state_names.size()); }
};

inline SystemDescription parse_system(const std::string& text) {
  SystemDescription sys;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::pair<std::string, std::string>> edge_specs;
  std::string init_name;
  bool have_init = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "props") {
      std::string p;
      while (ls >> p) sys.props.push_back(p);
    } else if (kw == "state") {
      std::string name;
      if (!(ls >> name)) throw ParseError(lineno, "state needs a name");
      if (sys.state_index.count(name)) throw ParseError(lineno, "duplicate state " + name);
      std::string rest;
      std::getline(ls, rest);
      auto lb = rest.find('{');
      auto rb = rest.find('}');
      if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw ParseError(lineno, "state label must be written as { p q }");
      Letter label;
      std::istringstream lbl(rest.substr(lb + 1, rb - lb - 1));
      std::string p;
      while (lbl >> p) {
        bool known = false;
        for (const auto& q : sys.props) known = known || q == p;
        if (!known) throw ParseError(lineno, "label proposition " + p + " outside declared props");
        label.insert(p);
      }
      sys.state_index[name] = sys.size();
      sys.state_names.push_back(name);
      sys.labels.push_back(std::move(label));
      sys.edges.emplace_back();
    } else if (kw == "init") {
      if (!(ls >> init_name)) throw ParseError(lineno, "init needs a state name");
      if (have_init) throw ParseError(lineno, "duplicate init");
      have_init = true;
    } else if (kw == "edge") {
      std::string a, b;
      if (!(ls >> a >> b)) throw ParseError(lineno, "edge needs two state names");
      edge_specs.emplace_back(a, b);
    } else {
      throw ParseError(lineno, "unknown directive " + kw);
    }
  }
  if (!have_init) throw ParseError(lineno, "missing init");
  auto it = sys.state_index.find(init_name);
  if (it == sys.state_index.end()) throw ParseError(lineno, "unknown initial state " + init_name);
  sys.initial = it->second;
  for (const auto& [a, b] : edge_specs) {
    auto ia = sys.state_index.find(a);
    auto ib = sys.state_index.find(b);
    if (ia == sys.state_index.end()) throw ParseError(lineno, "unknown state in edge: " + a);
    if (ib == sys.state_index.end()) throw ParseError(lineno, "unknown state in edge: " + b);
    sys.edges[ia->second].push_back(ib->second);
  }
  for (int s = 0; s < sys.size(); ++s)
    if (sys.edges[s].empty())
      throw ParseError(lineno, "edge relation not left-total: state " + sys.state_names[s] +
                                   " has no outgoing edge");
  return sys;
}

// ---- lassos and valuations -------------------------------------------------

inline LassoWord parse_lasso(const std::string& text) {
  LassoWord w;
  bool in_cycle = false;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '|') {
      if (in_cycle) throw ParseError(i, "second '|' in lasso");
      in_cycle = true;
      ++i;
      continue;
    }
    if (c != '{') throw ParseError(i, "expected '{' in lasso");
    auto close = text.find('}', i);
    if (close == std::string::npos) throw ParseError(i, "unterminated letter");
    Letter letter;
    std::istringstream ls(text.substr(i + 1, close - i - 1));
    std::string p;
    while (ls >> p) letter.insert(p);
    (in_cycle ? w.cycle : w.prefix).push_back(std::move(letter));
    i = close + 1;
  }
  if (!in_cycle) throw ParseError(text.size(), "lasso needs a '|' before the cycle");
  if (w.cycle.empty()) throw ParseError(text.size(), "lasso cycle must be nonempty");
  return w;
}

inline std::string print_letter(const Letter& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : a) {
    if (!first) out += " ";
    out += p;
    first = false;
  }
  return out + "}";
}

inline std::string print_lasso(const LassoWord& w) {
  std::string out;
  for (const auto& a : w.prefix) out += print_letter(a);
  out += "|";
  for (const auto& a : w.cycle) out += print_letter(a);
  return out;
}

inline Valuation parse_valuation(const std::string& text) {
  Valuation alpha;
  std::size_t i = 0;
  while (i < text.size()) {
    auto comma = text.find(',', i);
    std::string item = text.substr(i, comma == std::string::npos ? std::string::npos : comma - i);
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError(i, "valuation entries look like x=3");
    std::string var = item.substr(0, eq);
    std::string num = item.substr(eq + 1);
    while (!var.empty() && std::isspace(static_cast<unsigned char>(var.back()))) var.pop_back();
    std::size_t start = 0;
    while (start < var.size() && std::isspace(static_cast<unsigned char>(var[start]))) ++start;
    var = var.substr(start);
    try {
      long value = std::stol(num);
      if (value < 0) throw ParseError(i, "valuation values must be >= 0");
      alpha.set(var, value);
    } catch (const std::invalid_argument&) {
      throw ParseError(i, "valuation entries look like x=3");
    }
    if (comma == std::string::npos) break;
    i = comma + 1;
  }
  return alpha;
}

inline std::string print_valuation(const Valuation& alpha) {
  std::string out;
  bool first = true;
  for (const auto& [v, n] : alpha.values) {
    if (!first) out += ",";
    out += v + "=" + std::to_string(n);
    first = false;
  }
  return out;
}

}  // namespace pldl
