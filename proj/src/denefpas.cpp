#include "nilorb/denefpas.hpp"

#include <cctype>
#include <functional>
#include <optional>

#include "nilorb/error.hpp"

namespace nilorb::dp {

const char* sort_name(Sort s) noexcept {
  switch (s) {
    case Sort::VF: return "VF";
    case Sort::RF: return "RF";
    case Sort::Z: return "Z";
  }
  return "?";
}

const char* truth_name(Truth t) noexcept {
  switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Unbounded: return "unbounded";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Builders and structural helpers

namespace {

TermPtr make_term(Term::Kind kind, Sort sort, std::vector<TermPtr> args, std::string name = {}, long value = 0) {
  return std::make_shared<const Term>(Term{kind, sort, std::move(name), value, std::move(args)});
}

FormulaPtr make_formula(Formula::Kind kind, TermPtr lhs = nullptr, TermPtr rhs = nullptr,
                        std::vector<FormulaPtr> args = {}, long modulus = 0, std::string v = {},
                        Sort s = Sort::VF) {
  return std::make_shared<const Formula>(Formula{kind, std::move(lhs), std::move(rhs), modulus, std::move(args), std::move(v), s});
}

}  // namespace

TermPtr var(const std::string& name, Sort s) { return make_term(Term::Kind::Var, s, {}, name); }
TermPtr literal(long value, Sort s) { return make_term(Term::Kind::Literal, s, {}, {}, value); }
TermPtr constant(int index) { return make_term(Term::Kind::Constant, Sort::VF, {}, {}, index); }
TermPtr add(TermPtr a, TermPtr b) { const Sort s = a->sort; return make_term(Term::Kind::Add, s, {std::move(a), std::move(b)}); }
TermPtr sub(TermPtr a, TermPtr b) { const Sort s = a->sort; return make_term(Term::Kind::Sub, s, {std::move(a), std::move(b)}); }
TermPtr mul(TermPtr a, TermPtr b) { const Sort s = a->sort; return make_term(Term::Kind::Mul, s, {std::move(a), std::move(b)}); }
TermPtr neg(TermPtr a) { const Sort s = a->sort; return make_term(Term::Kind::Neg, s, {std::move(a)}); }
TermPtr power(TermPtr a, long e) { const Sort s = a->sort; return make_term(Term::Kind::Pow, s, {std::move(a)}, {}, e); }
TermPtr ord_of(TermPtr a) { return make_term(Term::Kind::Ord, Sort::Z, {std::move(a)}); }
TermPtr ac_of(TermPtr a) { return make_term(Term::Kind::Ac, Sort::RF, {std::move(a)}); }

FormulaPtr truth(bool value) { return make_formula(value ? Formula::Kind::True : Formula::Kind::False); }
FormulaPtr eq(TermPtr a, TermPtr b) { return make_formula(Formula::Kind::Eq, std::move(a), std::move(b)); }
FormulaPtr le(TermPtr a, TermPtr b) { return make_formula(Formula::Kind::Le, std::move(a), std::move(b)); }
FormulaPtr lt(TermPtr a, TermPtr b) { return make_formula(Formula::Kind::Lt, std::move(a), std::move(b)); }
FormulaPtr cong(TermPtr a, TermPtr b, long d) { return make_formula(Formula::Kind::Cong, std::move(a), std::move(b), {}, d); }
FormulaPtr negate(FormulaPtr f) { return make_formula(Formula::Kind::Not, nullptr, nullptr, {std::move(f)}); }
FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return make_formula(Formula::Kind::And, nullptr, nullptr, {std::move(a), std::move(b)}); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return make_formula(Formula::Kind::Or, nullptr, nullptr, {std::move(a), std::move(b)}); }

FormulaPtr conj(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) return truth(true);
  FormulaPtr out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = conj(out, parts[i]);
  return out;
}

FormulaPtr disj(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) return truth(false);
  FormulaPtr out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = disj(out, parts[i]);
  return out;
}

FormulaPtr exists(const std::string& v, Sort s, FormulaPtr body) {
  return make_formula(Formula::Kind::Exists, nullptr, nullptr, {std::move(body)}, 0, v, s);
}
FormulaPtr forall(const std::string& v, Sort s, FormulaPtr body) {
  return make_formula(Formula::Kind::Forall, nullptr, nullptr, {std::move(body)}, 0, v, s);
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind || a->sort != b->sort || a->name != b->name || a->value != b->value ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind != b->kind || a->modulus != b->modulus || a->var != b->var || a->args.size() != b->args.size()) return false;
  if (a->kind == Formula::Kind::Exists || a->kind == Formula::Kind::Forall)
    if (a->var_sort != b->var_sort) return false;
  if ((a->lhs == nullptr) != (b->lhs == nullptr)) return false;
  if (a->lhs && (!equal(a->lhs, b->lhs) || !equal(a->rhs, b->rhs))) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

namespace {

void term_names(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == Term::Kind::Var) out.insert(t->name);
  for (const auto& a : t->args) term_names(a, out);
}

bool is_quantifier(const FormulaPtr& f) { return f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall; }

}  // namespace

std::set<std::string> free_names(const FormulaPtr& f) {
  std::set<std::string> out;
  if (f->lhs) {
    term_names(f->lhs, out);
    term_names(f->rhs, out);
  }
  for (const auto& a : f->args) {
    auto inner = free_names(a);
    if (is_quantifier(f)) inner.erase(f->var);
    out.insert(inner.begin(), inner.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int term_prec(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Add:
    case Term::Kind::Sub: return 1;
    case Term::Kind::Mul: return 2;
    case Term::Kind::Neg: return 3;
    case Term::Kind::Literal: return t->value < 0 ? 3 : 5;
    case Term::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap_term(const TermPtr& t, int min_prec) {
  const std::string s = to_string(t);
  return term_prec(t) < min_prec ? "(" + s + ")" : s;
}

int formula_prec(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Or: return 1;
    case Formula::Kind::And: return 2;
    case Formula::Kind::Not: return f->args[0]->kind == Formula::Kind::Eq ? 4 : 3;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return 0;
    default: return 4;
  }
}

std::string wrap_formula(const FormulaPtr& f, int min_prec) {
  const std::string s = to_string(f);
  return formula_prec(f) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name;
    case Term::Kind::Literal: return std::to_string(t->value);
    case Term::Kind::Constant: return "d" + std::to_string(t->value);
    case Term::Kind::Add: return wrap_term(t->args[0], 1) + " + " + wrap_term(t->args[1], 2);
    case Term::Kind::Sub: return wrap_term(t->args[0], 1) + " - " + wrap_term(t->args[1], 2);
    case Term::Kind::Mul: return wrap_term(t->args[0], 2) + " * " + wrap_term(t->args[1], 3);
    case Term::Kind::Neg: {
      // A bare "-5" reads back as a negative literal.
      const auto& a = t->args[0];
      if (a->kind == Term::Kind::Literal) return "-(" + to_string(a) + ")";
      return "-" + wrap_term(a, 3);
    }
    case Term::Kind::Pow: return wrap_term(t->args[0], 5) + "^" + std::to_string(t->value);
    case Term::Kind::Ord: return "ord(" + to_string(t->args[0]) + ")";
    case Term::Kind::Ac: return "ac(" + to_string(t->args[0]) + ")";
  }
  return "?";
}

std::string to_string(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Eq: return to_string(f->lhs) + " = " + to_string(f->rhs);
    case Formula::Kind::Le: return to_string(f->lhs) + " <= " + to_string(f->rhs);
    case Formula::Kind::Lt: return to_string(f->lhs) + " < " + to_string(f->rhs);
    case Formula::Kind::Cong: return to_string(f->lhs) + " ~" + std::to_string(f->modulus) + " " + to_string(f->rhs);
    case Formula::Kind::Not: {
      const auto& a = f->args[0];
      if (a->kind == Formula::Kind::Eq) return to_string(a->lhs) + " != " + to_string(a->rhs);
      return "not " + wrap_formula(a, 3);
    }
    case Formula::Kind::And: return wrap_formula(f->args[0], 2) + " and " + wrap_formula(f->args[1], 3);
    case Formula::Kind::Or: return wrap_formula(f->args[0], 1) + " or " + wrap_formula(f->args[1], 2);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return std::string(f->kind == Formula::Kind::Exists ? "exists " : "forall ") + f->var + ":" +
             sort_name(f->var_sort) + ". " + to_string(f->args[0]);
  }
  return "?";
}

std::string DPFormula::str() const { return to_string(root_); }

bool DPFormula::has_vf_quantifier() const {
  std::function<bool(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
    if (is_quantifier(f) && f->var_sort == Sort::VF) return true;
    for (const auto& a : f->args)
      if (walk(a)) return true;
    return false;
  };
  return walk(root_);
}

int DPFormula::max_constant() const {
  int best = 0;
  std::function<void(const TermPtr&)> term = [&](const TermPtr& t) {
    if (t->kind == Term::Kind::Constant) best = std::max(best, static_cast<int>(t->value));
    for (const auto& a : t->args) term(a);
  };
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
    if (f->lhs) {
      term(f->lhs);
      term(f->rhs);
    }
    for (const auto& a : f->args) walk(a);
  };
  walk(root_);
  return best;
}

// ---------------------------------------------------------------------------
// Sort checking

namespace {

class SortChecker {
 public:
  explicit SortChecker(const std::map<std::string, Sort>& declared) {
    for (const auto& [name, s] : declared) free_[name] = s;
  }

  DPFormula run(const FormulaPtr& root) {
    // Inference passes until the free sorts settle, then default the rest to VF.
    for (;;) {
      const auto before = free_;
      final_ = false;
      formula(root);
      if (free_ == before) break;
    }
    for (auto& [name, s] : free_)
      if (!s) s = Sort::VF;
    final_ = true;
    FormulaPtr typed = formula(root);
    std::map<std::string, Sort> free;
    for (const auto& name : free_names(typed)) free[name] = *free_.at(name);
    return DPFormula(std::move(typed), std::move(free));
  }

 private:
  std::map<std::string, std::optional<Sort>> free_;
  std::vector<std::pair<std::string, Sort>> bound_;
  bool final_ = false;

  [[noreturn]] static void fail(const TermPtr& t, const std::string& why) {
    throw Error(Errc::SortError, "'" + to_string(t) + "' " + why);
  }

  std::optional<Sort> lookup(const std::string& name) {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->first == name) return it->second;
    auto it = free_.find(name);
    if (it == free_.end()) {
      free_[name] = std::nullopt;
      return std::nullopt;
    }
    return it->second;
  }

  bool is_bound(const std::string& name) const {
    for (const auto& b : bound_)
      if (b.first == name) return true;
    return false;
  }

  std::optional<Sort> infer(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::Var: return lookup(t->name);
      case Term::Kind::Literal: return std::nullopt;
      case Term::Kind::Constant: return Sort::VF;
      case Term::Kind::Ord: return Sort::Z;
      case Term::Kind::Ac: return Sort::RF;
      default:
        for (const auto& a : t->args)
          if (auto s = infer(a)) return s;
        return std::nullopt;
    }
  }

  TermPtr term(const TermPtr& t, Sort expected) {
    switch (t->kind) {
      case Term::Kind::Var: {
        if (is_bound(t->name)) {
          if (*lookup(t->name) != expected)
            fail(t, std::string("is bound in sort ") + sort_name(*lookup(t->name)) + " but used in sort " + sort_name(expected));
        } else {
          auto& slot = free_[t->name];
          if (slot && *slot != expected)
            fail(t, std::string("is used in both sorts ") + sort_name(*slot) + " and " + sort_name(expected));
          slot = expected;
        }
        return var(t->name, expected);
      }
      case Term::Kind::Literal: return literal(t->value, expected);
      case Term::Kind::Constant:
        if (expected != Sort::VF) fail(t, std::string("is a valued-field constant used in sort ") + sort_name(expected));
        if (t->value < 1) fail(t, "constant indices start at 1");
        return constant(static_cast<int>(t->value));
      case Term::Kind::Add: return add(term(t->args[0], expected), term(t->args[1], expected));
      case Term::Kind::Sub: return sub(term(t->args[0], expected), term(t->args[1], expected));
      case Term::Kind::Neg: return neg(term(t->args[0], expected));
      case Term::Kind::Mul:
        if (expected == Sort::Z) fail(t, "multiplies in the Z sort, which has no multiplication");
        return mul(term(t->args[0], expected), term(t->args[1], expected));
      case Term::Kind::Pow:
        if (expected == Sort::Z) fail(t, "takes a power in the Z sort, which has no multiplication");
        if (t->value < 0) fail(t, "has a negative exponent");
        return power(term(t->args[0], expected), t->value);
      case Term::Kind::Ord:
        if (expected != Sort::Z) fail(t, std::string("has sort Z but is used in sort ") + sort_name(expected));
        return ord_of(term(t->args[0], Sort::VF));
      case Term::Kind::Ac:
        if (expected != Sort::RF) fail(t, std::string("has sort RF but is used in sort ") + sort_name(expected));
        return ac_of(term(t->args[0], Sort::VF));
    }
    fail(t, "is malformed");
  }

  FormulaPtr formula(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::True:
      case Formula::Kind::False: return f;
      case Formula::Kind::Eq: {
        auto s = infer(f->lhs);
        if (!s) s = infer(f->rhs);
        if (!s) {
          if (!final_) return f;  // decided in a later pass
          s = Sort::VF;
        }
        return eq(term(f->lhs, *s), term(f->rhs, *s));
      }
      case Formula::Kind::Le: return le(term(f->lhs, Sort::Z), term(f->rhs, Sort::Z));
      case Formula::Kind::Lt: return lt(term(f->lhs, Sort::Z), term(f->rhs, Sort::Z));
      case Formula::Kind::Cong:
        if (f->modulus < 2) throw Error(Errc::InvalidDivisor, "congruence modulus " + std::to_string(f->modulus) + " is below 2");
        return cong(term(f->lhs, Sort::Z), term(f->rhs, Sort::Z), f->modulus);
      case Formula::Kind::Not: return negate(formula(f->args[0]));
      case Formula::Kind::And: return conj(formula(f->args[0]), formula(f->args[1]));
      case Formula::Kind::Or: return disj(formula(f->args[0]), formula(f->args[1]));
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        bound_.emplace_back(f->var, f->var_sort);
        FormulaPtr body = formula(f->args[0]);
        bound_.pop_back();
        return f->kind == Formula::Kind::Exists ? exists(f->var, f->var_sort, body) : forall(f->var, f->var_sort, body);
      }
    }
    return f;
  }
};

}  // namespace

DPFormula check(const FormulaPtr& root, const std::map<std::string, Sort>& declared) {
  return SortChecker(declared).run(root);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind;
  std::string text;
  long value = 0;
  std::size_t pos = 0;
};

struct ParseFail {
  std::size_t pos;
  std::string message;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Token::Kind::Ident, s.substr(start, i - start), 0, start});
      continue;
    }
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      const std::string digits = s.substr(start, i - start);
      if (digits.size() > 15) throw ParseFail{start, "integer literal too large"};
      out.push_back({Token::Kind::Int, digits, std::stol(digits), start});
      continue;
    }
    if (c == '~') {
      ++i;
      const std::size_t d = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == d) throw ParseFail{start, "'~' must be followed by a modulus, as in ~3"};
      if (i - d > 15) throw ParseFail{start, "congruence modulus too large"};
      out.push_back({Token::Kind::Sym, "~", std::stol(s.substr(d, i - d)), start});
      continue;
    }
    static const char* two[] = {"!=", "<=", ">=", "&&", "||"};
    bool matched = false;
    for (const char* t : two)
      if (s.compare(i, 2, t) == 0) {
        out.push_back({Token::Kind::Sym, t, 0, start});
        i += 2;
        matched = true;
        break;
      }
    if (matched) continue;
    if (std::string("().,:+-*^=<>&|!").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Token::Kind::Sym, std::string(1, static_cast<char>(c)), 0, start});
      ++i;
      continue;
    }
    throw ParseFail{start, std::string("unexpected character '") + static_cast<char>(c) + "'"};
  }
  out.push_back({Token::Kind::End, "", 0, s.size()});
  return out;
}

bool is_constant_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'd') return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

bool is_keyword(const std::string& name) {
  static const std::set<std::string> words{"exists", "forall", "and", "or", "not", "true", "false", "ord", "ac"};
  return words.count(name) > 0;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  FormulaPtr parse_all() {
    FormulaPtr f = formula();
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  bool is_sym(const char* s) const { return peek().kind == Token::Kind::Sym && peek().text == s; }
  bool is_word(const char* s) const { return peek().kind == Token::Kind::Ident && peek().text == s; }
  [[noreturn]] void fail(const std::string& message) const { throw ParseFail{peek().pos, message}; }

  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(std::string("expected '") + s + "'");
    ++at_;
  }

  FormulaPtr formula() {
    if (is_word("exists") || is_word("forall")) return quantified();
    return disjunction();
  }

  FormulaPtr quantified() {
    const bool is_exists = peek().text == "exists";
    ++at_;
    std::vector<std::pair<std::string, Sort>> vars;
    for (;;) {
      if (peek().kind != Token::Kind::Ident || is_keyword(peek().text) || is_constant_name(peek().text))
        fail("expected a variable name");
      std::string name = peek().text;
      ++at_;
      expect_sym(":");
      if (peek().kind != Token::Kind::Ident) fail("expected a sort (VF, RF or Z)");
      const std::string s = peek().text;
      Sort sort;
      if (s == "VF") sort = Sort::VF;
      else if (s == "RF") sort = Sort::RF;
      else if (s == "Z" || s == "ZZ") sort = Sort::Z;
      else fail("unknown sort '" + s + "'");
      ++at_;
      vars.emplace_back(std::move(name), sort);
      if (is_sym(",")) {
        ++at_;
        continue;
      }
      break;
    }
    expect_sym(".");
    FormulaPtr body = formula();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      body = is_exists ? exists(it->first, it->second, body) : forall(it->first, it->second, body);
    return body;
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (is_word("or") || is_sym("|") || is_sym("||")) {
      ++at_;
      f = disj(f, conjunction());
    }
    return f;
  }

  FormulaPtr conjunction() {
    FormulaPtr f = unary();
    while (is_word("and") || is_sym("&") || is_sym("&&")) {
      ++at_;
      f = conj(f, unary());
    }
    return f;
  }

  FormulaPtr unary() {
    if (is_word("not") || is_sym("!")) {
      ++at_;
      return negate(unary());
    }
    if (is_word("exists") || is_word("forall")) return quantified();
    if (is_word("true")) {
      ++at_;
      return truth(true);
    }
    if (is_word("false")) {
      ++at_;
      return truth(false);
    }
    if (is_sym("(")) {
      // Either a parenthesized formula or an atom whose left term starts with '('.
      const std::size_t save = at_;
      try {
        return atom();
      } catch (const ParseFail&) {
        at_ = save;
      }
      ++at_;
      FormulaPtr f = formula();
      expect_sym(")");
      return f;
    }
    return atom();
  }

  FormulaPtr atom() {
    TermPtr lhs = term();
    if (is_sym("=")) {
      ++at_;
      return eq(lhs, term());
    }
    if (is_sym("!=")) {
      ++at_;
      return negate(eq(lhs, term()));
    }
    if (is_sym("<=")) {
      ++at_;
      return le(lhs, term());
    }
    if (is_sym("<")) {
      ++at_;
      return lt(lhs, term());
    }
    if (is_sym(">=")) {
      ++at_;
      return le(term(), lhs);
    }
    if (is_sym(">")) {
      ++at_;
      return lt(term(), lhs);
    }
    if (is_sym("~")) {
      const long d = peek().value;
      ++at_;
      return cong(lhs, term(), d);
    }
    fail("expected a relation (=, !=, <=, <, >=, >, ~d)");
  }

  // Sorts are placeholders here; the checker assigns them.
  TermPtr term() {
    TermPtr t = product();
    while (is_sym("+") || is_sym("-")) {
      const bool plus = peek().text == "+";
      ++at_;
      TermPtr r = product();
      t = plus ? add(t, r) : sub(t, r);
    }
    return t;
  }

  TermPtr product() {
    TermPtr t = factor();
    while (is_sym("*")) {
      ++at_;
      t = mul(t, factor());
    }
    return t;
  }

  TermPtr factor() {
    if (is_sym("-")) {
      ++at_;
      const bool powered = toks_[at_ + 1].kind == Token::Kind::Sym && toks_[at_ + 1].text == "^";
      if (peek().kind == Token::Kind::Int && !powered) {
        const long v = peek().value;
        ++at_;
        return literal(-v, Sort::VF);
      }
      return neg(factor());
    }
    TermPtr t = primary();
    if (is_sym("^")) {
      ++at_;
      if (peek().kind != Token::Kind::Int) fail("expected a nonnegative integer exponent");
      const long e = peek().value;
      ++at_;
      t = power(t, e);
    }
    return t;
  }

  TermPtr primary() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::Int) {
      ++at_;
      return literal(tok.value, Sort::VF);
    }
    if (tok.kind == Token::Kind::Sym && tok.text == "(") {
      ++at_;
      TermPtr t = term();
      expect_sym(")");
      return t;
    }
    if (tok.kind != Token::Kind::Ident) fail("expected a term");
    const std::string name = tok.text;
    if (name == "ord" || name == "ac") {
      ++at_;
      expect_sym("(");
      TermPtr inner = term();
      expect_sym(")");
      return name == "ord" ? ord_of(inner) : ac_of(inner);
    }
    if (is_keyword(name)) fail("unexpected keyword '" + name + "'");
    ++at_;
    if (is_constant_name(name)) return constant(std::stoi(name.substr(1)));
    return var(name, Sort::VF);
  }
};

}  // namespace

DPFormula parse(const std::string& text, const std::map<std::string, Sort>& declared) {
  FormulaPtr raw;
  try {
    raw = Parser(lex(text)).parse_all();
  } catch (const ParseFail& e) {
    throw Error(Errc::SyntaxError, "at position " + std::to_string(e.pos) + ": " + e.message);
  }
  return check(raw, declared);
}

// ---------------------------------------------------------------------------
// Transformations

FormulaPtr to_nnf(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::And: return conj(to_nnf(f->args[0]), to_nnf(f->args[1]));
    case K::Or: return disj(to_nnf(f->args[0]), to_nnf(f->args[1]));
    case K::Exists: return exists(f->var, f->var_sort, to_nnf(f->args[0]));
    case K::Forall: return forall(f->var, f->var_sort, to_nnf(f->args[0]));
    case K::Not: {
      const FormulaPtr& g = f->args[0];
      switch (g->kind) {
        case K::True: return truth(false);
        case K::False: return truth(true);
        case K::Not: return to_nnf(g->args[0]);
        case K::And: return disj(to_nnf(negate(g->args[0])), to_nnf(negate(g->args[1])));
        case K::Or: return conj(to_nnf(negate(g->args[0])), to_nnf(negate(g->args[1])));
        case K::Exists: return forall(g->var, g->var_sort, to_nnf(negate(g->args[0])));
        case K::Forall: return exists(g->var, g->var_sort, to_nnf(negate(g->args[0])));
        default: return f;
      }
    }
    default: return f;
  }
}

namespace {

void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == Formula::Kind::And) {
    flatten_and(f->args[0], out);
    flatten_and(f->args[1], out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

FormulaPtr miniscope(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Not: return negate(miniscope(f->args[0]));
    case K::And: return conj(miniscope(f->args[0]), miniscope(f->args[1]));
    case K::Or: return disj(miniscope(f->args[0]), miniscope(f->args[1]));
    case K::Forall: return forall(f->var, f->var_sort, miniscope(f->args[0]));
    case K::Exists: break;
    default: return f;
  }
  std::vector<std::pair<std::string, Sort>> block;
  FormulaPtr matrix = f;
  std::set<std::string> seen;
  while (matrix->kind == K::Exists && !seen.count(matrix->var)) {
    seen.insert(matrix->var);
    block.emplace_back(matrix->var, matrix->var_sort);
    matrix = matrix->args[0];
  }
  std::vector<FormulaPtr> parts;
  flatten_and(miniscope(matrix), parts);
  // Level of a part: the innermost block variable it mentions (0 for none).
  std::vector<std::vector<FormulaPtr>> levels(block.size() + 1);
  for (const auto& part : parts) {
    const auto names = free_names(part);
    std::size_t level = 0;
    for (std::size_t i = 0; i < block.size(); ++i)
      if (names.count(block[i].first)) level = i + 1;
    levels[level].push_back(part);
  }
  FormulaPtr inner;
  for (std::size_t i = block.size(); i >= 1; --i) {
    std::vector<FormulaPtr> body = levels[i];
    if (inner) body.push_back(inner);
    // Domains are nonempty, so an existential over an empty body is dropped.
    inner = body.empty() ? nullptr : exists(block[i - 1].first, block[i - 1].second, conj(body));
  }
  std::vector<FormulaPtr> outer = levels[0];
  if (inner) outer.push_back(inner);
  return conj(outer);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

constexpr long kZWindowExtension = 8;

Truth kleene_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::Unbounded || b == Truth::Unbounded) return Truth::Unbounded;
  return Truth::True;
}

Truth kleene_or(Truth a, Truth b) {
  if (a == Truth::True || b == Truth::True) return Truth::True;
  if (a == Truth::Unbounded || b == Truth::Unbounded) return Truth::Unbounded;
  return Truth::False;
}

Truth kleene_not(Truth a) {
  if (a == Truth::Unbounded) return a;
  return a == Truth::True ? Truth::False : Truth::True;
}

struct Undecided {};  // precision ran out inside an atom

// Z-sort value: nullopt is the +infinity that ord(0) produces.
using ZValue = std::optional<long>;

class Evaluator {
 public:
  Evaluator(const DPStructure& s, bool bounded, EvalResult& meta) : s_(s), bounded_(bounded), meta_(meta) {}

  void bind(const std::string& name, Value v) { scope_.emplace_back(name, std::move(v)); }

  Truth eval(const FormulaPtr& f) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::True: return Truth::True;
      case K::False: return Truth::False;
      case K::Eq:
      case K::Le:
      case K::Lt:
      case K::Cong:
        try {
          return atom(f) ? Truth::True : Truth::False;
        } catch (const Undecided&) {
          meta_.flags.insert("precision");
          return Truth::Unbounded;
        }
      case K::Not: return kleene_not(eval(f->args[0]));
      case K::And: {
        const Truth a = eval(f->args[0]);
        if (a == Truth::False) return a;
        return kleene_and(a, eval(f->args[1]));
      }
      case K::Or: {
        const Truth a = eval(f->args[0]);
        if (a == Truth::True) return a;
        return kleene_or(a, eval(f->args[1]));
      }
      case K::Exists:
      case K::Forall: return quantifier(f);
    }
    return Truth::Unbounded;
  }

 private:
  const DPStructure& s_;
  bool bounded_;
  EvalResult& meta_;
  std::vector<std::pair<std::string, Value>> scope_;
  std::vector<PadicNumber> vf_domain_;

  const Value& lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return it->second;
    throw Error(Errc::UnassignedVariable, "variable '" + name + "' has no value");
  }

  PadicNumber vf(const TermPtr& t) {
    const Context& ctx = s_.ctx;
    try {
      switch (t->kind) {
        case Term::Kind::Var: return std::get<PadicNumber>(lookup(t->name));
        case Term::Kind::Literal: return PadicNumber::from_integer(ctx, t->value);
        case Term::Kind::Constant:
          if (t->value > static_cast<long>(s_.constants.size()))
            throw Error(Errc::InvalidArgument, "constant d" + std::to_string(t->value) + " is not interpreted (m = " +
                                                   std::to_string(s_.m) + ")");
          return s_.constants[t->value - 1];
        case Term::Kind::Add: return vf(t->args[0]) + vf(t->args[1]);
        case Term::Kind::Sub: return vf(t->args[0]) - vf(t->args[1]);
        case Term::Kind::Neg: return -vf(t->args[0]);
        case Term::Kind::Mul: return vf(t->args[0]) * vf(t->args[1]);
        case Term::Kind::Pow: return vf(t->args[0]).pow(t->value);
        default: break;
      }
    } catch (const Error& e) {
      if (e.code() == Errc::PrecisionLoss) throw Undecided{};
      throw;
    }
    throw Error(Errc::SortError, "'" + to_string(t) + "' is not a valued-field term");
  }

  std::uint32_t rf(const TermPtr& t) {
    const FieldContext& k = *s_.ctx;
    switch (t->kind) {
      case Term::Kind::Var: return std::get<ResidueElement>(lookup(t->name)).code;
      case Term::Kind::Literal: return k.from_integer(t->value);
      case Term::Kind::Add: return k.add(rf(t->args[0]), rf(t->args[1]));
      case Term::Kind::Sub: return k.sub(rf(t->args[0]), rf(t->args[1]));
      case Term::Kind::Neg: return k.neg(rf(t->args[0]));
      case Term::Kind::Mul: return k.mul(rf(t->args[0]), rf(t->args[1]));
      case Term::Kind::Pow: return t->value == 0 ? 1 : k.pow(rf(t->args[0]), t->value);
      case Term::Kind::Ac: return ac(vf(t->args[0])).code;
      default: break;
    }
    throw Error(Errc::SortError, "'" + to_string(t) + "' is not a residue-field term");
  }

  ZValue zz(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::Var: return std::get<long>(lookup(t->name));
      case Term::Kind::Literal: return t->value;
      case Term::Kind::Ord: {
        const auto v = ord(vf(t->args[0]));
        if (!v) {
          meta_.flags.insert("ord-of-zero");
          return std::nullopt;
        }
        return static_cast<long>(*v);
      }
      case Term::Kind::Add: {
        const ZValue a = zz(t->args[0]), b = zz(t->args[1]);
        if (!a || !b) return std::nullopt;
        return *a + *b;
      }
      case Term::Kind::Sub: {
        const ZValue a = zz(t->args[0]), b = zz(t->args[1]);
        if (!a || !b) return std::nullopt;
        return *a - *b;
      }
      case Term::Kind::Neg: {
        const ZValue a = zz(t->args[0]);
        if (!a) return std::nullopt;
        return -*a;
      }
      default: break;
    }
    throw Error(Errc::SortError, "'" + to_string(t) + "' is not a Z term");
  }

  bool vf_equal(const PadicNumber& a, const PadicNumber& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (!bounded_) {
      try {
        return (a - b).is_zero();
      } catch (const Error& e) {
        if (e.code() == Errc::PrecisionLoss) throw Undecided{};
        throw;
      }
    }
    // Bounded semantics: equal to vf_digits digits of relative precision.
    if (*a.valuation() != *b.valuation()) return false;
    try {
      const PadicNumber d = a - b;
      return d.is_zero() || *d.valuation() >= *a.valuation() + s_.vf_digits;
    } catch (const Error& e) {
      if (e.code() == Errc::PrecisionLoss) return true;
      throw;
    }
  }

  bool atom(const FormulaPtr& f) {
    using K = Formula::Kind;
    const Sort sort = f->lhs->sort;
    if (f->kind == K::Eq) {
      if (sort == Sort::VF) return vf_equal(vf(f->lhs), vf(f->rhs));
      if (sort == Sort::RF) return rf(f->lhs) == rf(f->rhs);
      const ZValue a = zz(f->lhs), b = zz(f->rhs);
      return a == b;
    }
    const ZValue a = zz(f->lhs), b = zz(f->rhs);
    switch (f->kind) {
      case K::Le:
        if (!b) return true;
        return a && *a <= *b;
      case K::Lt:
        if (!a) return false;
        return !b || *a < *b;
      case K::Cong: {
        if (!a || !b) return false;
        long r = (*a - *b) % f->modulus;
        return r == 0;
      }
      default: break;
    }
    return false;
  }

  const std::vector<PadicNumber>& vf_domain() {
    if (!vf_domain_.empty()) return vf_domain_;
    const Context& ctx = s_.ctx;
    vf_domain_.push_back(PadicNumber(ctx));
    const long lo = s_.ring_mode ? std::max(0L, s_.vf_valuations.lo) : s_.vf_valuations.lo;
    // Units with vf_digits base-q digits, leading digit nonzero.
    std::vector<PadicNumber> units;
    const PadicNumber pi = PadicNumber::uniformizer(ctx);
    std::vector<std::uint32_t> digits(s_.vf_digits, 0);
    digits[0] = 1;
    for (;;) {
      PadicNumber u(ctx);
      PadicNumber scale = PadicNumber::from_integer(ctx, 1);
      for (int i = 0; i < s_.vf_digits; ++i) {
        if (digits[i]) u = u + scale * PadicNumber::lift(residue(ctx, digits[i]));
        scale = scale * pi;
      }
      units.push_back(u);
      int i = s_.vf_digits - 1;
      for (; i >= 0; --i) {
        const std::uint32_t floor = i == 0 ? 1 : 0;
        if (++digits[i] < ctx->q()) break;
        digits[i] = floor;
      }
      if (i < 0) break;
    }
    for (long v = lo; v <= s_.vf_valuations.hi; ++v) {
      const PadicNumber pv = v >= 0 ? pi.pow(v) : pi.pow(-v).inverse();
      for (const auto& u : units) vf_domain_.push_back(pv * u);
    }
    return vf_domain_;
  }

  Truth fold(const FormulaPtr& f, const std::function<void(const std::function<bool(Value)>&)>& each) {
    const bool is_exists = f->kind == Formula::Kind::Exists;
    Truth acc = is_exists ? Truth::False : Truth::True;
    each([&](Value v) {
      scope_.emplace_back(f->var, std::move(v));
      const Truth t = eval(f->args[0]);
      scope_.pop_back();
      acc = is_exists ? kleene_or(acc, t) : kleene_and(acc, t);
      // Stop at a decisive witness.
      return acc == (is_exists ? Truth::True : Truth::False);
    });
    return acc;
  }

  Truth quantifier(const FormulaPtr& f) {
    const bool is_exists = f->kind == Formula::Kind::Exists;
    const Truth decisive = is_exists ? Truth::True : Truth::False;
    switch (f->var_sort) {
      case Sort::RF:
        return fold(f, [&](const std::function<bool(Value)>& body) {
          for (std::uint32_t c = 0; c < s_.ctx->q(); ++c)
            if (body(residue(s_.ctx, c))) return;
        });
      case Sort::VF:
        meta_.flags.insert("vf-bounded");
        return fold(f, [&](const std::function<bool(Value)>& body) {
          for (const auto& x : vf_domain())
            if (body(x)) return;
        });
      case Sort::Z: {
        const auto range = [&](long lo, long hi) {
          return [&, lo, hi](const std::function<bool(Value)>& body) {
            for (long z = lo; z <= hi; ++z)
              if (body(z)) return;
          };
        };
        const Truth inner = fold(f, range(s_.z_window.lo, s_.z_window.hi));
        if (inner == decisive) return inner;
        // The window did not settle it: widen by a margin on both sides and compare.
        const Truth left = fold(f, range(s_.z_window.lo - kZWindowExtension, s_.z_window.lo - 1));
        const Truth right = fold(f, range(s_.z_window.hi + 1, s_.z_window.hi + kZWindowExtension));
        const Truth wide = is_exists ? kleene_or(inner, kleene_or(left, right)) : kleene_and(inner, kleene_and(left, right));
        meta_.flags.insert("z-window");
        return wide == inner ? inner : Truth::Unbounded;
      }
    }
    return Truth::Unbounded;
  }

};

void check_value(const std::string& name, Sort s, const Value& v) {
  const bool ok = (s == Sort::VF && std::holds_alternative<PadicNumber>(v)) ||
                  (s == Sort::RF && std::holds_alternative<ResidueElement>(v)) ||
                  (s == Sort::Z && std::holds_alternative<long>(v));
  if (!ok) throw Error(Errc::SortError, "value for '" + name + "' is not of sort " + sort_name(s));
}

}  // namespace

EvalResult evaluate(const DPFormula& f, const DPStructure& s, const Assignment& assignment) {
  EvalResult result;
  const bool bounded = f.has_vf_quantifier();
  Evaluator ev(s, bounded, result);
  for (const auto& [name, sort] : f.free_variables()) {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw Error(Errc::UnassignedVariable, "free variable '" + name + "' has no value");
    check_value(name, sort, it->second);
    ev.bind(name, it->second);
  }
  result.truth = ev.eval(f.root());
  result.exact = result.truth != Truth::Unbounded && !result.flags.count("vf-bounded") &&
                 !result.flags.count("z-window") && !result.flags.count("precision");
  return result;
}

// ---------------------------------------------------------------------------
// The formulas used for orbits

DPFormula build_phi_lm(int ell, int m) {
  if (ell < 1 || m < 1 || m % ell != 0)
    throw Error(Errc::InvalidDivisor, std::to_string(ell) + " does not divide " + std::to_string(m));
  const auto y = [](int i) { return var("y" + std::to_string(i), Sort::RF); };
  const auto z = var("z", Sort::RF);
  const auto zm = power(z, m);
  std::vector<FormulaPtr> parts;
  // The representatives live in k^x.
  for (int i = 1; i <= ell; ++i) parts.push_back(negate(eq(y(i), literal(0, Sort::RF))));
  for (int j = 2; j <= ell; ++j)
    for (int i = 1; i < j; ++i) parts.push_back(negate(exists("z", Sort::RF, eq(y(i), mul(y(j), zm)))));
  std::vector<FormulaPtr> cover;
  const auto x = var("x", Sort::RF);
  for (int i = 1; i <= ell; ++i) cover.push_back(eq(x, mul(y(i), zm)));
  parts.push_back(forall("x", Sort::RF, exists("z", Sort::RF, disj(cover))));
  std::map<std::string, Sort> declared;
  for (int i = 1; i <= ell; ++i) declared["y" + std::to_string(i)] = Sort::RF;
  return check(conj(parts), declared);
}

DPFormula build_psi_lm(int ell, int m) {
  FormulaPtr f = build_phi_lm(ell, m).root();
  for (int i = ell; i >= 1; --i) f = exists("y" + std::to_string(i), Sort::RF, f);
  return check(miniscope(f));
}

DPStructure DPStructure::make(const Context& ctx, int m) {
  if (m < 1) throw Error(Errc::InvalidArgument, "m must be at least 1");
  DPStructure s;
  s.ctx = ctx;
  s.m = m;
  const auto reps = residue_power_coset_reps(m, ctx);
  s.ell = static_cast<int>(reps.size());
  for (int i = 0; i < m; ++i)
    s.constants.push_back(i < s.ell ? PadicNumber::lift(reps[i]) : PadicNumber::from_integer(ctx, 1));
  Assignment ys;
  for (int i = 0; i < s.ell; ++i) ys.emplace("y" + std::to_string(i + 1), ac(s.constants[i]));
  if (evaluate(build_phi_lm(s.ell, m), s, ys).truth != Truth::True)
    throw Error(Errc::InvalidArgument, "coset constants fail phi_{" + std::to_string(s.ell) + "," + std::to_string(m) + "}");
  return s;
}

namespace {

using TermMatrix = std::vector<std::vector<TermPtr>>;

TermMatrix term_product(const TermMatrix& a, const TermMatrix& b) {
  const std::size_t n = a.size();
  TermMatrix out(n, std::vector<TermPtr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      TermPtr sum = mul(a[i][0], b[0][j]);
      for (std::size_t k = 1; k < n; ++k) sum = add(sum, mul(a[i][k], b[k][j]));
      out[i][j] = sum;
    }
  return out;
}

// X^e by halving, which keeps the term trees small.
TermMatrix term_power(const TermMatrix& x, int e) {
  if (e == 1) return x;
  return term_product(term_power(x, e / 2), term_power(x, e - e / 2));
}

std::string entry_name(std::size_t i, std::size_t j) { return "x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1); }

}  // namespace

DPFormula nilpotency_formula(int n, Algebra algebra) {
  if (n < 2 && algebra == Algebra::SL) throw Error(Errc::InvalidArgument, "sl_n needs n >= 2");
  if (n < 1) throw Error(Errc::InvalidArgument, "sp_2n needs n >= 1");
  const std::size_t size = static_cast<std::size_t>(matrix_size(algebra, n));
  TermMatrix x(size, std::vector<TermPtr>(size));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) x[i][j] = var(entry_name(i, j), Sort::VF);
  const TermMatrix p = term_power(x, static_cast<int>(size));
  std::vector<FormulaPtr> parts;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) parts.push_back(eq(p[i][j], literal(0, Sort::VF)));
  return check(conj(parts));
}

Assignment matrix_assignment(const LieMatrix& x) {
  Assignment out;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out.emplace(entry_name(i, j), x.entries(i, j));
  return out;
}

}  // namespace nilorb::dp
