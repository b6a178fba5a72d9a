#include "pdl/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "pdl/errors.hpp"

namespace pdl {

Term::Term() : Term(zero()) {}

Term Term::zero() {
  static const Term z(std::make_shared<const Node>(Node{TermKind::Zero, "", nullptr, nullptr}));
  return z;
}

Term Term::one() {
  static const Term o(std::make_shared<const Node>(Node{TermKind::One, "", nullptr, nullptr}));
  return o;
}

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{TermKind::Var, std::move(name), nullptr, nullptr}));
}

Term operator!(const Term& t) {
  return Term(std::make_shared<const Term::Node>(Term::Node{TermKind::Not, "", std::make_shared<const Term>(t), nullptr}));
}

Term operator&(const Term& a, const Term& b) {
  return Term(std::make_shared<const Term::Node>(
      Term::Node{TermKind::Meet, "", std::make_shared<const Term>(a), std::make_shared<const Term>(b)}));
}

Term operator|(const Term& a, const Term& b) {
  return Term(std::make_shared<const Term::Node>(
      Term::Node{TermKind::Join, "", std::make_shared<const Term>(a), std::make_shared<const Term>(b)}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.n_ == b.n_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Zero:
    case TermKind::One:
      return true;
    case TermKind::Var:
      return a.name() == b.name();
    case TermKind::Not:
      return a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Term meet_all(const std::vector<Term>& ts) {
  if (ts.empty()) return Term::one();
  Term r = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) r = r & ts[i];
  return r;
}

Term join_all(const std::vector<Term>& ts) {
  if (ts.empty()) return Term::zero();
  Term r = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) r = r | ts[i];
  return r;
}

Formula Formula::eq(Term a, Term b) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Eq, std::move(a), std::move(b), nullptr, nullptr}));
}

Formula Formula::neq(Term a, Term b) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Neq, std::move(a), std::move(b), nullptr, nullptr}));
}

Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::And, Term(), Term(),
                                                   std::make_shared<const Formula>(std::move(a)),
                                                   std::make_shared<const Formula>(std::move(b))}));
}

Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Or, Term(), Term(),
                                                   std::make_shared<const Formula>(std::move(a)),
                                                   std::make_shared<const Formula>(std::move(b))}));
}

Formula Formula::implies(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Implies, Term(), Term(),
                                                   std::make_shared<const Formula>(std::move(a)),
                                                   std::make_shared<const Formula>(std::move(b))}));
}

Formula Formula::leq(const Term& a, const Term& b) { return eq(a & b, a); }
Formula Formula::nleq(const Term& a, const Term& b) { return neq(a & b, a); }
Formula Formula::truth() { return eq(Term::zero(), Term::zero()); }
Formula Formula::falsity() { return neq(Term::zero(), Term::zero()); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_atom()) return a.left_term() == b.left_term() && a.right_term() == b.right_term();
  return a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::truth();
  Formula r = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) r = Formula::conj(r, fs[i]);
  return r;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::falsity();
  Formula r = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) r = Formula::disj(r, fs[i]);
  return r;
}

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string_view na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

namespace {

void collect_vars(const Term& t, std::unordered_set<const void*>& seen, std::vector<std::string>& out) {
  if (!seen.insert(t.id()).second) return;
  switch (t.kind()) {
    case TermKind::Var:
      out.push_back(t.name());
      break;
    case TermKind::Not:
      collect_vars(t.lhs(), seen, out);
      break;
    case TermKind::Meet:
    case TermKind::Join:
      collect_vars(t.lhs(), seen, out);
      collect_vars(t.rhs(), seen, out);
      break;
    default:
      break;
  }
}

void collect_vars(const Formula& f, std::unordered_set<const void*>& seen, std::vector<std::string>& out) {
  if (!seen.insert(f.id()).second) return;
  if (f.is_atom()) {
    collect_vars(f.left_term(), seen, out);
    collect_vars(f.right_term(), seen, out);
  } else {
    collect_vars(f.lhs(), seen, out);
    collect_vars(f.rhs(), seen, out);
  }
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end(), [](const std::string& a, const std::string& b) { return natural_less(a, b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<std::string> variables_of(const Term& t) {
  std::unordered_set<const void*> seen;
  std::vector<std::string> out;
  collect_vars(t, seen, out);
  return sorted_unique(std::move(out));
}

std::vector<std::string> variables_of(const Formula& f) {
  std::unordered_set<const void*> seen;
  std::vector<std::string> out;
  collect_vars(f, seen, out);
  return sorted_unique(std::move(out));
}

UniversalSentence UniversalSentence::close(Formula matrix) {
  auto vars = variables_of(matrix);
  return UniversalSentence{std::move(matrix), std::move(vars)};
}

// ---- printing ----

namespace {

void print(const Term& t, int min_prec, std::string& out) {
  switch (t.kind()) {
    case TermKind::Zero:
      out += '0';
      return;
    case TermKind::One:
      out += '1';
      return;
    case TermKind::Var:
      out += t.name();
      return;
    case TermKind::Not:
      out += '!';
      print(t.lhs(), 3, out);
      return;
    case TermKind::Meet:
    case TermKind::Join: {
      const int prec = t.kind() == TermKind::Join ? 1 : 2;
      if (prec < min_prec) out += '(';
      print(t.lhs(), prec, out);
      out += t.kind() == TermKind::Join ? " | " : " & ";
      print(t.rhs(), prec + 1, out);
      if (prec < min_prec) out += ')';
      return;
    }
  }
}

void print(const Formula& f, int min_prec, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Neq:
      print(f.left_term(), 0, out);
      out += f.kind() == FormulaKind::Eq ? " = " : " != ";
      print(f.right_term(), 0, out);
      return;
    case FormulaKind::Implies:
      if (min_prec > 1) out += '(';
      print(f.lhs(), 2, out);
      out += " -> ";
      print(f.rhs(), 1, out);
      if (min_prec > 1) out += ')';
      return;
    case FormulaKind::Or:
    case FormulaKind::And: {
      const int prec = f.kind() == FormulaKind::Or ? 2 : 3;
      if (prec < min_prec) out += '(';
      print(f.lhs(), prec, out);
      out += f.kind() == FormulaKind::Or ? " or " : " and ";
      print(f.rhs(), prec + 1, out);
      if (prec < min_prec) out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::string s;
  print(t, 0, s);
  return s;
}

std::string to_string(const Formula& f) {
  std::string s;
  print(f, 0, s);
  return s;
}

// ---- parsing ----

namespace {

enum class Tok { Zero, One, Ident, Not, Meet, Join, LParen, RParen, Eq, Neq, And, Or, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t p = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(p, i - p));
      if (word == "and") out.push_back({Tok::And, word, p});
      else if (word == "or") out.push_back({Tok::Or, word, p});
      else out.push_back({Tok::Ident, word, p});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
      std::string_view num = s.substr(p, i - p);
      if (num == "0") out.push_back({Tok::Zero, "0", p});
      else if (num == "1") out.push_back({Tok::One, "1", p});
      else throw SyntaxError("unexpected token '" + std::string(num) + "'", p);
      continue;
    }
    if (c == '!' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::Neq, "!=", p});
      i += 2;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", p});
      i += 2;
      continue;
    }
    switch (c) {
      case '!': out.push_back({Tok::Not, "!", p}); break;
      case '&': out.push_back({Tok::Meet, "&", p}); break;
      case '|': out.push_back({Tok::Join, "|", p}); break;
      case '(': out.push_back({Tok::LParen, "(", p}); break;
      case ')': out.push_back({Tok::RParen, ")", p}); break;
      case '=': out.push_back({Tok::Eq, "=", p}); break;
      default: throw SyntaxError(std::string("unexpected character '") + c + "'", p);
    }
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Term whole_term() {
    Term t = term();
    expect_end();
    return t;
  }

  Formula whole_formula() {
    Formula f = formula();
    expect_end();
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw SyntaxError(what + (t.kind == Tok::End ? " but input ended" : " but found '" + t.text + "'"), t.pos);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("expected end of input");
  }

  Term term() {
    Term t = meet_term();
    while (accept(Tok::Join)) t = t | meet_term();
    return t;
  }
  Term meet_term() {
    Term t = unary_term();
    while (accept(Tok::Meet)) t = t & unary_term();
    return t;
  }
  Term unary_term() {
    if (accept(Tok::Not)) return !unary_term();
    if (accept(Tok::Zero)) return Term::zero();
    if (accept(Tok::One)) return Term::one();
    if (peek().kind == Tok::Ident) return Term::var(toks_[pos_++].text);
    if (accept(Tok::LParen)) {
      Term t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a term");
  }

  Formula formula() {
    Formula f = or_formula();
    if (accept(Tok::Arrow)) return Formula::implies(f, formula());
    return f;
  }
  Formula or_formula() {
    Formula f = and_formula();
    while (accept(Tok::Or)) f = Formula::disj(f, and_formula());
    return f;
  }
  Formula and_formula() {
    Formula f = atom();
    while (accept(Tok::And)) f = Formula::conj(f, atom());
    return f;
  }
  Formula atom() {
    const std::size_t start = pos_;
    if (peek().kind == Tok::LParen) {
      // Either a parenthesized term starting an equation or a parenthesized
      // formula; try the equation first.
      try {
        return equation();
      } catch (const SyntaxError& first) {
        pos_ = start;
        try {
          ++pos_;
          Formula f = formula();
          expect(Tok::RParen, "')'");
          return f;
        } catch (const SyntaxError& second) {
          throw second.position() >= first.position() ? second : first;
        }
      }
    }
    return equation();
  }
  Formula equation() {
    Term a = term();
    if (accept(Tok::Eq)) return Formula::eq(a, term());
    if (accept(Tok::Neq)) return Formula::neq(a, term());
    fail("expected '=' or '!='");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).whole_term(); }
Formula parse_formula(std::string_view text) { return Parser(text).whole_formula(); }
UniversalSentence parse_sentence(std::string_view text) { return UniversalSentence::close(parse_formula(text)); }

// ---- substitution ----

namespace {

struct Substituter {
  const std::map<std::string, Term>& s;
  std::unordered_map<const void*, Term> terms;
  std::unordered_map<const void*, Formula> formulas;

  Term go(const Term& t) {
    if (auto it = terms.find(t.id()); it != terms.end()) return it->second;
    Term r = t;
    switch (t.kind()) {
      case TermKind::Var:
        if (auto it = s.find(t.name()); it != s.end()) r = it->second;
        break;
      case TermKind::Not:
        r = !go(t.lhs());
        break;
      case TermKind::Meet:
        r = go(t.lhs()) & go(t.rhs());
        break;
      case TermKind::Join:
        r = go(t.lhs()) | go(t.rhs());
        break;
      default:
        break;
    }
    terms.emplace(t.id(), r);
    return r;
  }

  Formula go(const Formula& f) {
    if (auto it = formulas.find(f.id()); it != formulas.end()) return it->second;
    std::optional<Formula> r;
    switch (f.kind()) {
      case FormulaKind::Eq: r = Formula::eq(go(f.left_term()), go(f.right_term())); break;
      case FormulaKind::Neq: r = Formula::neq(go(f.left_term()), go(f.right_term())); break;
      case FormulaKind::And: r = Formula::conj(go(f.lhs()), go(f.rhs())); break;
      case FormulaKind::Or: r = Formula::disj(go(f.lhs()), go(f.rhs())); break;
      case FormulaKind::Implies: r = Formula::implies(go(f.lhs()), go(f.rhs())); break;
    }
    formulas.emplace(f.id(), *r);
    return *r;
  }
};

void count_nodes(const Term& t, std::unordered_set<const void*>& seen) {
  if (!seen.insert(t.id()).second) return;
  if (t.kind() == TermKind::Not) count_nodes(t.lhs(), seen);
  if (t.kind() == TermKind::Meet || t.kind() == TermKind::Join) {
    count_nodes(t.lhs(), seen);
    count_nodes(t.rhs(), seen);
  }
}

void count_nodes(const Formula& f, std::unordered_set<const void*>& seen) {
  if (!seen.insert(f.id()).second) return;
  if (f.is_atom()) {
    count_nodes(f.left_term(), seen);
    count_nodes(f.right_term(), seen);
  } else {
    count_nodes(f.lhs(), seen);
    count_nodes(f.rhs(), seen);
  }
}

}  // namespace

Term substitute(const Term& t, const std::map<std::string, Term>& s) { return Substituter{s, {}, {}}.go(t); }
Formula substitute(const Formula& f, const std::map<std::string, Term>& s) { return Substituter{s, {}, {}}.go(f); }

std::size_t dag_size(const Formula& f) {
  std::unordered_set<const void*> seen;
  count_nodes(f, seen);
  return seen.size();
}

}  // namespace pdl
