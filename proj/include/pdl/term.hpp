#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace pdl {

enum class TermKind { Zero, One, Var, Not, Meet, Join };

// Immutable term over {&, |, !, 0, 1}. Subterms are shared, so large terms
// built from repeated pieces stay small in memory.
class Term {
 public:
  Term();  // 0
  static Term zero();
  static Term one();
  static Term var(std::string name);

  TermKind kind() const { return n_->kind; }
  const std::string& name() const { return n_->name; }
  const Term& lhs() const { return *n_->a; }
  const Term& rhs() const { return *n_->b; }
  const void* id() const { return n_.get(); }

  friend Term operator!(const Term& t);
  friend Term operator&(const Term& a, const Term& b);
  friend Term operator|(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    TermKind kind;
    std::string name;
    std::shared_ptr<const Term> a;
    std::shared_ptr<const Term> b;
  };
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Meet of all terms, 1 when empty; join of all terms, 0 when empty. Both
// fold to the left.
Term meet_all(const std::vector<Term>& ts);
Term join_all(const std::vector<Term>& ts);

enum class FormulaKind { Eq, Neq, And, Or, Implies };

class Formula {
 public:
  static Formula eq(Term a, Term b);
  static Formula neq(Term a, Term b);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  // a <= b written as a & b = a, and its negation.
  static Formula leq(const Term& a, const Term& b);
  static Formula nleq(const Term& a, const Term& b);
  // `0 = 0` and `0 != 0`.
  static Formula truth();
  static Formula falsity();

  FormulaKind kind() const { return n_->kind; }
  bool is_atom() const { return kind() == FormulaKind::Eq || kind() == FormulaKind::Neq; }
  const Term& left_term() const { return n_->t; }
  const Term& right_term() const { return n_->u; }
  const Formula& lhs() const { return *n_->a; }
  const Formula& rhs() const { return *n_->b; }
  const void* id() const { return n_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    Term t;
    Term u;
    std::shared_ptr<const Formula> a;
    std::shared_ptr<const Formula> b;
  };
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Conjunction / disjunction folded to the left; truth() / falsity() when empty.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

struct UniversalSentence {
  Formula matrix;
  std::vector<std::string> variables;  // free variables, natural order

  static UniversalSentence close(Formula matrix);
};

// Natural order: x2 before x10.
bool natural_less(std::string_view a, std::string_view b);
std::vector<std::string> variables_of(const Term& t);
std::vector<std::string> variables_of(const Formula& f);

Term parse_term(std::string_view text);
Formula parse_formula(std::string_view text);
UniversalSentence parse_sentence(std::string_view text);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

Term substitute(const Term& t, const std::map<std::string, Term>& s);
Formula substitute(const Formula& f, const std::map<std::string, Term>& s);

// Number of distinct nodes reachable from f, counting shared nodes once.
std::size_t dag_size(const Formula& f);

}  // namespace pdl
