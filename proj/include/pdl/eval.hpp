#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdl/algebra.hpp"
#include "pdl/caps.hpp"
#include "pdl/term.hpp"

namespace pdl {

// Variable name -> element index of a FinitePDL.
using Assignment = std::map<std::string, std::size_t>;

// The upset algebra of the subposet `universe` of `poset`, computed in place:
// values are upsets of the subposet as sets over the ambient indices.
struct SetAlgebra {
  const FinitePoset* poset;
  ElementSet universe;

  ElementSet zero() const { return ElementSet(poset->size()); }
  ElementSet one() const { return universe; }
  ElementSet neg(const ElementSet& u) const { return universe - poset->down_set(u); }
};

SetAlgebra set_algebra(const FinitePDL& a);

// A formula flattened into straight-line code over a fixed variable order.
// Shared subterms are computed once per evaluation.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, std::vector<std::string> variables);

  const std::vector<std::string>& variables() const { return vars_; }
  // values[i] is the value of variables()[i].
  bool eval(const SetAlgebra& alg, const std::vector<ElementSet>& values) const;
  // Values of the top-level terms of each atom, for traces.
  std::vector<ElementSet> term_values(const SetAlgebra& alg, const std::vector<ElementSet>& values) const;

 private:
  enum class Op : std::uint8_t { Zero, One, Var, Not, Meet, Join };
  struct Instr {
    Op op;
    std::uint32_t a;
    std::uint32_t b;
  };
  struct Node {
    FormulaKind kind;
    std::uint32_t a;  // term registers for atoms, child nodes otherwise
    std::uint32_t b;
  };
  std::uint32_t compile(const Term& t, std::map<const void*, std::uint32_t>& memo);
  std::uint32_t compile(const Formula& f, std::map<const void*, std::uint32_t>& tmemo,
                        std::map<const void*, std::uint32_t>& fmemo);
  void run(const SetAlgebra& alg, const std::vector<ElementSet>& values, std::vector<ElementSet>& regs) const;
  bool truth(std::uint32_t node, const std::vector<ElementSet>& regs) const;

  std::vector<std::string> vars_;
  std::vector<Instr> code_;
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
};

std::size_t eval_term(const FinitePDL& a, const Term& t, const Assignment& v);
bool eval_formula(const FinitePDL& a, const Formula& f, const Assignment& v);

// First assignment (in lexicographic order of element indices over the
// sentence's variables) falsifying the matrix.
std::optional<Assignment> find_counterexample(const FinitePDL& a, const UniversalSentence& s, const Caps& caps = {});
bool holds_universal(const FinitePDL& a, const UniversalSentence& s, const Caps& caps = {});

}  // namespace pdl
