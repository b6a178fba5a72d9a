#include "pdl/eval.hpp"

#include "pdl/errors.hpp"

namespace pdl {

SetAlgebra set_algebra(const FinitePDL& a) { return SetAlgebra{&a.dual(), a.dual().full_set()}; }

CompiledFormula::CompiledFormula(const Formula& f, std::vector<std::string> variables) : vars_(std::move(variables)) {
  std::map<const void*, std::uint32_t> tmemo, fmemo;
  root_ = compile(f, tmemo, fmemo);
}

std::uint32_t CompiledFormula::compile(const Term& t, std::map<const void*, std::uint32_t>& memo) {
  if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
  Instr in{Op::Zero, 0, 0};
  switch (t.kind()) {
    case TermKind::Zero:
      break;
    case TermKind::One:
      in.op = Op::One;
      break;
    case TermKind::Var: {
      std::size_t i = 0;
      while (i < vars_.size() && vars_[i] != t.name()) ++i;
      if (i == vars_.size()) throw UnboundVariableError("variable '" + t.name() + "' is not assigned");
      in = {Op::Var, static_cast<std::uint32_t>(i), 0};
      break;
    }
    case TermKind::Not:
      in = {Op::Not, compile(t.lhs(), memo), 0};
      break;
    case TermKind::Meet:
    case TermKind::Join: {
      const std::uint32_t a = compile(t.lhs(), memo);
      const std::uint32_t b = compile(t.rhs(), memo);
      in = {t.kind() == TermKind::Meet ? Op::Meet : Op::Join, a, b};
      break;
    }
  }
  code_.push_back(in);
  const auto r = static_cast<std::uint32_t>(code_.size() - 1);
  memo.emplace(t.id(), r);
  return r;
}

std::uint32_t CompiledFormula::compile(const Formula& f, std::map<const void*, std::uint32_t>& tmemo,
                                       std::map<const void*, std::uint32_t>& fmemo) {
  if (auto it = fmemo.find(f.id()); it != fmemo.end()) return it->second;
  Node n{f.kind(), 0, 0};
  if (f.is_atom()) {
    n.a = compile(f.left_term(), tmemo);
    n.b = compile(f.right_term(), tmemo);
  } else {
    n.a = compile(f.lhs(), tmemo, fmemo);
    n.b = compile(f.rhs(), tmemo, fmemo);
  }
  nodes_.push_back(n);
  const auto r = static_cast<std::uint32_t>(nodes_.size() - 1);
  fmemo.emplace(f.id(), r);
  return r;
}

void CompiledFormula::run(const SetAlgebra& alg, const std::vector<ElementSet>& values,
                          std::vector<ElementSet>& regs) const {
  if (values.size() != vars_.size()) throw UnboundVariableError("assignment does not match the variable list");
  regs.resize(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    switch (in.op) {
      case Op::Zero: regs[i] = alg.zero(); break;
      case Op::One: regs[i] = alg.one(); break;
      case Op::Var: regs[i] = values[in.a]; break;
      case Op::Not: regs[i] = alg.neg(regs[in.a]); break;
      case Op::Meet: regs[i] = regs[in.a] & regs[in.b]; break;
      case Op::Join: regs[i] = regs[in.a] | regs[in.b]; break;
    }
  }
}

bool CompiledFormula::truth(std::uint32_t node, const std::vector<ElementSet>& regs) const {
  const Node& n = nodes_[node];
  switch (n.kind) {
    case FormulaKind::Eq: return regs[n.a] == regs[n.b];
    case FormulaKind::Neq: return !(regs[n.a] == regs[n.b]);
    case FormulaKind::And: return truth(n.a, regs) && truth(n.b, regs);
    case FormulaKind::Or: return truth(n.a, regs) || truth(n.b, regs);
    case FormulaKind::Implies: return !truth(n.a, regs) || truth(n.b, regs);
  }
  return false;
}

bool CompiledFormula::eval(const SetAlgebra& alg, const std::vector<ElementSet>& values) const {
  std::vector<ElementSet> regs;
  run(alg, values, regs);
  return truth(root_, regs);
}

std::vector<ElementSet> CompiledFormula::term_values(const SetAlgebra& alg,
                                                     const std::vector<ElementSet>& values) const {
  std::vector<ElementSet> regs;
  run(alg, values, regs);
  std::vector<ElementSet> out;
  for (const auto& n : nodes_) {
    if (n.kind == FormulaKind::Eq || n.kind == FormulaKind::Neq) {
      out.push_back(regs[n.a]);
      out.push_back(regs[n.b]);
    }
  }
  return out;
}

namespace {

std::vector<ElementSet> values_of(const FinitePDL& a, const std::vector<std::string>& vars, const Assignment& v) {
  std::vector<ElementSet> out;
  for (const auto& name : vars) {
    auto it = v.find(name);
    if (it == v.end()) throw UnboundVariableError("variable '" + name + "' is not assigned");
    if (it->second >= a.size()) throw UnknownElementError("assigned element index out of range");
    out.push_back(a.element(it->second));
  }
  return out;
}

}  // namespace

std::size_t eval_term(const FinitePDL& a, const Term& t, const Assignment& v) {
  const auto vars = variables_of(t);
  CompiledFormula c(Formula::eq(t, t), vars);
  return a.index_of(c.term_values(set_algebra(a), values_of(a, vars, v)).front());
}

bool eval_formula(const FinitePDL& a, const Formula& f, const Assignment& v) {
  const auto vars = variables_of(f);
  return CompiledFormula(f, vars).eval(set_algebra(a), values_of(a, vars, v));
}

std::optional<Assignment> find_counterexample(const FinitePDL& a, const UniversalSentence& s, const Caps& caps) {
  const std::size_t k = s.variables.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > caps.eval_budget / a.size() + 1) throw BudgetExceededError("assignment enumeration", caps.eval_budget);
    total *= a.size();
  }
  if (total > caps.eval_budget) throw BudgetExceededError("assignment enumeration", caps.eval_budget);
  CompiledFormula c(s.matrix, s.variables);
  const SetAlgebra alg = set_algebra(a);
  std::vector<std::size_t> idx(k, 0);
  std::vector<ElementSet> values(k, a.element(0));
  while (true) {
    if (!c.eval(alg, values)) {
      Assignment out;
      for (std::size_t i = 0; i < k; ++i) out.emplace(s.variables[i], idx[i]);
      return out;
    }
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++idx[i] < a.size()) {
        values[i] = a.element(idx[i]);
        break;
      }
      idx[i] = 0;
      values[i] = a.element(0);
      if (i == 0) return std::nullopt;
    }
    if (k == 0) return std::nullopt;
  }
}

bool holds_universal(const FinitePDL& a, const UniversalSentence& s, const Caps& caps) {
  return !find_counterexample(a, s, caps).has_value();
}

}  // namespace pdl
