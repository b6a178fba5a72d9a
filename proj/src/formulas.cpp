#include "pdl/formulas.hpp"

#include "pdl/errors.hpp"

namespace pdl {

namespace {

Term xvar(std::size_t i) { return Term::var("x" + std::to_string(i + 1)); }

}  // namespace

std::vector<Formula> diagram_literals(const FinitePDL& a) {
  const std::size_t n = a.size();
  std::vector<Formula> out;
  out.push_back(Formula::eq(Term::zero(), xvar(a.zero())));
  out.push_back(Formula::eq(Term::one(), xvar(a.one())));
  for (std::size_t i = 0; i < n; ++i) out.push_back(Formula::eq(!xvar(i), xvar(a.neg(i))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(Formula::eq(xvar(i) & xvar(j), xvar(a.meet(i, j))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(Formula::eq(xvar(i) | xvar(j), xvar(a.join(i, j))));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = m + 1; k < n; ++k) out.push_back(Formula::neq(xvar(m), xvar(k)));
  return out;
}

Formula diagram(const FinitePDL& a) { return conj_all(diagram_literals(a)); }

std::optional<std::vector<std::size_t>> diagram_embedding(const FinitePDL& a, const FinitePDL& b, const Caps& caps) {
  // Branch only on elements the diagram does not already determine from the
  // values chosen so far; every table entry and disequality is enforced as
  // soon as its arguments are known.
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  const std::size_t n = a.size();
  std::uint64_t nodes = 0;

  auto propagate = [&](std::vector<std::size_t>& h, std::vector<char>& used) {
    auto put = [&](std::size_t x, std::size_t v) {
      if (h[x] == kUnset) {
        if (used[v]) return false;
        h[x] = v;
        used[v] = 1;
        return true;
      }
      return h[x] == v;
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (h[i] == kUnset) continue;
        const std::size_t ni = a.neg(i);
        const bool fresh = h[ni] == kUnset;
        if (!put(ni, b.neg(h[i]))) return false;
        changed = changed || fresh;
        for (std::size_t j = 0; j < n; ++j) {
          if (h[j] == kUnset) continue;
          const std::size_t m = a.meet(i, j), s = a.join(i, j);
          const bool fm = h[m] == kUnset, fs = h[s] == kUnset;
          if (!put(m, b.meet(h[i], h[j])) || !put(s, b.join(h[i], h[j]))) return false;
          changed = changed || fm || fs;
        }
      }
    }
    return true;
  };

  std::vector<std::size_t> h(n, kUnset);
  std::vector<char> used(b.size(), 0);
  h[a.zero()] = b.zero();
  used[b.zero()] = 1;
  if (a.one() != a.zero()) {
    if (b.one() == b.zero()) return std::nullopt;
    h[a.one()] = b.one();
    used[b.one()] = 1;
  }
  if (!propagate(h, used)) return std::nullopt;

  std::optional<std::vector<std::size_t>> found;
  auto rec = [&](auto&& self, const std::vector<std::size_t>& cur, const std::vector<char>& cur_used) -> bool {
    // Larger upsets first, so that meets fill in the rest.
    std::size_t k = n;
    while (k > 0 && cur[k - 1] != kUnset) --k;
    if (k == 0) {
      found = cur;
      return true;
    }
    --k;
    const std::size_t nk = a.neg(k);
    for (std::size_t v = 0; v < b.size(); ++v) {
      if (cur_used[v]) continue;
      if (cur[nk] != kUnset && b.neg(v) != cur[nk]) continue;
      bool order_ok = true;
      for (std::size_t y = 0; y < n && order_ok; ++y) {
        if (cur[y] == kUnset) continue;
        order_ok = a.leq(y, k) == b.leq(cur[y], v) && a.leq(k, y) == b.leq(v, cur[y]);
      }
      if (!order_ok) continue;
      if (++nodes > caps.search_budget) throw BudgetExceededError("diagram assignment search", caps.search_budget);
      auto next = cur;
      auto next_used = cur_used;
      next[k] = v;
      next_used[v] = 1;
      if (propagate(next, next_used) && self(self, next, next_used)) return true;
    }
    return false;
  };
  if (!rec(rec, h, used)) return std::nullopt;
  if (!is_embedding(a, b, *found)) throw Error("internal: diagram assignment is not an embedding");
  return found;
}

bool embedding_via_diagram(const FinitePDL& a, const FinitePDL& b, const Caps& caps) {
  return diagram_embedding(a, b, caps).has_value();
}

FamilyBuilder::FamilyBuilder(std::vector<Term> vars, SReading reading)
    : vars_(std::move(vars)), pairs_(s_pairs(vars_.size(), reading)) {
  const std::uint32_t subsets = std::uint32_t{1} << vars_.size();
  for (std::uint32_t m = subsets; m-- > 0;) a_.push_back(a_term(m, vars_));
  for (const auto& s : pairs_) p_.push_back(p_term(s, vars_));
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    std::vector<Term> lower;
    for (std::size_t j = 0; j < pairs_.size(); ++j)
      if (spair_less(pairs_[j], pairs_[i])) lower.push_back(p_[j]);
    below_.push_back(join_all(lower));
  }
}

Formula FamilyBuilder::at(const Term& t) const {
  std::vector<Formula> ds;
  for (const auto& a : a_) ds.push_back(Formula::eq(t, a));
  return Formula::conj(Formula::neq(t, Term::zero()), disj_all(ds));
}

Formula FamilyBuilder::jirr(const Term& t) const {
  std::vector<Formula> ds;
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    ds.push_back(Formula::conj(Formula::eq(t, p_[i]), Formula::neq(t, below_[i])));
  return disj_all(ds);
}

Formula gen_At(const Term& t, std::size_t n) { return FamilyBuilder(default_variables(n)).at(t); }

Formula gen_Jirr(const Term& t, std::size_t n, SReading reading) {
  return FamilyBuilder(default_variables(n), reading).jirr(t);
}

std::vector<Term> xyz_variables(std::size_t n, std::size_t m, std::size_t k) {
  auto v = default_variables(n, "x");
  for (const auto& y : default_variables(m, "y")) v.push_back(y);
  for (const auto& z : default_variables(k, "z")) v.push_back(z);
  return v;
}

Formula gen_P(std::size_t n, std::size_t m, std::size_t h) {
  if (n < 1 || h > m) throw PreconditionError("gen_P needs n >= 1 and h <= m");
  const Term x1 = Term::var("x1");
  std::vector<Formula> cs;
  for (std::size_t i = 1; i <= h; ++i) cs.push_back(Formula::leq(Term::var("y" + std::to_string(i)), x1));
  for (std::size_t j = h + 1; j <= m; ++j) cs.push_back(Formula::nleq(Term::var("y" + std::to_string(j)), x1));
  return conj_all(cs);
}

Formula gen_Q(std::size_t n, std::size_t m, std::size_t h) {
  if (n < 1 || h < 1 || h > 20) throw PreconditionError("gen_Q needs n >= 1 and 1 <= h <= 20");
  const Term x1 = Term::var("x1");
  const std::size_t k = (std::size_t{1} << h) - 1;
  // f(i) is the subset of {1..h} with bitmask i.
  auto z = [](std::size_t i) { return Term::var("z" + std::to_string(i)); };
  auto y = [](std::size_t j) { return Term::var("y" + std::to_string(j)); };
  std::vector<Formula> c1, c2, c3, c4;
  for (std::size_t i = 1; i <= k; ++i) c1.push_back(Formula::leq(z(i), x1));
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= k; ++j)
      if ((i & j) == i) c2.push_back(Formula::leq(z(i), z(j)));
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      if (j <= h && ((i >> (j - 1)) & 1U)) c3.push_back(Formula::leq(y(j), z(i)));
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      if (!(j <= h && ((i >> (j - 1)) & 1U))) c4.push_back(Formula::nleq(y(j), z(i)));
  std::vector<Formula> parts{conj_all(c1), conj_all(c2), conj_all(c3)};
  if (!c4.empty()) parts.push_back(conj_all(c4));
  return conj_all(parts);
}

Formula gen_F(std::size_t n, std::size_t m, std::size_t k, const Formula& p, const Formula& q, const Caps& caps,
              SReading reading) {
  if (n < 1) throw PreconditionError("gen_F needs n >= 1");
  FamilyBuilder fb(xyz_variables(n, m), reading);
  const std::size_t s = fb.pairs().size();
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (total > caps.formula_budget / s + 1) throw BudgetExceededError("gen_F disjuncts", caps.formula_budget);
    total *= s;
  }
  if (total > caps.formula_budget) throw BudgetExceededError("gen_F disjuncts", caps.formula_budget);

  std::vector<Formula> a_parts{fb.jirr(Term::var("x1"))};
  for (std::size_t i = 1; i <= m; ++i) a_parts.push_back(fb.at(Term::var("y" + std::to_string(i))));
  a_parts.push_back(p);
  const Formula antecedent = conj_all(a_parts);

  std::vector<Formula> jirr_of(s, Formula::truth());
  for (std::size_t i = 0; i < s; ++i) jirr_of[i] = fb.jirr(fb.p_terms()[i]);

  std::vector<Formula> ds;
  std::vector<std::size_t> idx(k, 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    std::map<std::string, Term> sub;
    std::vector<Formula> parts;
    for (std::size_t j = 0; j < k; ++j) sub.emplace("z" + std::to_string(j + 1), fb.p_terms()[idx[j]]);
    parts.push_back(substitute(q, sub));
    for (std::size_t j = 0; j < k; ++j) parts.push_back(jirr_of[idx[j]]);
    ds.push_back(conj_all(parts));
    for (std::size_t j = k; j-- > 0;) {
      if (++idx[j] < s) break;
      idx[j] = 0;
    }
  }
  return Formula::implies(antecedent, disj_all(ds));
}

Formula gen_FS(std::size_t n, std::size_t m, std::size_t h, const Caps& caps) {
  if (h < 1 || h > m) throw PreconditionError("FS needs 1 <= h <= m");
  return gen_F(n, m, (std::size_t{1} << h) - 1, gen_P(n, m, h), gen_Q(n, m, h), caps);
}

Formula gen_DN() { return parse_formula("!!x = y | z -> (y = !!x or z = !!x)"); }

}  // namespace pdl
