#include "pdl/free.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "pdl/errors.hpp"
#include "pdl/eval.hpp"

namespace pdl {

ElementSet generator_upset(const PairPoset& p, std::size_t i) {
  ElementSet g(p.poset.size());
  for (std::size_t e = 0; e < p.pairs.size(); ++e)
    if ((p.pairs[e].base >> (i - 1)) & 1U) g.set(e);
  return g;
}

FreeAlgebra free_pdl(std::size_t n, const Caps& caps) {
  if (n < 1) throw PreconditionError("free_pdl needs at least one generator");
  if (n > caps.free_n) throw CapExceededError("free_pdl generators", n, caps.free_n);
  FreeAlgebra f;
  f.n = n;
  f.dual = p_extension(boolean_poset(n, caps), caps);
  f.algebra = FinitePDL::from_dual(f.dual.poset, caps);
  for (std::size_t i = 1; i <= n; ++i) f.generators.push_back(f.algebra.index_of(generator_upset(f.dual, i)));
  if (!subalgebra_closure(f.algebra, f.generators).all())
    throw Error("internal: generators of the free algebra do not generate it");
  f.algebra = f.algebra.with_generators(f.generators);
  return f;
}

std::vector<SPair> s_pairs(std::size_t n, SReading reading) {
  if (n > 4) throw CapExceededError("S(n) size", n, 4);
  const std::uint32_t subsets = std::uint32_t{1} << n;
  const std::uint64_t families = std::uint64_t{1} << subsets;
  std::vector<SPair> out;
  for (std::uint64_t t = 1; t < families; ++t) {
    std::uint32_t inter = subsets - 1;
    for (std::uint32_t s = 0; s < subsets; ++s)
      if ((t >> s) & 1U) inter &= s;
    // submasks of inter in increasing order
    for (std::uint32_t l = 0;; l = (l - inter) & inter) {
      if (reading == SReading::Corrected || l != 0) out.push_back({l, t});
      if (l == inter) break;
    }
  }
  return out;
}

bool spair_leq(const SPair& a, const SPair& b) { return (a.l & b.l) == b.l && (a.t & b.t) == a.t; }
bool spair_less(const SPair& a, const SPair& b) { return spair_leq(a, b) && !(a == b); }

std::vector<Term> default_variables(std::size_t n, const std::string& prefix) {
  std::vector<Term> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(Term::var(prefix + std::to_string(i)));
  return v;
}

Term a_term(std::uint32_t t, const std::vector<Term>& vars) {
  std::vector<Term> parts;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if ((t >> i) & 1U) parts.push_back(vars[i]);
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (!((t >> i) & 1U)) parts.push_back(!vars[i]);
  return meet_all(parts);
}

Term a_term(std::size_t n, std::uint32_t t) { return a_term(t, default_variables(n)); }

Term p_term(const SPair& s, const std::vector<Term>& vars) {
  std::vector<Term> parts;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if ((s.l >> i) & 1U) parts.push_back(vars[i]);
  std::vector<Term> disjuncts;
  const std::uint32_t subsets = std::uint32_t{1} << vars.size();
  for (std::uint32_t m = subsets; m-- > 0;)
    if ((s.t >> m) & 1U) disjuncts.push_back(a_term(m, vars));
  parts.push_back(!!join_all(disjuncts));
  return meet_all(parts);
}

Term p_term(std::size_t n, const SPair& s) { return p_term(s, default_variables(n)); }

namespace {

std::string subset_label(std::uint32_t m) {
  std::string s = "{";
  bool first = true;
  for (std::uint32_t i = 0; i < 32; ++i) {
    if ((m >> i) & 1U) {
      if (!first) s += ",";
      first = false;
      s += std::to_string(i + 1);
    }
  }
  return s + "}";
}

std::string spair_label(const SPair& p, std::size_t n) {
  std::string s = "<" + subset_label(p.l) + ",{";
  bool first = true;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
    if ((p.t >> m) & 1U) {
      if (!first) s += ",";
      first = false;
      s += subset_label(m);
    }
  }
  return s + "}>";
}

// Values of the terms at the given generator values, as sets.
std::vector<ElementSet> values_at(const SetAlgebra& alg, const std::vector<Term>& terms,
                                  const std::vector<ElementSet>& gens) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= gens.size(); ++i) names.push_back("x" + std::to_string(i));
  std::vector<Formula> atoms;
  for (const auto& t : terms) atoms.push_back(Formula::eq(t, t));
  if (atoms.empty()) return {};
  CompiledFormula c(conj_all(atoms), names);
  auto tv = c.term_values(alg, gens);
  std::vector<ElementSet> out;
  for (std::size_t i = 0; i < terms.size(); ++i) out.push_back(tv[2 * i]);
  return out;
}

}  // namespace

std::vector<Term> element_terms(const FinitePDL& a, const std::vector<std::size_t>& gens,
                                const std::vector<Term>& vars) {
  if (gens.size() != vars.size()) throw PreconditionError("one variable per generator is needed");
  std::vector<std::optional<Term>> t(a.size());
  std::vector<std::size_t> found, fresh;
  auto add = [&](std::size_t e, const Term& term) {
    if (t[e]) return;
    t[e] = term;
    fresh.push_back(e);
  };
  add(a.zero(), Term::zero());
  add(a.one(), Term::one());
  for (std::size_t i = 0; i < gens.size(); ++i) add(gens[i], vars[i]);
  while (!fresh.empty()) {
    const std::vector<std::size_t> last = std::move(fresh);
    fresh.clear();
    found.insert(found.end(), last.begin(), last.end());
    for (auto e : last) add(a.neg(e), !*t[e]);
    for (auto e : last) {
      for (auto f : found) {
        add(a.meet(f, e), *t[f] & *t[e]);
        add(a.join(f, e), *t[f] | *t[e]);
      }
    }
  }
  std::vector<Term> out;
  for (std::size_t e = 0; e < a.size(); ++e) {
    if (!t[e]) throw PreconditionError("the given elements do not generate the algebra");
    out.push_back(*t[e]);
  }
  return out;
}

FreeCharReport check_free_characterizations(std::size_t n, SReading reading, const Caps& caps) {
  FreeCharReport r;
  r.n = n;
  const FreeAlgebra f = free_pdl(n, caps);
  const FinitePDL& a = f.algebra;
  const SetAlgebra alg = set_algebra(a);
  std::vector<ElementSet> gens;
  for (auto g : f.generators) gens.push_back(a.element(g));

  std::vector<Term> at_terms;
  for (std::uint32_t t = 0; t < (std::uint32_t{1} << n); ++t) at_terms.push_back(a_term(n, t));
  const auto at_vals = values_at(alg, at_terms, gens);
  std::set<std::size_t> at_set;
  for (std::size_t t = 0; t < at_vals.size(); ++t) at_set.insert(a.index_of(at_vals[t]));
  const auto at_direct = atoms(a);
  r.atom_count = at_direct.size();
  if (at_set != std::set<std::size_t>(at_direct.begin(), at_direct.end())) {
    r.atoms_ok = false;
    r.mismatches.push_back("atoms: " + std::to_string(at_set.size()) + " distinct a_T values vs " +
                           std::to_string(at_direct.size()) + " atoms");
  }

  const auto pairs = s_pairs(n, reading);
  r.s_size = pairs.size();
  std::vector<Term> p_terms;
  for (const auto& p : pairs) p_terms.push_back(p_term(n, p));
  const auto p_vals = values_at(alg, p_terms, gens);
  std::vector<std::size_t> p_idx;
  for (const auto& v : p_vals) p_idx.push_back(a.index_of(v));
  const auto jirr = join_irreducibles(a);
  r.jirr_count = jirr.size();
  const std::set<std::size_t> p_set(p_idx.begin(), p_idx.end()), j_set(jirr.begin(), jirr.end());
  if (p_set != j_set) {
    r.jirr_ok = false;
    r.mismatches.push_back("join-irreducibles: " + std::to_string(p_set.size()) + " distinct p values vs " +
                           std::to_string(j_set.size()) + " join-irreducibles");
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const bool lhs = a.leq(p_idx[i], p_idx[j]);
      const bool rhs = spair_leq(pairs[i], pairs[j]);
      if (lhs != rhs) {
        r.order_iso_ok = false;
        if (r.mismatches.size() < 20)
          r.mismatches.push_back("order: p" + spair_label(pairs[i], n) + (lhs ? " <= " : " !<= ") + "p" +
                                 spair_label(pairs[j], n) + " but pairs " + (rhs ? "are" : "are not") +
                                 " ordered");
      }
    }
  }
  if (pairs.size() != jirr.size()) r.order_iso_ok = false;
  return r;
}

GeneratedCharReport check_generated_characterization(const FinitePDL& a, const std::vector<std::size_t>& gens,
                                                     SReading reading) {
  if (gens.empty()) throw PreconditionError("at least one generator is needed");
  if (!subalgebra_closure(a, gens).all()) throw PreconditionError("the given elements do not generate the algebra");
  GeneratedCharReport r;
  const std::size_t n = gens.size();
  const SetAlgebra alg = set_algebra(a);
  std::vector<ElementSet> g;
  for (auto i : gens) g.push_back(a.element(i));

  std::vector<Term> at_terms;
  for (std::uint32_t t = 0; t < (std::uint32_t{1} << n); ++t) at_terms.push_back(a_term(n, t));
  std::set<std::size_t> at_vals;
  for (const auto& v : values_at(alg, at_terms, g))
    if (v.any()) at_vals.insert(a.index_of(v));
  const auto at_direct = atoms(a);
  if (at_vals != std::set<std::size_t>(at_direct.begin(), at_direct.end())) {
    r.atoms_ok = false;
    r.mismatches.push_back("atoms differ from the nonzero a_T values");
  }

  const auto pairs = s_pairs(n, reading);
  std::vector<Term> p_terms;
  for (const auto& p : pairs) p_terms.push_back(p_term(n, p));
  const auto p_vals = values_at(alg, p_terms, g);
  std::set<std::size_t> jirr_vals;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ElementSet below(a.dual().size());
    for (std::size_t j = 0; j < pairs.size(); ++j)
      if (spair_less(pairs[j], pairs[i])) below |= p_vals[j];
    if (!(below == p_vals[i])) jirr_vals.insert(a.index_of(p_vals[i]));
  }
  const auto jirr = join_irreducibles(a);
  if (jirr_vals != std::set<std::size_t>(jirr.begin(), jirr.end())) {
    r.jirr_ok = false;
    r.mismatches.push_back("join-irreducibles differ from the p values above their predecessors");
  }
  return r;
}

}  // namespace pdl
