#include "pdl/decide.hpp"

#include <mutex>
#include <thread>

#include "pdl/algebra.hpp"
#include "pdl/errors.hpp"
#include "pdl/eval.hpp"
#include "pdl/free.hpp"
#include "pdl/skeleton.hpp"

namespace pdl {

namespace {

PairPoset ambient(std::size_t k, const Caps& caps) {
  if (k == 0) return p_extension(FinitePoset::build({"*"}, {}), caps);
  return p_extension(boolean_poset(k, caps), caps);
}

bool has_minimum_within(const FinitePoset& p, const ElementSet& s) {
  for (std::size_t c = s.first(); c < p.size(); c = s.next(c + 1))
    if (s.is_subset_of(p.up(c))) return true;
  return false;
}

std::shared_ptr<const QuotientTable> build_table(std::size_t k, const Caps& caps) {
  auto t = std::make_shared<QuotientTable>();
  t->k = k;
  t->pext = ambient(k, caps);
  for (std::size_t i = 1; i <= k; ++i) t->generator_sets.push_back(generator_upset(t->pext, i));
  const FinitePoset& p = t->pext.poset;
  MaxClosedEnumerator en(p, caps);
  t->max_closed_total = en.total_count();

  const std::size_t seeds = en.seed_count();
  std::vector<std::uint64_t> offset(seeds + 1, 0);
  for (std::size_t s = 0; s < seeds; ++s) {
    ElementSet base(p.size());
    std::vector<std::size_t> free;
    en.seed_parts(s, base, free);
    offset[s + 1] = offset[s] + (std::uint64_t{1} << free.size());
  }

  struct Part {
    std::vector<ElementSet> sets;
    std::vector<std::size_t> index;
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(caps.threads, seeds));
  std::vector<Part> parts(workers);
  auto work = [&](std::size_t w) {
    const std::size_t begin = seeds * w / workers, end = seeds * (w + 1) / workers;
    std::uint64_t pos = offset[begin];
    en.for_each(begin, end, [&](const ElementSet& s) {
      const std::uint64_t here = pos++;
      if (s.none() || !has_minimum_within(p, s)) return true;
      if (has_free_skeleton(p.induced(s))) {
        parts[w].sets.push_back(s);
        parts[w].index.push_back(static_cast<std::size_t>(here));
      }
      return true;
    });
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> ts;
    for (std::size_t w = 0; w < workers; ++w) ts.emplace_back(work, w);
    for (auto& th : ts) th.join();
  }
  for (auto& part : parts) {
    for (std::size_t i = 0; i < part.sets.size(); ++i) {
      t->exact.push_back(std::move(part.sets[i]));
      t->exact_index.push_back(part.index[i]);
    }
  }
  return t;
}

std::vector<ElementSet> restricted_generators(const QuotientTable& t, const ElementSet& s) {
  std::vector<ElementSet> g;
  for (const auto& gi : t.generator_sets) g.push_back(gi & s);
  return g;
}

// Ambient set inside s -> set over the induced poset.
ElementSet to_local(const ElementSet& s, const ElementSet& v) {
  ElementSet out(s.count());
  std::size_t i = 0;
  s.for_each([&](std::size_t e) {
    if (v.test(e)) out.set(i);
    ++i;
  });
  return out;
}

Verdict fallback(const UniversalSentence& s, const Caps& caps) {
  Verdict v;
  v.kind = VerdictKind::Unknown;
  v.reason = std::to_string(s.variables.size()) + " variables exceed the exhaustive limit of " +
             std::to_string(caps.decide_k);
  for (std::size_t n = 1; n <= caps.fallback_n; ++n) {
    FallbackResult r;
    r.n = n;
    try {
      const FreeAlgebra f = free_pdl(n, caps);
      auto ce = find_counterexample(f.algebra, s, caps);
      if (!ce) {
        r.status = FallbackResult::Status::Holds;
        r.detail = "no counterexample in F(" + std::to_string(n) + ")";
        v.fallbacks.push_back(r);
        continue;
      }
      std::vector<std::size_t> vals;
      for (const auto& name : s.variables) vals.push_back(ce->at(name));
      const Subalgebra sub = generated_subalgebra(f.algebra, vals);
      InvalidWitness w;
      w.source = "fallback";
      w.k = n;
      w.dual = sub.algebra.dual();
      for (std::size_t i = 0; i < vals.size(); ++i) {
        for (std::size_t e = 0; e < sub.inclusion.size(); ++e) {
          if (sub.inclusion[e] == vals[i]) {
            w.assignment.emplace(s.variables[i], sub.algebra.element(e));
            break;
          }
        }
      }
      r.status = FallbackResult::Status::Fails;
      r.detail = "counterexample in F(" + std::to_string(n) + ")";
      v.fallbacks.push_back(r);
      v.kind = VerdictKind::Invalid;
      v.witness = std::move(w);
      v.reason.clear();
      return v;
    } catch (const BudgetExceededError& e) {
      r.status = FallbackResult::Status::Truncated;
      r.detail = e.what();
    } catch (const CapExceededError& e) {
      r.status = FallbackResult::Status::Truncated;
      r.detail = e.what();
    }
    v.fallbacks.push_back(r);
  }
  return v;
}

}  // namespace

std::shared_ptr<const QuotientTable> quotient_table(std::size_t k, const Caps& caps) {
  if (k > caps.decide_k) throw CapExceededError("quotient enumeration generators", k, caps.decide_k);
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const QuotientTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  auto t = build_table(k, caps);
  cache.emplace(k, t);
  return t;
}

std::vector<ExactQuotient> enumerate_exact_quotients(std::size_t k, const Caps& caps) {
  auto t = quotient_table(k, caps);
  std::vector<ExactQuotient> out;
  out.reserve(t->exact.size());
  for (std::size_t i = 0; i < t->exact.size(); ++i)
    out.push_back({t->exact_index[i], t->exact[i], restricted_generators(*t, t->exact[i])});
  return out;
}

Verdict decide(const UniversalSentence& s, const Caps& caps) {
  const std::size_t k = s.variables.size();
  if (k > caps.decide_k) return fallback(s, caps);
  auto t = quotient_table(k, caps);
  const CompiledFormula c(s.matrix, s.variables);
  Verdict v;
  v.kind = VerdictKind::Valid;
  for (std::size_t i = 0; i < t->exact.size(); ++i) {
    const ElementSet& sub = t->exact[i];
    const auto gens = restricted_generators(*t, sub);
    ++v.checked_quotients;
    if (c.eval(SetAlgebra{&t->pext.poset, sub}, gens)) continue;
    InvalidWitness w;
    w.source = "quotient";
    w.k = k;
    w.subset = sub;
    w.quotient_index = t->exact_index[i];
    w.dual = t->pext.poset.induced(sub);
    for (std::size_t j = 0; j < k; ++j) w.assignment.emplace(s.variables[j], to_local(sub, gens[j]));
    v.kind = VerdictKind::Invalid;
    v.witness = std::move(w);
    return v;
  }
  return v;
}

namespace {

bool verify_invalid(const UniversalSentence& s, const InvalidWitness& w, const Caps& caps) {
  if (!has_free_skeleton(w.dual)) return false;
  const FinitePDL b = FinitePDL::from_dual(w.dual, caps);
  Assignment asg;
  std::vector<std::size_t> vals;
  for (const auto& name : s.variables) {
    auto it = w.assignment.find(name);
    if (it == w.assignment.end() || it->second.size() != w.dual.size()) return false;
    auto idx = b.find(it->second);
    if (!idx) return false;
    asg.emplace(name, *idx);
    vals.push_back(*idx);
  }
  if (!subalgebra_closure(b, vals).all()) return false;
  if (eval_formula(b, s.matrix, asg)) return false;
  if (w.subset) {
    auto t = quotient_table(w.k, caps);
    const FinitePoset& p = t->pext.poset;
    const ElementSet& sub = *w.subset;
    if (sub.size() != p.size() || sub.none()) return false;
    for (std::size_t e = sub.first(); e < p.size(); e = sub.next(e + 1))
      if (!p.max_above(e).is_subset_of(sub)) return false;
    if (!(p.induced(sub) == w.dual)) return false;
    for (std::size_t j = 0; j < s.variables.size(); ++j)
      if (!(to_local(sub, t->generator_sets[j] & sub) == w.assignment.at(s.variables[j]))) return false;
  }
  return true;
}

}  // namespace

bool verify_verdict(const UniversalSentence& s, const Verdict& v, const Caps& caps) {
  switch (v.kind) {
    case VerdictKind::Invalid:
      return v.witness && verify_invalid(s, *v.witness, caps);
    case VerdictKind::Valid: {
      if (s.variables.size() > caps.decide_k) return false;
      auto t = quotient_table(s.variables.size(), caps);
      if (v.checked_quotients != t->exact.size()) return false;
      // Re-check a spread of quotients through independently built algebras.
      const std::size_t stride = std::max<std::size_t>(1, t->exact.size() / 500);
      for (std::size_t i = 0; i < t->exact.size(); i += stride) {
        const ElementSet& sub = t->exact[i];
        const FinitePoset dual = t->pext.poset.induced(sub);
        if (!has_free_skeleton(dual)) return false;
        const FinitePDL b = FinitePDL::from_dual(dual, caps);
        Assignment asg;
        for (std::size_t j = 0; j < s.variables.size(); ++j)
          asg.emplace(s.variables[j], b.index_of(to_local(sub, t->generator_sets[j] & sub)));
        if (!eval_formula(b, s.matrix, asg)) return false;
      }
      return true;
    }
    case VerdictKind::Unknown: {
      if (s.variables.size() <= caps.decide_k) return false;
      const Verdict again = fallback(s, caps);
      if (again.kind != VerdictKind::Unknown || again.fallbacks.size() != v.fallbacks.size()) return false;
      for (std::size_t i = 0; i < again.fallbacks.size(); ++i)
        if (again.fallbacks[i].status != v.fallbacks[i].status || again.fallbacks[i].n != v.fallbacks[i].n)
          return false;
      return true;
    }
  }
  return false;
}

std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Valid: return "valid";
    case VerdictKind::Invalid: return "invalid";
    case VerdictKind::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace pdl
