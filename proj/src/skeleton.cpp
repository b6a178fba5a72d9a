#include "pdl/skeleton.hpp"

#include <algorithm>

#include "pdl/errors.hpp"

namespace pdl {

std::size_t SkeletonWitness::at(std::size_t x, const ElementSet& y) const {
  auto it = s.find({x, y});
  if (it == s.end()) throw PreconditionError("skeleton witness has no entry for this key");
  return it->second;
}

std::vector<ElementSet> nonempty_subsets(const ElementSet& s) {
  auto members = s.members();
  std::vector<ElementSet> out;
  const std::uint64_t n = std::uint64_t{1} << members.size();
  out.reserve(static_cast<std::size_t>(n - 1));
  for (std::uint64_t t = 1; t < n; ++t) {
    ElementSet y(s.size());
    for (std::uint64_t r = t; r; r &= r - 1) y.set(members[static_cast<std::size_t>(std::countr_zero(r))]);
    out.push_back(std::move(y));
  }
  return out;
}

namespace {

// s(bottom, Y) is forced: the least element whose maximal elements lie in Y.
std::optional<std::size_t> forced_bottom_value(const FinitePoset& x, const ElementSet& y) {
  ElementSet lower(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.max_above(i).is_subset_of(y)) lower.set(i);
  for (std::size_t c = lower.first(); c < x.size(); c = lower.next(c + 1)) {
    if (lower.is_subset_of(x.up(c))) {
      if (x.max_above(c) == y) return c;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

struct ElementSearch {
  std::vector<ElementSet> ys;                      // decreasing size
  std::vector<std::vector<std::size_t>> supersets; // earlier indices with Y_k inside
  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> chosen;
};

ElementSearch prepare(const FinitePoset& x, std::size_t e) {
  ElementSearch es;
  es.ys = nonempty_subsets(x.max_above(e));
  std::stable_sort(es.ys.begin(), es.ys.end(),
                   [](const ElementSet& a, const ElementSet& b) { return a.count() > b.count(); });
  const std::size_t k = es.ys.size();
  es.supersets.resize(k);
  es.candidates.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (es.ys[i].is_subset_of(es.ys[j])) es.supersets[i].push_back(j);
    x.up(e).for_each([&](std::size_t c) {
      if (x.max_above(c) == es.ys[i]) es.candidates[i].push_back(c);
    });
  }
  es.chosen.assign(k, x.size());
  return es;
}

bool consistent(const FinitePoset& x, const ElementSearch& es, std::size_t i, std::size_t c) {
  for (auto j : es.supersets[i])
    if (!x.leq(es.chosen[j], c)) return false;
  return true;
}

bool greedy(const FinitePoset& x, ElementSearch es) {
  for (std::size_t i = 0; i < es.ys.size(); ++i) {
    bool found = false;
    for (auto c : es.candidates[i]) {
      if (consistent(x, es, i, c)) {
        es.chosen[i] = c;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool backtrack(const FinitePoset& x, ElementSearch& es, std::size_t i, std::uint64_t& nodes) {
  if (i == es.ys.size()) return true;
  for (auto c : es.candidates[i]) {
    ++nodes;
    if (!consistent(x, es, i, c)) continue;
    es.chosen[i] = c;
    if (backtrack(x, es, i + 1, nodes)) return true;
  }
  es.chosen[i] = x.size();
  return false;
}

}  // namespace

std::optional<SkeletonWitness> check_free_skeleton(const FinitePoset& x, SkeletonStats* stats) {
  if (x.empty()) return std::nullopt;
  auto bottom = x.minimum();
  if (!bottom) return std::nullopt;
  SkeletonWitness w;
  w.poset = x;
  w.bottom = *bottom;
  for (const auto& y : nonempty_subsets(x.maximal())) {
    auto v = forced_bottom_value(x, y);
    if (!v) return std::nullopt;
    w.s.emplace(SkeletonWitness::Key{*bottom, y}, *v);
  }
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (e == *bottom) continue;
    ElementSearch es = prepare(x, e);
    std::uint64_t nodes = 0;
    const bool greedy_ok = stats ? greedy(x, es) : false;
    const bool ok = backtrack(x, es, 0, nodes);
    if (stats) {
      ++stats->elements;
      stats->nodes += nodes;
      if (greedy_ok) ++stats->greedy_succeeded;
      else if (ok) ++stats->greedy_failed_backtrack_succeeded;
      else ++stats->no_family;
    }
    if (!ok) return std::nullopt;
    for (std::size_t i = 0; i < es.ys.size(); ++i) w.s.emplace(SkeletonWitness::Key{e, es.ys[i]}, es.chosen[i]);
  }
  if (auto v = witness_violation(w)) throw Error("internal: skeleton search produced a bad witness: " + *v);
  return w;
}

bool has_free_skeleton(const FinitePoset& x) { return check_free_skeleton(x).has_value(); }

std::optional<std::string> witness_violation(const SkeletonWitness& w) {
  const auto& x = w.poset;
  const std::size_t n = x.size();
  if (n == 0) return "empty poset";
  if (w.bottom >= n || !x.up(w.bottom).all()) return "bottom is not the minimum";
  std::size_t expected = 0;
  for (std::size_t e = 0; e < n; ++e) {
    const auto ys = nonempty_subsets(x.max_above(e));
    expected += ys.size();
    for (const auto& y : ys) {
      auto it = w.s.find({e, y});
      if (it == w.s.end()) return "missing key at " + x.name(e);
      const std::size_t v = it->second;
      if (v >= n) return "value out of range at " + x.name(e);
      if (!x.leq(e, v)) return "(i) fails: value not above " + x.name(e);
      if (!(x.max_above(v) == y)) return "(i) fails: max above value differs from Y at " + x.name(e);
    }
    for (const auto& y : ys) {
      for (const auto& z : ys) {
        if (y.is_subset_of(z) && !x.leq(w.s.at({e, z}), w.s.at({e, y})))
          return "(ii) fails at " + x.name(e);
      }
    }
  }
  if (w.s.size() != expected) return "key set has extra entries";
  for (std::size_t e = 0; e < n; ++e) {
    for (const auto& y : nonempty_subsets(x.maximal())) {
      if (x.max_above(e).is_subset_of(y) && !x.leq(w.s.at({w.bottom, y}), e))
        return "(iii) fails at " + x.name(e);
    }
  }
  return std::nullopt;
}

bool verify_witness(const SkeletonWitness& w) { return !witness_violation(w).has_value(); }

std::optional<SkeletonWitness> brute_force_skeleton(const FinitePoset& x, const Caps& caps) {
  if (x.empty()) return std::nullopt;
  auto bottom = x.minimum();
  if (!bottom) return std::nullopt;
  const std::size_t n = x.size();

  // One global search over all keys in a fixed order; every pair of keys
  // related by (ii) or (iii) is checked as soon as both are assigned.
  std::vector<SkeletonWitness::Key> keys;
  std::vector<std::vector<std::size_t>> cands;
  for (std::size_t e = 0; e < n; ++e) {
    for (const auto& y : nonempty_subsets(x.max_above(e))) {
      std::vector<std::size_t> c;
      x.up(e).for_each([&](std::size_t v) {
        if (x.max_above(v) == y) c.push_back(v);
      });
      keys.emplace_back(e, y);
      cands.push_back(std::move(c));
    }
  }
  const std::size_t k = keys.size();
  std::vector<std::size_t> val(k, n);

  auto pair_ok = [&](std::size_t a, std::size_t b) {
    const auto& [ea, ya] = keys[a];
    const auto& [eb, yb] = keys[b];
    if (ea == eb) {
      if (ya.is_subset_of(yb) && !x.leq(val[b], val[a])) return false;
      if (yb.is_subset_of(ya) && !x.leq(val[a], val[b])) return false;
    }
    return true;
  };
  auto bottom_ok = [&](std::size_t a) {
    const auto& [ea, ya] = keys[a];
    if (ea != *bottom) return true;
    for (std::size_t e = 0; e < n; ++e)
      if (x.max_above(e).is_subset_of(ya) && !x.leq(val[a], e)) return false;
    return true;
  };

  std::uint64_t nodes = 0;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == k) return true;
    for (auto v : cands[i]) {
      if (++nodes > caps.family_budget) throw BudgetExceededError("skeleton family enumeration", caps.family_budget);
      val[i] = v;
      bool ok = bottom_ok(i);
      for (std::size_t j = 0; j < i && ok; ++j) ok = pair_ok(j, i);
      if (ok && self(self, i + 1)) return true;
    }
    val[i] = n;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  SkeletonWitness w;
  w.poset = x;
  w.bottom = *bottom;
  for (std::size_t i = 0; i < k; ++i) w.s.emplace(keys[i], val[i]);
  if (!verify_witness(w)) throw Error("internal: brute-force skeleton produced a bad witness");
  return w;
}

SkeletonWitness restrict_witness(const SkeletonWitness& w, const ElementSet& y) {
  if (auto v = witness_violation(w)) throw PreconditionError("witness does not verify: " + *v);
  const auto& x = w.poset;
  if (y.size() != x.size() || y.none() || !y.is_subset_of(x.maximal()))
    throw PreconditionError("Y must be a nonempty set of maximal elements");
  const std::size_t s = w.at(w.bottom, y);
  const ElementSet sub = x.up(s);
  const auto members = sub.members();
  std::vector<std::size_t> local(x.size(), x.size());
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = i;
  auto to_local = [&](const ElementSet& set) {
    ElementSet r(members.size());
    set.for_each([&](std::size_t i) { r.set(local[i]); });
    return r;
  };

  SkeletonWitness out;
  out.poset = x.induced(sub);
  out.bottom = local[s];
  for (auto e : members) {
    for (const auto& z : nonempty_subsets(x.max_above(e))) {
      const std::size_t v = e == s ? w.at(w.bottom, z) : w.at(e, z);
      out.s.emplace(SkeletonWitness::Key{local[e], to_local(z)}, local[v]);
    }
  }
  if (auto v = witness_violation(out)) throw Error("internal: restricted witness fails: " + *v);
  return out;
}

}  // namespace pdl
