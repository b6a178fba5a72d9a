#include "pdl/poset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pdl/errors.hpp"

namespace pdl {

FinitePoset::FinitePoset() : d_(std::make_shared<Data>()) {}

FinitePoset FinitePoset::finish(std::vector<std::string> names, std::vector<ElementSet> up) {
  const std::size_t n = names.size();
  auto d = std::make_shared<Data>();
  d->down.assign(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i) up[i].for_each([&](std::size_t j) { d->down[j].set(i); });
  d->maximal = ElementSet(n);
  d->minimal = ElementSet(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (up[i].count() == 1) d->maximal.set(i);
    if (d->down[i].count() == 1) d->minimal.set(i);
  }
  d->max_above.reserve(n);
  for (std::size_t i = 0; i < n; ++i) d->max_above.push_back(up[i] & d->maximal);
  d->names = std::move(names);
  d->up = std::move(up);
  return FinitePoset(std::move(d));
}

static void check_unique(const std::vector<std::string>& names) {
  std::unordered_set<std::string> seen;
  for (const auto& s : names)
    if (!seen.insert(s).second) throw DuplicateElementError("duplicate element '" + s + "'");
}

FinitePoset FinitePoset::from_relation(std::vector<std::string> elements,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& relation) {
  check_unique(elements);
  const std::size_t n = elements.size();
  std::vector<ElementSet> up(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i) up[i].set(i);
  for (auto [a, b] : relation) {
    if (a >= n || b >= n) throw UnknownElementError("relation index out of range");
    up[a].set(b);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (up[i].test(k)) up[i] |= up[k];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = up[i].first(); j < n; j = up[i].next(j + 1)) {
      if (j != i && up[j].test(i))
        throw CycleError("order is not antisymmetric: '" + elements[i] + "' and '" + elements[j] + "'");
    }
  }
  return finish(std::move(elements), std::move(up));
}

FinitePoset FinitePoset::build(std::vector<std::string> elements,
                               const std::vector<std::pair<std::string, std::string>>& relation) {
  check_unique(elements);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  rel.reserve(relation.size());
  for (const auto& [a, b] : relation) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw UnknownElementError("unknown element '" + a + "'");
    if (ib == index.end()) throw UnknownElementError("unknown element '" + b + "'");
    rel.emplace_back(ia->second, ib->second);
  }
  return from_relation(std::move(elements), rel);
}

FinitePoset FinitePoset::from_up_rows(std::vector<std::string> elements, std::vector<ElementSet> up_rows) {
  if (up_rows.size() != elements.size()) throw PreconditionError("row count differs from element count");
  for (std::size_t i = 0; i < up_rows.size(); ++i) {
    if (up_rows[i].size() != elements.size() || !up_rows[i].test(i))
      throw PreconditionError("malformed order row for '" + elements[i] + "'");
  }
  return finish(std::move(elements), std::move(up_rows));
}

std::optional<std::size_t> FinitePoset::find(std::string_view name) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (d_->names[i] == name) return i;
  return std::nullopt;
}

std::size_t FinitePoset::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw UnknownElementError("unknown element '" + std::string(name) + "'");
  return *i;
}

std::optional<std::size_t> FinitePoset::minimum() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (d_->up[i].all()) return i;
  return std::nullopt;
}

std::optional<std::size_t> FinitePoset::maximum() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (d_->down[i].all()) return i;
  return std::nullopt;
}

ElementSet FinitePoset::up_set(const ElementSet& s) const {
  ElementSet r(size());
  s.for_each([&](std::size_t i) { r |= d_->up[i]; });
  return r;
}

ElementSet FinitePoset::down_set(const ElementSet& s) const {
  ElementSet r(size());
  s.for_each([&](std::size_t i) { r |= d_->down[i]; });
  return r;
}

bool FinitePoset::is_upset(const ElementSet& s) const { return up_set(s) == s; }
bool FinitePoset::is_downset(const ElementSet& s) const { return down_set(s) == s; }

ElementSet FinitePoset::set_of(const std::vector<std::string>& names) const {
  ElementSet r(size());
  for (const auto& n : names) r.set(index_of(n));
  return r;
}

std::vector<std::string> FinitePoset::names_of(const ElementSet& s) const {
  std::vector<std::string> out;
  s.for_each([&](std::size_t i) { out.push_back(d_->names[i]); });
  return out;
}

FinitePoset FinitePoset::induced(const ElementSet& s) const {
  auto idx = s.members();
  const std::size_t m = idx.size();
  std::vector<std::string> names;
  names.reserve(m);
  std::vector<ElementSet> up(m, ElementSet(m));
  for (std::size_t a = 0; a < m; ++a) {
    names.push_back(d_->names[idx[a]]);
    for (std::size_t b = 0; b < m; ++b)
      if (d_->up[idx[a]].test(idx[b])) up[a].set(b);
  }
  return finish(std::move(names), std::move(up));
}

FinitePoset FinitePoset::reversed() const { return finish(d_->names, d_->down); }

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size(); ++a) {
    d_->up[a].for_each([&](std::size_t b) {
      if (b == a) return;
      ElementSet between = d_->up[a] & d_->down[b];
      if (between.count() == 2) out.emplace_back(a, b);
    });
  }
  return out;
}

std::vector<std::size_t> FinitePoset::linear_extension() const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d_->down[a].count() < d_->down[b].count(); });
  return order;
}

bool operator==(const FinitePoset& a, const FinitePoset& b) {
  return a.d_ == b.d_ || (a.d_->names == b.d_->names && a.d_->up == b.d_->up);
}

FinitePoset build_poset(std::vector<std::string> elements,
                        const std::vector<std::pair<std::string, std::string>>& relation) {
  return FinitePoset::build(std::move(elements), relation);
}

static void check_members(const FinitePoset& p, const ElementSet& s) {
  if (s.size() != p.size()) throw UnknownElementError("element set does not belong to this poset");
}

ElementSet up_set(const FinitePoset& p, const ElementSet& s) {
  check_members(p, s);
  return p.up_set(s);
}

ElementSet down_set(const FinitePoset& p, const ElementSet& s) {
  check_members(p, s);
  return p.down_set(s);
}

ElementSet maximal_above(const FinitePoset& p, std::size_t x) {
  if (x >= p.size()) throw UnknownElementError("element index " + std::to_string(x) + " out of range");
  return p.max_above(x);
}

std::optional<std::vector<std::size_t>> find_isomorphism(const FinitePoset& a, const FinitePoset& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return std::nullopt;
  auto sig = [](const FinitePoset& p, std::size_t i) { return std::pair{p.up(i).count(), p.down(i).count()}; };
  std::vector<std::size_t> map(n, n);
  std::vector<bool> used(n, false);
  auto order = a.linear_extension();
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    std::size_t x = order[k];
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || sig(a, x) != sig(b, y)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        std::size_t z = order[j];
        ok = a.leq(x, z) == b.leq(y, map[z]) && a.leq(z, x) == b.leq(map[z], y);
      }
      if (!ok) continue;
      map[x] = y;
      used[y] = true;
      if (self(self, k + 1)) return true;
      used[y] = false;
    }
    map[x] = n;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return map;
}

bool isomorphic(const FinitePoset& a, const FinitePoset& b) { return find_isomorphism(a, b).has_value(); }

PosetMap::PosetMap(FinitePoset source, FinitePoset target, std::vector<std::size_t> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.size()) throw PreconditionError("map is not total on its source");
  for (auto y : images_)
    if (y >= target_.size()) throw UnknownElementError("map image outside the target");
}

ElementSet PosetMap::image(const ElementSet& s) const {
  ElementSet r(target_.size());
  s.for_each([&](std::size_t x) { r.set(images_[x]); });
  return r;
}

ElementSet PosetMap::preimage(const ElementSet& t) const {
  ElementSet r(source_.size());
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (t.test(images_[x])) r.set(x);
  return r;
}

bool PosetMap::is_surjective() const { return image(source_.full_set()).all(); }

bool PosetMap::is_order_preserving() const {
  for (std::size_t x = 0; x < source_.size(); ++x) {
    bool ok = true;
    source_.up(x).for_each([&](std::size_t y) { ok = ok && target_.leq(images_[x], images_[y]); });
    if (!ok) return false;
  }
  return true;
}

PosetMap PosetMap::then(const PosetMap& g) const {
  if (!(g.source() == target_)) throw PreconditionError("composition of maps with mismatched posets");
  std::vector<std::size_t> img(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) img[x] = g(images_[x]);
  return PosetMap(source_, g.target(), std::move(img));
}

std::optional<std::string> weak_p_morphism_violation(const PosetMap& f) {
  const auto& s = f.source();
  const auto& t = f.target();
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (std::size_t y = s.up(x).first(); y < s.size(); y = s.up(x).next(y + 1)) {
      if (!t.leq(f(x), f(y)))
        return "not order preserving at " + s.name(x) + " <= " + s.name(y);
    }
    ElementSet reached = f.image(s.max_above(x));
    ElementSet needed = t.max_above(f(x));
    if (!needed.is_subset_of(reached)) {
      std::size_t y = (needed - reached).first();
      return "no maximal element above " + s.name(x) + " maps to " + t.name(y);
    }
  }
  return std::nullopt;
}

bool is_weak_p_morphism(const PosetMap& f) { return !weak_p_morphism_violation(f).has_value(); }

std::string bit_string(std::uint64_t mask, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1U) s[i] = '1';
  return s;
}

FinitePoset boolean_poset(std::size_t n, const Caps& caps) {
  if (n < 1 || n > caps.boolean_n || n > 20) throw CapExceededError("boolean_poset size", n, caps.boolean_n);
  const std::size_t m = std::size_t{1} << n;
  std::vector<std::string> names;
  std::vector<ElementSet> up(m, ElementSet(m));
  for (std::size_t x = 0; x < m; ++x) {
    names.push_back(bit_string(x, n));
    for (std::size_t y = 0; y < m; ++y)
      if ((x & y) == x) up[x].set(y);
  }
  return FinitePoset::from_up_rows(std::move(names), std::move(up));
}

std::uint64_t p_extension_size(const FinitePoset& x) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t u = x.up(i).count();
    if (u >= 63) return UINT64_MAX;
    std::uint64_t add = (std::uint64_t{1} << u) - 1;
    if (total > UINT64_MAX - add) return UINT64_MAX;
    total += add;
  }
  return total;
}

std::string pair_name(const FinitePoset& x, const PairPoint& p) {
  std::ostringstream os;
  os << '<' << x.name(p.base) << ",{";
  bool first = true;
  p.cloud.for_each([&](std::size_t c) {
    if (!first) os << ',';
    first = false;
    os << x.name(c);
  });
  os << "}>";
  return os.str();
}

std::size_t PairPoset::index_of(std::size_t b, const ElementSet& cloud) const {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i].base == b && pairs[i].cloud == cloud) return i;
  throw UnknownElementError("pair not in P(X)");
}

PairPoset p_extension(const FinitePoset& x, const Caps& caps) {
  const std::uint64_t total = p_extension_size(x);
  if (total > caps.p_extension_size) throw CapExceededError("p_extension size", total, caps.p_extension_size);
  PairPoset out;
  out.base = x;
  for (std::size_t b = 0; b < x.size(); ++b) {
    auto members = x.up(b).members();
    const std::uint64_t n = std::uint64_t{1} << members.size();
    for (std::uint64_t t = 1; t < n; ++t) {
      ElementSet cloud(x.size());
      for (std::uint64_t r = t; r; r &= r - 1) cloud.set(members[static_cast<std::size_t>(std::countr_zero(r))]);
      out.pairs.push_back({b, std::move(cloud)});
    }
  }
  const std::size_t m = out.pairs.size();
  std::vector<std::string> names;
  names.reserve(m);
  for (const auto& p : out.pairs) names.push_back(pair_name(x, p));
  std::vector<ElementSet> up(m, ElementSet(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto& a = out.pairs[i];
      const auto& c = out.pairs[j];
      if (x.leq(a.base, c.base) && c.cloud.is_subset_of(a.cloud)) up[i].set(j);
    }
  }
  out.poset = FinitePoset::from_up_rows(std::move(names), std::move(up));
  return out;
}

MaxClosedEnumerator::MaxClosedEnumerator(FinitePoset p, const Caps& caps) : p_(std::move(p)) {
  if (p_.size() > caps.enumeration_width)
    throw CapExceededError("max-closed subset enumeration width", p_.size(), caps.enumeration_width);
  for (std::size_t i = 0; i < p_.size(); ++i) (p_.maximal().test(i) ? maxima_ : non_maxima_).push_back(i);
}

void MaxClosedEnumerator::seed_parts(std::size_t seed, ElementSet& base, std::vector<std::size_t>& free) const {
  base = ElementSet(p_.size());
  for (std::size_t k = 0; k < maxima_.size(); ++k)
    if ((seed >> k) & 1U) base.set(maxima_[k]);
  free.clear();
  for (auto s : non_maxima_)
    if (p_.max_above(s).is_subset_of(base)) free.push_back(s);
}

std::uint64_t MaxClosedEnumerator::total_count() const {
  std::uint64_t total = 0;
  ElementSet base;
  std::vector<std::size_t> free;
  for (std::size_t seed = 0; seed < seed_count(); ++seed) {
    seed_parts(seed, base, free);
    total += std::uint64_t{1} << free.size();
  }
  return total;
}

std::vector<ElementSet> max_closed_subsets(const FinitePoset& p, const Caps& caps) {
  MaxClosedEnumerator e(p, caps);
  std::vector<ElementSet> out;
  e.for_each(0, e.seed_count(), [&](const ElementSet& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

std::optional<PosetMap> find_surjective_wpm(const FinitePoset& source, const FinitePoset& target, const Caps& caps) {
  const std::size_t ns = source.size();
  const std::size_t nt = target.size();
  if (ns == 0) {
    if (nt == 0) return PosetMap(source, target, {});
    return std::nullopt;
  }
  if (nt == 0 || nt > ns) return std::nullopt;
  // The image of a least element is least in any order-preserving image.
  if (source.minimum() && !target.minimum()) return std::nullopt;

  // Top-down: everything above x is assigned before x.
  auto order = source.linear_extension();
  std::reverse(order.begin(), order.end());
  std::vector<std::size_t> img(ns, nt);
  std::vector<std::size_t> hits(nt, 0);
  std::size_t covered = 0;
  std::uint64_t nodes = 0;

  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == ns) return covered == nt;
    if (++nodes > caps.search_budget) throw BudgetExceededError("surjective weak p-morphism search", caps.search_budget);
    if (ns - k < nt - covered) return false;
    const std::size_t x = order[k];
    ElementSet allowed = target.full_set();
    ElementSet reached(nt);
    const bool is_max = source.maximal().test(x);
    if (is_max) {
      allowed = target.maximal();
    } else {
      source.up(x).for_each([&](std::size_t y) {
        if (y != x) allowed &= target.down(img[y]);
      });
      source.max_above(x).for_each([&](std::size_t y) { reached.set(img[y]); });
    }
    for (std::size_t c = allowed.first(); c < nt; c = allowed.next(c + 1)) {
      if (!is_max && !target.max_above(c).is_subset_of(reached)) continue;
      img[x] = c;
      if (hits[c]++ == 0) ++covered;
      if (self(self, k + 1)) return true;
      if (--hits[c] == 0) --covered;
    }
    img[x] = nt;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  PosetMap f(source, target, img);
  if (!is_weak_p_morphism(f) || !f.is_surjective())
    throw Error("internal: surjection search produced an invalid map");
  return f;
}

}  // namespace pdl
