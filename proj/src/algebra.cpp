#include "pdl/algebra.hpp"

#include <algorithm>
#include <deque>

#include "pdl/errors.hpp"
#include "pdl/skeleton.hpp"

namespace pdl {

std::vector<ElementSet> enumerate_upsets(const FinitePoset& p, std::size_t cap) {
  auto order = p.linear_extension();
  std::reverse(order.begin(), order.end());
  std::vector<ElementSet> out;
  ElementSet cur(p.size());
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == order.size()) {
      if (out.size() >= cap) throw CapExceededError("upset count", out.size() + 1, cap);
      out.push_back(cur);
      return;
    }
    const std::size_t x = order[k];
    self(self, k + 1);
    ElementSet strict = p.up(x);
    strict.reset(x);
    if (strict.is_subset_of(cur)) {
      cur.set(x);
      self(self, k + 1);
      cur.reset(x);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

FinitePDL::FinitePDL() {
  auto d = std::make_shared<Data>();
  d->elements.push_back(ElementSet(0));
  d->index.emplace(d->elements.front(), 0);
  d_ = std::move(d);
}

FinitePDL FinitePDL::from_dual(FinitePoset dual, const Caps& caps) {
  auto d = std::make_shared<Data>();
  d->elements = enumerate_upsets(dual, caps.upset_count);
  d->index.reserve(d->elements.size());
  for (std::size_t i = 0; i < d->elements.size(); ++i) d->index.emplace(d->elements[i], i);
  d->dual = std::move(dual);
  FinitePDL a;
  a.d_ = std::move(d);
  if (a.dual().size() <= 10) {
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < a.size(); ++y) {
        const bool lhs = a.element(x).is_subset_of(a.neg_set(a.element(y)));
        const bool rhs = !a.element(x).intersects(a.element(y));
        if (lhs != rhs) throw Error("internal: pseudocomplement adjunction fails");
      }
    }
  }
  return a;
}

std::optional<std::size_t> FinitePDL::find(const ElementSet& upset) const {
  auto it = d_->index.find(upset);
  if (it == d_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FinitePDL::index_of(const ElementSet& upset) const {
  auto i = find(upset);
  if (!i) throw UnknownElementError("set is not an element of this algebra");
  return *i;
}

std::size_t FinitePDL::index_of_names(const std::vector<std::string>& names) const {
  return index_of(dual().set_of(names));
}

std::string FinitePDL::element_label(std::size_t i) const {
  std::string s = "{";
  bool first = true;
  for (const auto& n : element_names(i)) {
    if (!first) s += ",";
    first = false;
    s += n;
  }
  return s + "}";
}

FinitePDL FinitePDL::with_generators(std::vector<std::size_t> gens) const {
  for (auto g : gens)
    if (g >= size()) throw UnknownElementError("generator index out of range");
  auto d = std::make_shared<Data>(*d_);
  d->generators = std::move(gens);
  FinitePDL a;
  a.d_ = std::move(d);
  return a;
}

FinitePDL from_dual(const FinitePoset& x, const Caps& caps) { return FinitePDL::from_dual(x, caps); }

namespace {

struct LatticeTables {
  FinitePoset order;
  std::size_t bottom = 0;
  std::size_t top = 0;
  std::vector<std::vector<std::size_t>> meet;
  std::vector<std::vector<std::size_t>> join;
};

LatticeTables lattice_tables(const ExplicitLattice& l) {
  LatticeTables t;
  try {
    t.order = FinitePoset::build(l.elements, l.leq);
  } catch (const CycleError& e) {
    throw NotALatticeError(std::string("order relation is not antisymmetric: ") + e.what());
  }
  const std::size_t n = t.order.size();
  if (n == 0) throw NotALatticeError("empty lattice");
  auto bot = t.order.minimum();
  auto top = t.order.maximum();
  if (!bot || !top) throw NotALatticeError("lattice is not bounded");
  t.bottom = *bot;
  t.top = *top;
  t.meet.assign(n, std::vector<std::size_t>(n));
  t.join.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      ElementSet lower = t.order.down(a) & t.order.down(b);
      ElementSet upper = t.order.up(a) & t.order.up(b);
      std::size_t m = n, j = n;
      lower.for_each([&](std::size_t c) {
        if (m == n && lower.is_subset_of(t.order.down(c))) m = c;
      });
      upper.for_each([&](std::size_t c) {
        if (j == n && upper.is_subset_of(t.order.up(c))) j = c;
      });
      if (m == n) throw NotALatticeError("no meet of '" + l.elements[a] + "' and '" + l.elements[b] + "'");
      if (j == n) throw NotALatticeError("no join of '" + l.elements[a] + "' and '" + l.elements[b] + "'");
      t.meet[a][b] = m;
      t.join[a][b] = j;
    }
  }
  return t;
}

// Join-irreducibles of the lattice order: nonzero with exactly one lower cover.
std::vector<std::size_t> lattice_jirr(const FinitePoset& order) {
  std::vector<std::size_t> out;
  std::vector<std::size_t> lower_covers(order.size(), 0);
  for (auto [a, b] : order.covers()) ++lower_covers[b];
  for (std::size_t i = 0; i < order.size(); ++i)
    if (lower_covers[i] == 1) out.push_back(i);
  return out;
}

FinitePoset jirr_dual(const FinitePoset& order, const std::vector<std::size_t>& jirr) {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (auto j : jirr) names.push_back(order.name(j));
  for (std::size_t a = 0; a < jirr.size(); ++a)
    for (std::size_t b = 0; b < jirr.size(); ++b)
      if (order.leq(jirr[b], jirr[a])) rel.emplace_back(a, b);
  return FinitePoset::from_relation(std::move(names), rel);
}

struct RoundTrip {
  FinitePoset dual;
  FinitePDL algebra;
  std::vector<std::size_t> embed;
};

RoundTrip round_trip(const ExplicitLattice& l, const LatticeTables& t) {
  const auto jirr = lattice_jirr(t.order);
  RoundTrip r;
  r.dual = jirr_dual(t.order, jirr);
  r.algebra = FinitePDL::from_dual(r.dual);
  const std::size_t n = t.order.size();
  if (r.algebra.size() != n)
    throw NotDistributiveError("lattice has " + std::to_string(n) + " elements but its join-irreducibles give " +
                               std::to_string(r.algebra.size()));
  r.embed.resize(n);
  std::vector<bool> hit(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    ElementSet u(jirr.size());
    for (std::size_t k = 0; k < jirr.size(); ++k)
      if (t.order.leq(jirr[k], a)) u.set(k);
    auto idx = r.algebra.find(u);
    if (!idx || hit[*idx]) throw NotDistributiveError("element '" + l.elements[a] + "' is not the join of the join-irreducibles below it");
    hit[*idx] = true;
    r.embed[a] = *idx;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (t.order.leq(a, b) != r.algebra.leq(r.embed[a], r.embed[b]) ||
          r.embed[t.meet[a][b]] != r.algebra.meet(r.embed[a], r.embed[b]) ||
          r.embed[t.join[a][b]] != r.algebra.join(r.embed[a], r.embed[b]))
        throw NotDistributiveError("operations of '" + l.elements[a] + "' and '" + l.elements[b] +
                                   "' differ from the upset algebra");
    }
  }
  return r;
}

}  // namespace

FinitePoset dual_of(const ExplicitLattice& l) {
  auto t = lattice_tables(l);
  return round_trip(l, t).dual;
}

ValidatedLattice validate_explicit(const ExplicitLattice& l) {
  auto t = lattice_tables(l);
  auto r = round_trip(l, t);
  const std::size_t n = t.order.size();
  for (std::size_t a = 0; a < n; ++a) {
    ElementSet disjoint(n);
    for (std::size_t b = 0; b < n; ++b)
      if (t.meet[a][b] == t.bottom) disjoint.set(b);
    std::size_t best = n;
    disjoint.for_each([&](std::size_t c) {
      if (best == n && disjoint.is_subset_of(t.order.down(c))) best = c;
    });
    if (best == n) throw PseudocomplementError("no pseudocomplement of '" + l.elements[a] + "'");
    if (r.embed[best] != r.algebra.neg(r.embed[a]))
      throw PseudocomplementError("pseudocomplement of '" + l.elements[a] + "' differs from the upset algebra");
  }
  return ValidatedLattice{t.order, r.algebra, r.embed};
}

std::vector<std::size_t> join_irreducibles(const FinitePDL& a) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < a.dual().size(); ++s) out.push_back(a.index_of(a.dual().up(s)));
  return out;
}

std::vector<std::size_t> atoms(const FinitePDL& a) {
  std::vector<std::size_t> out;
  a.dual().maximal().for_each([&](std::size_t s) {
    ElementSet one(a.dual().size());
    one.set(s);
    out.push_back(a.index_of(one));
  });
  return out;
}

std::size_t pseudocomplement(const FinitePDL& a, std::size_t x) {
  if (x >= a.size()) throw UnknownElementError("element index out of range");
  return a.neg(x);
}

ElementSet subalgebra_closure(const FinitePDL& a, const std::vector<std::size_t>& gens) {
  ElementSet in(a.size());
  std::vector<std::size_t> members;
  std::deque<std::size_t> queue;
  auto add = [&](std::size_t e) {
    if (!in.test(e)) {
      in.set(e);
      queue.push_back(e);
    }
  };
  add(a.zero());
  add(a.one());
  for (auto g : gens) {
    if (g >= a.size()) throw UnknownElementError("generator index out of range");
    add(g);
  }
  while (!queue.empty()) {
    const std::size_t e = queue.front();
    queue.pop_front();
    members.push_back(e);
    add(a.neg(e));
    for (std::size_t k = 0; k < members.size(); ++k) {
      add(a.meet(e, members[k]));
      add(a.join(e, members[k]));
    }
  }
  return in;
}

FinitePoset subalgebra_dual(const FinitePDL& a, const ElementSet& members) {
  const auto idx = members.members();
  std::vector<std::size_t> jirr;
  for (auto b : idx) {
    if (b == a.zero()) continue;
    ElementSet below(a.dual().size());
    for (auto c : idx)
      if (c != b && a.leq(c, b)) below |= a.element(c);
    if (!(below == a.element(b))) jirr.push_back(b);
  }
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (auto j : jirr) names.push_back(a.element_label(j));
  for (std::size_t p = 0; p < jirr.size(); ++p)
    for (std::size_t q = 0; q < jirr.size(); ++q)
      if (a.leq(jirr[q], jirr[p])) rel.emplace_back(p, q);
  return FinitePoset::from_relation(std::move(names), rel);
}

Subalgebra generated_subalgebra(const FinitePDL& a, const std::vector<std::size_t>& gens) {
  Subalgebra out;
  out.members = subalgebra_closure(a, gens);
  const auto idx = out.members.members();
  std::vector<std::size_t> jirr;
  auto dual = subalgebra_dual(a, out.members);
  // Recover the ambient element behind each dual point from its label.
  std::vector<std::size_t> point_elem;
  for (const auto& name : dual.elements()) {
    for (auto b : idx) {
      if (a.element_label(b) == name) {
        point_elem.push_back(b);
        break;
      }
    }
  }
  out.algebra = FinitePDL::from_dual(dual);
  out.inclusion.resize(out.algebra.size());
  for (std::size_t v = 0; v < out.algebra.size(); ++v) {
    ElementSet u(a.dual().size());
    out.algebra.element(v).for_each([&](std::size_t p) { u |= a.element(point_elem[p]); });
    out.inclusion[v] = a.index_of(u);
    if (!out.members.test(out.inclusion[v])) throw Error("internal: subalgebra inclusion leaves the closure");
  }
  if (out.inclusion.size() != idx.size()) throw Error("internal: subalgebra size mismatch");
  return out;
}

bool is_exact(const FinitePDL& a) { return has_free_skeleton(a.dual()); }

SigmaReport sigma_check(const FinitePDL& a, std::size_t generator_budget) {
  SigmaReport report;
  std::vector<ElementSet> level{subalgebra_closure(a, {})};
  std::unordered_map<ElementSet, bool, ElementSetHash> seen;
  seen.emplace(level.front(), true);
  auto check = [&](const ElementSet& members) {
    ++report.subalgebras_checked;
    if (!has_free_skeleton(subalgebra_dual(a, members))) {
      report.holds = false;
      report.failing = members;
      return false;
    }
    return true;
  };
  if (!check(level.front())) return report;
  for (std::size_t g = 0; g < generator_budget && !level.empty(); ++g) {
    std::vector<ElementSet> next;
    for (const auto& s : level) {
      for (std::size_t e = 0; e < a.size(); ++e) {
        if (s.test(e)) continue;
        auto gens = s.members();
        gens.push_back(e);
        ElementSet t = subalgebra_closure(a, gens);
        if (!seen.emplace(t, true).second) continue;
        if (!check(t)) return report;
        next.push_back(std::move(t));
      }
    }
    level = std::move(next);
  }
  return report;
}

bool satisfies_sigma(const FinitePDL& a, std::size_t generator_budget) {
  return sigma_check(a, generator_budget).holds;
}

bool is_embedding(const FinitePDL& a, const FinitePDL& b, const std::vector<std::size_t>& h) {
  if (h.size() != a.size()) return false;
  std::vector<bool> hit(b.size(), false);
  for (auto y : h) {
    if (y >= b.size() || hit[y]) return false;
    hit[y] = true;
  }
  if (h[a.zero()] != b.zero() || h[a.one()] != b.one()) return false;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (h[a.neg(x)] != b.neg(h[x])) return false;
    for (std::size_t y = 0; y < a.size(); ++y) {
      if (h[a.meet(x, y)] != b.meet(h[x], h[y]) || h[a.join(x, y)] != b.join(h[x], h[y])) return false;
    }
  }
  return true;
}

std::optional<std::vector<std::size_t>> embeds(const FinitePDL& a, const FinitePDL& b, const Caps& caps) {
  auto f = find_surjective_wpm(b.dual(), a.dual(), caps);
  if (!f) return std::nullopt;
  std::vector<std::size_t> h(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) h[x] = b.index_of(f->preimage(a.element(x)));
  if (!is_embedding(a, b, h)) throw Error("internal: dualized surjection is not an embedding");
  return h;
}

bool lattice_skeleton_conditions(const FinitePDL& a) {
  const std::size_t n = a.size();
  auto le = [&](std::size_t x, std::size_t y) { return a.meet(x, y) == x; };
  if (a.zero() == a.one()) return false;
  std::vector<bool> jirr(n, false), atom(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    if (x == a.zero()) continue;
    bool split = false;
    for (std::size_t y = 0; y < n && !split; ++y) {
      if (y == x || !le(y, x)) continue;
      for (std::size_t z = 0; z < n && !split; ++z)
        if (z != x && le(z, x) && a.join(y, z) == x) split = true;
    }
    jirr[x] = !split;
    bool minimal = true;
    for (std::size_t y = 0; y < n && minimal; ++y)
      if (y != x && y != a.zero() && le(y, x)) minimal = false;
    atom[x] = minimal;
  }
  for (std::size_t b = 0; b < n; ++b)
    if (b != a.zero() && !jirr[a.neg(a.neg(b))]) return false;

  std::vector<std::size_t> all_atoms;
  for (std::size_t x = 0; x < n; ++x)
    if (atom[x]) all_atoms.push_back(x);
  auto atoms_below = [&](std::size_t x) {
    ElementSet s(all_atoms.size());
    for (std::size_t k = 0; k < all_atoms.size(); ++k)
      if (le(all_atoms[k], x)) s.set(k);
    return s;
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (!jirr[x]) continue;
    auto ys = nonempty_subsets(atoms_below(x));
    std::stable_sort(ys.begin(), ys.end(), [](const ElementSet& p, const ElementSet& q) { return p.count() > q.count(); });
    std::vector<std::vector<std::size_t>> cands(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i)
      for (std::size_t c = 0; c < n; ++c)
        if (jirr[c] && le(c, x) && atoms_below(c) == ys[i]) cands[i].push_back(c);
    std::vector<std::size_t> chosen(ys.size(), n);
    auto rec = [&](auto&& self, std::size_t i) -> bool {
      if (i == ys.size()) return true;
      for (auto c : cands[i]) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j)
          if (ys[i].is_subset_of(ys[j])) ok = le(c, chosen[j]);
        if (!ok) continue;
        chosen[i] = c;
        if (self(self, i + 1)) return true;
      }
      return false;
    };
    if (!rec(rec, 0)) return false;
  }
  return true;
}

}  // namespace pdl
