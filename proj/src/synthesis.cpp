#include "pdl/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <unordered_set>

#include "pdl/errors.hpp"

namespace pdl {

namespace {

constexpr std::size_t kMaxDimension = 62;
constexpr std::size_t kMaxDPoints = 20;
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t ones(std::size_t k) { return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1; }

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

// 2^n - 1 nonempty subsets of an n-element set.
std::uint64_t nonempty_subset_count(std::uint64_t n) { return n >= 64 ? kSaturated : (std::uint64_t{1} << n) - 1; }

std::string point_name(const CubePoint& p, std::size_t k) {
  std::string s = "<" + bit_string(p.base, k) + ",{";
  for (std::size_t i = 0; i < p.cloud.size(); ++i) {
    if (i) s += ",";
    s += bit_string(p.cloud[i], k);
  }
  return s + "}>";
}

bool is_superset(std::uint64_t a, std::uint64_t b) { return (a & b) == b; }

}  // namespace

std::size_t CubePointHash::operator()(const CubePoint& p) const {
  std::size_t h = std::hash<std::uint64_t>{}(p.base);
  for (auto c : p.cloud) h ^= std::hash<std::uint64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool cube_leq(const CubePoint& a, const CubePoint& b) {
  if (!is_superset(b.base, a.base)) return false;
  return std::includes(a.cloud.begin(), a.cloud.end(), b.cloud.begin(), b.cloud.end());
}

bool cube_is_maximal(const CubePoint& p) { return p.cloud.size() == 1 && p.cloud[0] == p.base; }

CubePoint project_point(const CubePoint& p, std::size_t bits) {
  const std::uint64_t m = ones(bits);
  CubePoint out{p.base & m, {}};
  out.cloud.reserve(p.cloud.size());
  for (auto c : p.cloud) out.cloud.push_back(c & m);
  std::sort(out.cloud.begin(), out.cloud.end());
  out.cloud.erase(std::unique(out.cloud.begin(), out.cloud.end()), out.cloud.end());
  return out;
}

std::uint64_t cube_size(std::size_t k) {
  if (k >= 64) return kSaturated;
  std::uint64_t total = 0, binom = 1;
  for (std::size_t w = 0; w <= k; ++w) {
    const std::size_t free = k - w;
    const std::uint64_t clouds = free >= 6 ? kSaturated : nonempty_subset_count(std::uint64_t{1} << free);
    total = sat_add(total, sat_mul(binom, clouds));
    binom = binom * (k - w) / (w + 1);
  }
  return total;
}

BaseCaseMap::BaseCaseMap(FinitePoset x) : x_(std::move(x)), k_(x_.size() + 1) {
  auto lo = x_.minimum();
  auto hi = x_.maximum();
  if (!lo || !hi) throw PreconditionError("base case needs a poset with a least and a greatest element");
  if (k_ > kMaxDimension) throw CapExceededError("synthesis dimension k = " + std::to_string(k_), k_, kMaxDimension);
  bottom_ = *lo;
  top_ = *hi;
}

std::size_t BaseCaseMap::operator()(const CubePoint& p) const {
  if (p.base != 0) return top_;
  const std::uint64_t all = std::uint64_t{1} << k_;
  if (p.cloud.size() == all) return bottom_;
  if (p.cloud.size() + 1 == all) {
    // The missing point names the atom.
    std::uint64_t missing = all - 1;
    for (std::uint64_t i = 0; i < p.cloud.size(); ++i) {
      if (p.cloud[i] != i) {
        missing = i;
        break;
      }
    }
    return missing < x_.size() ? static_cast<std::size_t>(missing) : top_;
  }
  return top_;
}

ExtensionMap::ExtensionMap(std::size_t k, SkeletonWitness w, std::vector<CubePoint> u, std::vector<std::size_t> r)
    : k_(k), w_(std::move(w)), u_(std::move(u)), r_(std::move(r)) {
  if (k_ < 1 || k_ > kMaxDimension) throw PreconditionError("dimension out of range");
  if (auto v = witness_violation(w_)) throw PreconditionError("witness does not verify: " + *v);
  if (u_.size() != r_.size()) throw PreconditionError("U and r differ in size");
  const auto& x = w_.poset;
  const std::uint64_t full = ones(k_);
  for (std::size_t i = 0; i < u_.size(); ++i) {
    const auto& p = u_[i];
    if ((p.base & ~full) || p.cloud.empty() || !std::is_sorted(p.cloud.begin(), p.cloud.end()) ||
        std::adjacent_find(p.cloud.begin(), p.cloud.end()) != p.cloud.end())
      throw PreconditionError("malformed element of U");
    for (auto c : p.cloud)
      if ((c & ~full) || !is_superset(c, p.base)) throw PreconditionError("cloud point not above base");
    if (r_[i] >= x.size()) throw PreconditionError("r value out of range");
    if (!index_.emplace(p, i).second) throw PreconditionError("duplicate element of U");
  }
  // Upset: closed under the covering steps of P(2^k).
  for (const auto& p : u_) {
    if (p.cloud.size() > 1) {
      for (std::size_t j = 0; j < p.cloud.size(); ++j) {
        CubePoint q = p;
        q.cloud.erase(q.cloud.begin() + static_cast<std::ptrdiff_t>(j));
        if (!index_.count(q)) throw PreconditionError("U is not an upset: " + point_name(q, k_) + " missing");
      }
    }
    for (std::size_t b = 0; b < k_; ++b) {
      const std::uint64_t nb = p.base | (std::uint64_t{1} << b);
      if (nb == p.base) continue;
      if (!std::all_of(p.cloud.begin(), p.cloud.end(), [&](std::uint64_t c) { return is_superset(c, nb); }))
        continue;
      if (!index_.count(CubePoint{nb, p.cloud}))
        throw PreconditionError("U is not an upset: " + point_name(CubePoint{nb, p.cloud}, k_) + " missing");
    }
  }
  for (std::size_t i = 0; i < u_.size(); ++i) {
    if (!cube_is_maximal(u_[i])) continue;
    if (!x.maximal().test(r_[i])) throw PreconditionError("r sends a maximal element to a non-maximal one");
    d_points_.push_back(u_[i].base);
    d_value_.emplace(u_[i].base, r_[i]);
  }
  std::sort(d_points_.begin(), d_points_.end());
  w0_ = x.maximal().first();
}

std::optional<std::size_t> ExtensionMap::find(const CubePoint& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ExtensionMap::operator()(const CubePoint& p) const {
  if (auto i = find(p)) return r_[*i];
  if (cube_is_maximal(p)) return w0_;
  ElementSet e(w_.poset.size());
  for (auto c : p.cloud) {
    auto it = d_value_.find(c);
    if (it == d_value_.end())
      e.set(w0_);
    else
      e.set(it->second);
  }
  return w_.at(w_.bottom, e);
}

CubeCheck verify_exhaustive(const CubeMap& f, const Caps& caps) {
  const std::size_t k = f.k();
  const std::uint64_t size = cube_size(k);
  if (k > 4 || size > caps.synthesis_exhaustive)
    throw CapExceededError("exhaustive check of P(2^" + std::to_string(k) + ")", size, caps.synthesis_exhaustive);
  const FinitePoset& x = f.target();
  const std::size_t points = std::size_t{1} << k;
  const std::size_t masks = std::size_t{1} << points;
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> val(points * masks, kUnset);
  std::vector<std::uint64_t> above(points, 0);
  for (std::size_t b = 0; b < points; ++b)
    for (std::size_t z = 0; z < points; ++z)
      if ((z & b) == b) above[b] |= std::uint64_t{1} << z;

  auto to_point = [](std::size_t base, std::uint64_t cmask) {
    CubePoint p{base, {}};
    for (std::uint64_t r = cmask; r; r &= r - 1) p.cloud.push_back(static_cast<std::uint64_t>(std::countr_zero(r)));
    return p;
  };

  CubeCheck out;
  out.method = "exhaustive";
  ElementSet hit(x.size());
  for (std::size_t b = 0; b < points; ++b) {
    for (std::uint64_t c = above[b]; c; c = (c - 1) & above[b]) {
      const std::size_t v = f(to_point(b, c));
      if (v >= x.size()) return {false, out.method, out.checked, "value out of range"};
      val[b * masks + c] = static_cast<std::uint32_t>(v);
      hit.set(v);
      ++out.checked;
    }
  }
  auto fail = [&](std::size_t b, std::uint64_t c, const std::string& why) {
    out.ok = false;
    out.failure = point_name(to_point(b, c), k) + ": " + why;
    return out;
  };
  for (std::size_t b = 0; b < points; ++b) {
    for (std::uint64_t c = above[b]; c; c = (c - 1) & above[b]) {
      const std::uint32_t v = val[b * masks + c];
      if (std::popcount(c) > 1) {
        for (std::uint64_t r = c; r; r &= r - 1) {
          const std::uint64_t smaller = c & ~(r & -r);
          if (!x.leq(v, val[b * masks + smaller])) return fail(b, c, "order not preserved");
        }
      }
      for (std::size_t bit = 0; bit < k; ++bit) {
        const std::size_t nb = b | (std::size_t{1} << bit);
        if (nb == b || (c & ~above[nb])) continue;
        if (!x.leq(v, val[nb * masks + c])) return fail(b, c, "order not preserved");
      }
      ElementSet images(x.size());
      for (std::uint64_t r = c; r; r &= r - 1) {
        const std::size_t z = static_cast<std::size_t>(std::countr_zero(r));
        images.set(val[z * masks + (std::uint64_t{1} << z)]);
      }
      if (!x.max_above(v).is_subset_of(images)) return fail(b, c, "maximal elements above the image are missed");
    }
  }
  if (!hit.all()) {
    out.ok = false;
    out.failure = "not surjective";
  }
  return out;
}

CubeCheck verify_base_case(const BaseCaseMap& f) {
  CubeCheck out;
  out.method = "structure";
  const FinitePoset& x = f.target();
  auto lo = x.minimum();
  auto hi = x.maximum();
  out.checked = 1;
  if (!lo || !hi || *lo != f.bottom() || *hi != f.top()) {
    out.ok = false;
    out.failure = "target is not bounded";
  } else if (f.k() < 2) {
    // Otherwise an atom is maximal.
    out.ok = false;
    out.failure = "k below 2";
  } else if (f.k() < 64 && (std::uint64_t{1} << f.k()) < x.size()) {
    out.ok = false;
    out.failure = "fewer atoms than elements";
  }
  return out;
}

// Soundness: for x < y both outside U, the types of x and y are linked by a
// chain of single steps, each lowering s(bottom, e); for x outside U below
// y in U, cloud(y) lies in D and inside C, so the type of x covers cloud(y).
CubeCheck verify_certificate(const ExtensionMap& f, const Caps& caps) {
  CubeCheck out;
  out.method = "certificate";
  const auto& w = f.witness();
  const FinitePoset& x = w.poset;
  const auto& u = f.upset();
  const auto& r = f.values();
  if (u.size() > caps.synthesis_upset) throw CapExceededError("certificate upset", u.size(), caps.synthesis_upset);
  const auto& d = f.d_points();
  if (d.size() > kMaxDPoints) throw CapExceededError("certificate point set D", d.size(), kMaxDPoints);
  auto fail = [&](const std::string& why) {
    out.ok = false;
    out.failure = why;
    return out;
  };

  // (a) r is a weak p-morphism on U.
  std::vector<std::string> names;
  std::vector<ElementSet> rows;
  for (const auto& p : u) names.push_back(point_name(p, f.k()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    ElementSet row(u.size());
    for (std::size_t j = 0; j < u.size(); ++j)
      if (cube_leq(u[i], u[j])) row.set(j);
    rows.push_back(std::move(row));
  }
  const FinitePoset up = FinitePoset::from_up_rows(names, rows);
  if (auto v = weak_p_morphism_violation(PosetMap(up, x, r))) return fail("on U: " + *v);
  out.checked += u.size();

  // Types (T, f): T = C & D as a mask over d, flag = C leaves D.
  const std::size_t nd = d.size();
  const std::uint64_t outside = (std::uint64_t{1} << f.k()) - nd;
  std::vector<std::size_t> dval(nd);
  for (std::size_t i = 0; i < nd; ++i) dval[i] = f(CubePoint{d[i], {d[i]}});
  const std::size_t types = std::size_t{1} << nd;
  auto e_of = [&](std::size_t t, bool flag) {
    ElementSet e(x.size());
    for (std::size_t i = 0; i < nd; ++i)
      if ((t >> i) & 1U) e.set(dval[i]);
    if (flag) e.set(f.w0());
    return e;
  };
  std::vector<std::size_t> val(2 * types, 0);
  std::vector<char> realizable(2 * types, 0);
  for (std::size_t t = 0; t < types; ++t) {
    for (int flag = 0; flag < 2; ++flag) {
      if (t == 0 && !flag) continue;
      val[2 * t + flag] = w.at(w.bottom, e_of(t, flag));
      // The least candidate <0, C*> realizes the type iff it lies outside U
      // and is not maximal.
      const std::uint64_t cs = static_cast<std::uint64_t>(std::popcount(t)) + (flag ? outside : 0);
      if (cs == 0) continue;
      CubePoint sigma{0, {}};
      if (!flag) {
        for (std::size_t i = 0; i < nd; ++i)
          if ((t >> i) & 1U) sigma.cloud.push_back(d[i]);
        if (f.find(sigma)) continue;
        if (cube_is_maximal(sigma)) continue;
      } else if (cs == 1 && outside == 1 && t == 0) {
        // C* is the single point outside D; maximal only if that point is 0.
        if (std::find(d.begin(), d.end(), 0) == d.end()) continue;
      }
      realizable[2 * t + flag] = 1;
    }
  }

  ElementSet hit(x.size());
  for (auto v : r) hit.set(v);
  if (outside > 0) hit.set(f.w0());
  for (std::size_t t = 0; t < types; ++t) {
    for (int flag = 0; flag < 2; ++flag) {
      if (!realizable[2 * t + flag]) continue;
      const std::size_t v = val[2 * t + flag];
      hit.set(v);
      ++out.checked;
      // (b) the maximal elements above the value are exactly e.
      if (!(x.max_above(v) == e_of(t, flag))) return fail("type value misses its maximal elements");
      // (d) flagged types lie below the fixed maximal element.
      if (flag && !x.leq(v, f.w0())) return fail("flagged type not below w0");
    }
  }
  // (e) single steps between types only lower the value.
  for (std::size_t t = 0; t < types; ++t) {
    for (int flag = 0; flag < 2; ++flag) {
      if (t == 0 && !flag) continue;
      const std::size_t v = val[2 * t + flag];
      for (std::size_t i = 0; i < nd; ++i)
        if (!((t >> i) & 1U) && !x.leq(val[2 * (t | (std::size_t{1} << i)) + flag], v))
          return fail("type values not antitone");
      if (!flag && !x.leq(val[2 * t + 1], v)) return fail("type values not antitone");
    }
  }
  // (c) types below an element of U.
  for (std::size_t j = 0; j < u.size(); ++j) {
    std::size_t cm = 0;
    for (auto c : u[j].cloud) {
      auto it = std::lower_bound(d.begin(), d.end(), c);
      if (it == d.end() || *it != c) return fail("cloud of an element of U leaves D");
      cm |= std::size_t{1} << (it - d.begin());
    }
    const std::size_t rest = (types - 1) & ~cm;
    for (std::size_t s = rest;; s = (s - 1) & rest) {
      for (int flag = 0; flag < 2; ++flag)
        if (realizable[2 * (cm | s) + flag] && !x.leq(val[2 * (cm | s) + flag], r[j]))
          return fail("type value not below " + names[j]);
      if (s == 0) break;
    }
  }
  // (f) w0 is maximal and everything is hit.
  if (!x.maximal().test(f.w0())) return fail("w0 is not maximal");
  if (!hit.all()) return fail("not surjective");
  return out;
}

CubeCheck verify_cube_map(const CubeMap& f, const Caps& caps) {
  if (f.k() <= 4 && cube_size(f.k()) <= caps.synthesis_exhaustive) return verify_exhaustive(f, caps);
  if (auto e = dynamic_cast<const ExtensionMap*>(&f)) return verify_certificate(*e, caps);
  if (auto b = dynamic_cast<const BaseCaseMap*>(&f)) return verify_base_case(*b);
  throw PreconditionError("no verification method for this map");
}

namespace {

// Elements <c, C> with c above gen_base and C a nonempty subset of the given
// points above c.
void collect_up(std::size_t k, std::uint64_t gen_base, const std::vector<std::uint64_t>& gen_cloud,
                std::vector<CubePoint>& out) {
  const std::uint64_t free = ones(k) & ~gen_base;
  for (std::uint64_t s = free;; s = (s - 1) & free) {
    const std::uint64_t c = gen_base | s;
    std::vector<std::uint64_t> avail;
    for (auto z : gen_cloud)
      if (is_superset(z, c)) avail.push_back(z);
    const std::uint64_t n = std::uint64_t{1} << avail.size();
    for (std::uint64_t m = 1; m < n; ++m) {
      CubePoint p{c, {}};
      for (std::size_t i = 0; i < avail.size(); ++i)
        if ((m >> i) & 1U) p.cloud.push_back(avail[i]);
      out.push_back(std::move(p));
    }
    if (s == 0) break;
  }
}

std::uint64_t count_up(std::size_t k, std::uint64_t gen_base, const std::vector<std::uint64_t>& gen_cloud) {
  const std::uint64_t free = ones(k) & ~gen_base;
  if (std::popcount(free) > 24) return kSaturated;
  std::uint64_t total = 0;
  for (std::uint64_t s = free;; s = (s - 1) & free) {
    const std::uint64_t c = gen_base | s;
    std::uint64_t avail = 0;
    for (auto z : gen_cloud)
      if (is_superset(z, c)) ++avail;
    total = sat_add(total, nonempty_subset_count(avail));
    if (s == 0) break;
  }
  return total;
}

// Bits [lo, lo + len) of v moved down to bit 0.
std::uint64_t extract(std::uint64_t v, std::size_t lo, std::size_t len) { return (v >> lo) & ones(len); }

CubePoint extract_point(const CubePoint& p, std::size_t lo, std::size_t len) {
  CubePoint out{extract(p.base, lo, len), {}};
  for (auto c : p.cloud) out.cloud.push_back(extract(c, lo, len));
  std::sort(out.cloud.begin(), out.cloud.end());
  return out;
}

std::shared_ptr<const CubeMap> build(const SkeletonWitness& w, const Caps& caps);

std::shared_ptr<const CubeMap> build_inductive(const SkeletonWitness& w, const Caps& caps) {
  const FinitePoset& x = w.poset;
  const auto maxima = x.maximal().members();
  const std::size_t n1 = maxima.size();  // n + 1

  struct Child {
    std::shared_ptr<const CubeMap> map;
    std::vector<std::size_t> to_x;
  };
  std::vector<Child> children;
  std::size_t m = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    ElementSet mi = x.maximal();
    mi.reset(maxima[i]);
    const std::size_t s = w.at(w.bottom, mi);
    const SkeletonWitness cw = restrict_witness(w, mi);
    children.push_back({build(cw, caps), x.up(s).members()});
    m = std::max(m, children.back().map->k());
  }

  ElementSet common = x.full_set();
  for (auto a : maxima) common &= x.down(a);
  std::vector<std::size_t> vs;
  for (std::size_t v = common.first(); v < x.size(); v = common.next(v + 1)) {
    bool top = true;
    for (std::size_t u = common.first(); u < x.size(); u = common.next(u + 1))
      if (x.less(v, u)) top = false;
    if (top) vs.push_back(v);
  }
  if (vs.empty()) throw Error("internal: maxima have no common lower bound");

  struct Block {
    std::size_t v;
    std::shared_ptr<const BaseCaseMap> q;
    std::vector<std::size_t> to_x;
    std::size_t base;  // first bit of the block
    std::size_t len;
  };
  std::vector<Block> blocks;
  std::size_t k = n1 * (m + 1);
  for (auto v : vs) {
    const ElementSet dv = x.down(v);
    Block b{v, nullptr, dv.members(), k, n1 + dv.count() + 1};
    k += b.len;
    blocks.push_back(std::move(b));
  }
  if (k > kMaxDimension) throw CapExceededError("synthesis dimension k = " + std::to_string(k), k, kMaxDimension);
  for (auto& b : blocks) b.q = std::make_shared<BaseCaseMap>(x.induced(x.down(b.v)));
  const std::uint64_t full = ones(k);

  // W_i = up <w_i, [w_i, a_i]>.
  struct Gen {
    std::uint64_t base;
    std::vector<std::uint64_t> cloud;
  };
  std::vector<Gen> wgens;
  for (std::size_t i = 0; i < n1; ++i) {
    const std::size_t lo = i * (m + 1);
    const std::uint64_t wh = full & ~(ones(m + 1) << lo);
    Gen g{wh, {}};
    if (m > 20) throw CapExceededError("synthesis upset for k = " + std::to_string(k), kSaturated, caps.synthesis_upset);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) g.cloud.push_back(wh | (s << lo));
    std::sort(g.cloud.begin(), g.cloud.end());
    wgens.push_back(std::move(g));
  }
  // V_j = up <v_j, [v_j, meet of b's] + {b's}>; b_l is zero only at bit
  // base + len - l.
  std::vector<Gen> vgens;
  std::vector<std::vector<std::uint64_t>> bpoints;
  for (const auto& b : blocks) {
    const std::uint64_t vh = full & ~(ones(b.len) << b.base);
    const std::size_t free = b.len - n1;
    if (free > 20) throw CapExceededError("synthesis upset for k = " + std::to_string(k), kSaturated, caps.synthesis_upset);
    Gen g{vh, {}};
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << free); ++s) g.cloud.push_back(vh | (s << b.base));
    std::vector<std::uint64_t> bs;
    for (std::size_t l = 1; l <= n1; ++l) bs.push_back(full & ~(std::uint64_t{1} << (b.base + b.len - l)));
    for (auto p : bs) g.cloud.push_back(p);
    std::sort(g.cloud.begin(), g.cloud.end());
    vgens.push_back(std::move(g));
    bpoints.push_back(std::move(bs));
  }

  std::uint64_t usize = 0;
  for (const auto& g : wgens) usize = sat_add(usize, count_up(k, g.base, g.cloud));
  for (const auto& g : vgens) usize = sat_add(usize, count_up(k, g.base, g.cloud));
  if (usize > caps.synthesis_upset)
    throw CapExceededError("synthesis upset for k = " + std::to_string(k), usize, caps.synthesis_upset);

  std::vector<CubePoint> u;
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < n1; ++i) {
    const std::size_t start = u.size();
    collect_up(k, wgens[i].base, wgens[i].cloud, u);
    const auto& ch = children[i];
    for (std::size_t e = start; e < u.size(); ++e) {
      // Free bits of block i are the coordinates of P(2^m); then project.
      const CubePoint local = extract_point(u[e], i * (m + 1), m);
      r.push_back(ch.to_x[(*ch.map)(project_point(local, ch.map->k()))]);
    }
  }
  const std::size_t w1 = maxima[0];
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto& b = blocks[j];
    const auto& bs = bpoints[j];
    const std::uint64_t vh = vgens[j].base;
    const std::uint64_t meet_b = full & ~(ones(n1) << (b.base + b.len - n1));
    const std::size_t start = u.size();
    collect_up(k, vgens[j].base, vgens[j].cloud, u);
    for (std::size_t e = start; e < u.size(); ++e) {
      const CubePoint& p = u[e];
      std::size_t nb = 0;
      ElementSet ex(x.size());
      bool leaves = false;
      for (auto c : p.cloud) {
        auto it = std::find(bs.begin(), bs.end(), c);
        if (it == bs.end()) {
          leaves = true;
        } else {
          ++nb;
          ex.set(maxima[static_cast<std::size_t>(it - bs.begin())]);
        }
      }
      if (leaves) ex.set(w1);
      const bool in_interval = is_superset(p.base, vh) && is_superset(meet_b, p.base);
      if (in_interval && nb == n1 && p.cloud.size() > n1) {
        CubePoint rest{p.base, {}};
        for (auto c : p.cloud)
          if (std::find(bs.begin(), bs.end(), c) == bs.end()) rest.cloud.push_back(c);
        const CubePoint local = extract_point(rest, b.base, b.len - n1);
        r.push_back(b.to_x[(*b.q)(local)]);
      } else if (cube_is_maximal(p)) {
        if (ex.count() != 1) throw Error("internal: maximal element of V_j with several types");
        r.push_back(ex.first());
      } else {
        r.push_back(w.at(b.v, ex));
      }
    }
  }
  return std::make_shared<ExtensionMap>(k, w, std::move(u), std::move(r));
}

std::shared_ptr<const CubeMap> build(const SkeletonWitness& w, const Caps& caps) {
  if (w.poset.maximal().count() == 1) return std::make_shared<BaseCaseMap>(w.poset);
  return build_inductive(w, caps);
}

}  // namespace

std::size_t constructive_dimension(const SkeletonWitness& w) {
  const FinitePoset& x = w.poset;
  const auto maxima = x.maximal().members();
  if (maxima.size() == 1) return x.size() + 1;
  const std::size_t n1 = maxima.size();
  std::size_t m = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    ElementSet mi = x.maximal();
    mi.reset(maxima[i]);
    m = std::max(m, constructive_dimension(restrict_witness(w, mi)));
  }
  ElementSet common = x.full_set();
  for (auto a : maxima) common &= x.down(a);
  std::size_t k = n1 * (m + 1);
  common.for_each([&](std::size_t v) {
    bool top = true;
    common.for_each([&](std::size_t u) { top = top && !x.less(v, u); });
    if (top) k += n1 + x.down(v).count() + 1;
  });
  return k;
}

Synthesis synthesize_surjection(const FinitePoset& x, const SkeletonWitness& w, const Caps& caps) {
  if (!(w.poset == x)) throw PreconditionError("witness belongs to a different poset");
  if (auto v = witness_violation(w)) throw PreconditionError("witness does not verify: " + *v);
  Synthesis out;
  out.map = build(w, caps);
  out.k = out.map->k();
  out.check = verify_cube_map(*out.map, caps);
  if (!out.check.ok) throw Error("internal: synthesized map fails verification: " + out.check.failure);
  if (cube_size(out.k) <= 400) {
    const PairPoset pe = p_extension(boolean_poset(out.k, caps), caps);
    std::vector<std::size_t> img;
    for (const auto& pp : pe.pairs) {
      CubePoint p{pp.base, {}};
      pp.cloud.for_each([&](std::size_t c) { p.cloud.push_back(c); });
      img.push_back((*out.map)(p));
    }
    PosetMap pm(pe.poset, x, std::move(img));
    if (!is_weak_p_morphism(pm) || !pm.is_surjective()) throw Error("internal: explicit map fails verification");
    out.explicit_map = std::move(pm);
  }
  return out;
}

}  // namespace pdl
