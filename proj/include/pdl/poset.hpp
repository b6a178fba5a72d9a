#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdl/caps.hpp"
#include "pdl/element_set.hpp"

namespace pdl {

// Finite poset with the full order stored as bit rows. Immutable; copies share
// the underlying tables.
class FinitePoset {
 public:
  FinitePoset();

  // Reflexive-transitive closure of `relation`; pairs are (lower, upper).
  static FinitePoset build(std::vector<std::string> elements,
                           const std::vector<std::pair<std::string, std::string>>& relation);
  static FinitePoset from_relation(std::vector<std::string> elements,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& relation);
  // up_rows[i] must already be the full up-set of i (reflexive, transitive,
  // antisymmetric). Only cheap consistency checks are made.
  static FinitePoset from_up_rows(std::vector<std::string> elements, std::vector<ElementSet> up_rows);

  std::size_t size() const { return d_->names.size(); }
  bool empty() const { return size() == 0; }
  const std::vector<std::string>& elements() const { return d_->names; }
  const std::string& name(std::size_t i) const { return d_->names.at(i); }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws UnknownElementError

  bool leq(std::size_t a, std::size_t b) const { return d_->up[a].test(b); }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  const ElementSet& up(std::size_t i) const { return d_->up[i]; }
  const ElementSet& down(std::size_t i) const { return d_->down[i]; }
  const ElementSet& max_above(std::size_t i) const { return d_->max_above[i]; }
  const ElementSet& maximal() const { return d_->maximal; }
  const ElementSet& minimal() const { return d_->minimal; }
  std::optional<std::size_t> minimum() const;
  std::optional<std::size_t> maximum() const;

  ElementSet empty_set() const { return ElementSet(size()); }
  ElementSet full_set() const { return ElementSet::full(size()); }
  ElementSet up_set(const ElementSet& s) const;
  ElementSet down_set(const ElementSet& s) const;
  bool is_upset(const ElementSet& s) const;
  bool is_downset(const ElementSet& s) const;

  ElementSet set_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(const ElementSet& s) const;

  // Subposet on the members of s, in increasing index order.
  FinitePoset induced(const ElementSet& s) const;
  // Same elements with the order reversed.
  FinitePoset reversed() const;
  // Pairs (a, b) with a covered by b.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  // Indices sorted so that every element precedes all elements above it.
  std::vector<std::size_t> linear_extension() const;

  friend bool operator==(const FinitePoset& a, const FinitePoset& b);

 private:
  struct Data {
    std::vector<std::string> names;
    std::vector<ElementSet> up;
    std::vector<ElementSet> down;
    std::vector<ElementSet> max_above;
    ElementSet maximal;
    ElementSet minimal;
  };
  explicit FinitePoset(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static FinitePoset finish(std::vector<std::string> names, std::vector<ElementSet> up);

  std::shared_ptr<const Data> d_;
};

FinitePoset build_poset(std::vector<std::string> elements,
                        const std::vector<std::pair<std::string, std::string>>& relation);
ElementSet up_set(const FinitePoset& p, const ElementSet& s);
ElementSet down_set(const FinitePoset& p, const ElementSet& s);
ElementSet maximal_above(const FinitePoset& p, std::size_t x);

// Isomorphism search by backtracking; intended for small posets.
std::optional<std::vector<std::size_t>> find_isomorphism(const FinitePoset& a, const FinitePoset& b);
bool isomorphic(const FinitePoset& a, const FinitePoset& b);

// Total map between finite posets.
class PosetMap {
 public:
  PosetMap(FinitePoset source, FinitePoset target, std::vector<std::size_t> images);

  const FinitePoset& source() const { return source_; }
  const FinitePoset& target() const { return target_; }
  const std::vector<std::size_t>& images() const { return images_; }
  std::size_t operator()(std::size_t x) const { return images_[x]; }

  ElementSet image(const ElementSet& s) const;
  ElementSet preimage(const ElementSet& t) const;
  bool is_surjective() const;
  bool is_order_preserving() const;
  // this followed by g.
  PosetMap then(const PosetMap& g) const;

 private:
  FinitePoset source_;
  FinitePoset target_;
  std::vector<std::size_t> images_;
};

bool is_weak_p_morphism(const PosetMap& f);
// Human-readable description of the first failure, if any.
std::optional<std::string> weak_p_morphism_violation(const PosetMap& f);

// 2^n: points are n-bit masks, named by bit strings (character i = bit i).
FinitePoset boolean_poset(std::size_t n, const Caps& caps = {});
std::string bit_string(std::uint64_t mask, std::size_t n);

struct PairPoint {
  std::size_t base;
  ElementSet cloud;
};

// P(X) together with the pair behind each element.
struct PairPoset {
  FinitePoset base;
  FinitePoset poset;
  std::vector<PairPoint> pairs;

  std::size_t index_of(std::size_t base, const ElementSet& cloud) const;
};

std::uint64_t p_extension_size(const FinitePoset& x);
PairPoset p_extension(const FinitePoset& x, const Caps& caps = {});
std::string pair_name(const FinitePoset& x, const PairPoint& p);

// Enumerates subsets S with max(up(s)) contained in S for every s in S.
// The space is split by seed: the subset M of maximal elements (as a mask
// over max(P) in index order). Within one seed the non-maximal elements whose
// maximal elements all lie in M are added in counting order.
class MaxClosedEnumerator {
 public:
  explicit MaxClosedEnumerator(FinitePoset p, const Caps& caps = {});

  std::size_t seed_count() const { return std::size_t{1} << maxima_.size(); }
  std::uint64_t total_count() const;
  const FinitePoset& poset() const { return p_; }

  // Calls f(S) for all subsets in seeds [begin, end), in enumeration order.
  // Stops early and returns false when f returns false.
  template <class F>
  bool for_each(std::size_t begin, std::size_t end, F&& f) const {
    for (std::size_t seed = begin; seed < end; ++seed) {
      ElementSet base(p_.size());
      std::vector<std::size_t> free;
      seed_parts(seed, base, free);
      const std::uint64_t n = std::uint64_t{1} << free.size();
      for (std::uint64_t c = 0; c < n; ++c) {
        ElementSet s = base;
        for (std::uint64_t r = c; r; r &= r - 1) s.set(free[static_cast<std::size_t>(std::countr_zero(r))]);
        if (!f(s)) return false;
      }
    }
    return true;
  }

  void seed_parts(std::size_t seed, ElementSet& base, std::vector<std::size_t>& free) const;

 private:
  FinitePoset p_;
  std::vector<std::size_t> maxima_;
  std::vector<std::size_t> non_maxima_;
};

std::vector<ElementSet> max_closed_subsets(const FinitePoset& p, const Caps& caps = {});

// Surjective weak p-morphism by backtracking. nullopt means the full search
// space was exhausted; BudgetExceededError means it was not.
std::optional<PosetMap> find_surjective_wpm(const FinitePoset& source, const FinitePoset& target,
                                            const Caps& caps = {});

}  // namespace pdl
