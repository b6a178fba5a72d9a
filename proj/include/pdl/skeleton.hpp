#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdl/caps.hpp"
#include "pdl/poset.hpp"

namespace pdl {

// The family s(x, Y) for every x and nonempty Y contained in max(up(x)).
struct SkeletonWitness {
  using Key = std::pair<std::size_t, ElementSet>;

  FinitePoset poset;
  std::size_t bottom = 0;
  std::map<Key, std::size_t> s;

  std::size_t at(std::size_t x, const ElementSet& y) const;
};

// Greedy means: take the first consistent candidate for each Y and never
// revisit. Counted per non-bottom element.
struct SkeletonStats {
  std::uint64_t elements = 0;
  std::uint64_t greedy_succeeded = 0;
  std::uint64_t greedy_failed_backtrack_succeeded = 0;
  std::uint64_t no_family = 0;
  std::uint64_t nodes = 0;
};

// Nonempty subsets of s, in counting order over its members.
std::vector<ElementSet> nonempty_subsets(const ElementSet& s);

std::optional<SkeletonWitness> check_free_skeleton(const FinitePoset& x, SkeletonStats* stats = nullptr);
bool has_free_skeleton(const FinitePoset& x);

bool verify_witness(const SkeletonWitness& w);
std::optional<std::string> witness_violation(const SkeletonWitness& w);

std::optional<SkeletonWitness> brute_force_skeleton(const FinitePoset& x, const Caps& caps = {});

// Witness for the subposet up(s(bottom, Y)); element i of the result is
// element up(s(bottom, Y)).members()[i] of the input.
SkeletonWitness restrict_witness(const SkeletonWitness& w, const ElementSet& y);

}  // namespace pdl
