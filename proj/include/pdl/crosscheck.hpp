#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pdl/algebra.hpp"
#include "pdl/caps.hpp"
#include "pdl/poset.hpp"

namespace pdl {

// Every poset on {e0..e(n-1)} in which i below j forces i < j. Each
// isomorphism class appears at least once.
void for_each_labelled_poset(std::size_t n, const std::function<void(const FinitePoset&)>& f);
// One representative per isomorphism class, for n <= 7.
std::vector<FinitePoset> posets_up_to_iso(std::size_t n);
std::string canonical_key(const FinitePoset& p);

// Small explicit lattices, distributive or not, for the duality suite.
std::vector<std::pair<std::string, ExplicitLattice>> explicit_corpus();

struct SuiteReport {
  std::string name;
  bool ok = true;
  std::uint64_t cases = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::string> notes;  // first few mismatches and tolerated cases

  void fail(const std::string& why);
  void note(const std::string& what);
};

SuiteReport crosscheck_skeleton(std::size_t size_cap = 6, std::size_t max_maxima = 3, const Caps& caps = {});
SuiteReport crosscheck_surjection(std::size_t size_cap = 5, const Caps& caps = {});
SuiteReport crosscheck_duality(std::size_t size_cap = 6, const Caps& caps = {});
SuiteReport crosscheck_freechar(const Caps& caps = {});
SuiteReport crosscheck_formulas(std::size_t size_cap = 4, const Caps& caps = {});
SuiteReport crosscheck_synthesis(std::size_t size_cap = 5, const Caps& caps = {});

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, std::size_t size_cap, const Caps& caps = {});

}  // namespace pdl
