#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pdl/poset.hpp"

namespace testing {

inline pdl::FinitePoset fork_poset() { return pdl::build_poset({"b", "a1", "a2"}, {{"b", "a1"}, {"b", "a2"}}); }

inline pdl::FinitePoset trifork_poset() {
  return pdl::build_poset({"b", "a1", "a2", "a3"}, {{"b", "a1"}, {"b", "a2"}, {"b", "a3"}});
}

inline pdl::FinitePoset chain(std::size_t n, const std::string& prefix = "c") {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(prefix + std::to_string(i));
    if (i) rel.emplace_back(names[i - 1], names[i]);
  }
  return pdl::build_poset(names, rel);
}

inline pdl::FinitePoset antichain(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  return pdl::build_poset(names, {});
}

inline pdl::FinitePoset singleton() { return pdl::build_poset({"p"}, {}); }

// P(2^1) in element order: Q, P, B, M.
constexpr const char* Q = "<0,{0}>";
constexpr const char* P = "<0,{1}>";
constexpr const char* B = "<0,{0,1}>";
constexpr const char* M = "<1,{1}>";

inline pdl::ElementSet names(const pdl::FinitePoset& p, const std::vector<std::string>& n) { return p.set_of(n); }

// Random poset on n elements: a random relation below a random linear order.
inline pdl::FinitePoset random_poset(std::mt19937_64& rng, std::size_t n, double density = 0.35) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("r" + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) rel.emplace_back(i, j);
  return pdl::FinitePoset::from_relation(names, rel);
}

}  // namespace testing
