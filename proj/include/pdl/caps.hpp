#pragma once

#include <cstddef>
#include <cstdint>

namespace pdl {

// Resource limits shared by all modules. Every operation that can blow up
// takes a Caps and refuses (CapExceededError / BudgetExceededError) instead
// of running away.
struct Caps {
  std::size_t boolean_n = 16;                 // largest n for boolean_poset
  std::size_t p_extension_size = 100'000;     // largest |P(X)| built explicitly
  std::size_t enumeration_width = 26;         // largest |P| for subset enumeration
  std::size_t upset_count = 1'000'000;        // largest |upsets| materialized
  std::size_t free_n = 2;                     // largest n for free_pdl
  std::size_t decide_k = 2;                   // exhaustive path of decide
  std::size_t fallback_n = 2;                 // fallback model checks in F(n)
  std::uint64_t eval_budget = 10'000'000;     // assignments per holds_universal
  std::uint64_t search_budget = 10'000'000;   // nodes for surjection/embedding search
  std::uint64_t family_budget = 10'000'000;   // families for brute_force_skeleton
  std::uint64_t formula_budget = 2'000'000;   // disjuncts materialized by gen_F
  std::size_t synthesis_exhaustive = 100'000; // |P(2^k)| verified element by element
  std::size_t synthesis_upset = 20'000;       // |U| for symbolic certificates
  std::size_t threads = 1;
};

}  // namespace pdl
