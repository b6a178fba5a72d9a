#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdl/caps.hpp"
#include "pdl/poset.hpp"
#include "pdl/term.hpp"

namespace pdl {

// A skeleton-bearing nonempty max-closed subset S of P(2^k) with the
// generator images g_i restricted to S.
struct ExactQuotient {
  std::size_t index = 0;  // position among all max-closed subsets
  ElementSet subset;      // over P(2^k)
  std::vector<ElementSet> generators;
};

struct QuotientTable {
  std::size_t k = 0;
  PairPoset pext;
  std::vector<ElementSet> generator_sets;  // g_1..g_k over P(2^k)
  std::uint64_t max_closed_total = 0;      // including the empty set
  std::vector<ElementSet> exact;           // skeleton-bearing, in enumeration order
  std::vector<std::size_t> exact_index;
};

// Built once per k and cached for the life of the process.
std::shared_ptr<const QuotientTable> quotient_table(std::size_t k, const Caps& caps = {});
std::vector<ExactQuotient> enumerate_exact_quotients(std::size_t k, const Caps& caps = {});

enum class VerdictKind { Valid, Invalid, Unknown };

struct FallbackResult {
  enum class Status { Holds, Fails, Truncated };
  std::size_t n = 0;
  Status status = Status::Holds;
  std::string detail;
};

struct InvalidWitness {
  std::string source;               // "quotient" or "fallback"
  std::size_t k = 0;                // generators of the ambient free algebra
  std::optional<ElementSet> subset; // over P(2^k), for quotient witnesses
  std::size_t quotient_index = 0;
  FinitePoset dual;
  std::map<std::string, ElementSet> assignment;  // upsets of dual
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::uint64_t checked_quotients = 0;
  std::optional<InvalidWitness> witness;
  std::string reason;
  std::vector<FallbackResult> fallbacks;
};

Verdict decide(const UniversalSentence& s, const Caps& caps = {});
bool verify_verdict(const UniversalSentence& s, const Verdict& v, const Caps& caps = {});
std::string verdict_name(VerdictKind k);

}  // namespace pdl
