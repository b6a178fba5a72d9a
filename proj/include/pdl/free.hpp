#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pdl/algebra.hpp"
#include "pdl/caps.hpp"
#include "pdl/poset.hpp"
#include "pdl/term.hpp"

namespace pdl {

// Free algebra on n generators as the upset algebra of P(2^n). Variable x_i
// corresponds to bit i-1 of the points of 2^n.
struct FreeAlgebra {
  std::size_t n = 0;
  PairPoset dual;
  FinitePDL algebra;
  std::vector<std::size_t> generators;  // element indices of g_1..g_n
};

// g_i as a set over P(2^n): pairs whose base has bit i-1 set.
ElementSet generator_upset(const PairPoset& p, std::size_t i);

FreeAlgebra free_pdl(std::size_t n, const Caps& caps = {});

// Subsets of {1..n} are bitmasks: bit i-1 stands for i. A family of subsets
// is a bitmask over those masks.
struct SPair {
  std::uint32_t l = 0;
  std::uint64_t t = 0;

  friend bool operator==(const SPair&, const SPair&) = default;
};

enum class SReading {
  Corrected,  // T nonempty, L inside the intersection of T
  Literal,    // additionally L nonempty
};

// All pairs, sorted by (t, l).
std::vector<SPair> s_pairs(std::size_t n, SReading reading = SReading::Corrected);
bool spair_leq(const SPair& a, const SPair& b);
bool spair_less(const SPair& a, const SPair& b);

std::vector<Term> default_variables(std::size_t n, const std::string& prefix = "x");

// a_T over the given variables.
Term a_term(std::uint32_t t, const std::vector<Term>& vars);
Term a_term(std::size_t n, std::uint32_t t);
// p_L^T over the given variables; the join over T runs by decreasing mask.
Term p_term(const SPair& s, const std::vector<Term>& vars);
Term p_term(std::size_t n, const SPair& s);

// A term for every element of a, built breadth first from 0, 1 and the
// generators: first negations of the newest terms, then meets and joins with
// everything found so far. Throws PreconditionError when gens do not generate.
std::vector<Term> element_terms(const FinitePDL& a, const std::vector<std::size_t>& gens,
                                const std::vector<Term>& vars);

struct FreeCharReport {
  std::size_t n = 0;
  std::size_t s_size = 0;
  std::size_t atom_count = 0;
  std::size_t jirr_count = 0;
  bool atoms_ok = true;
  bool jirr_ok = true;
  bool order_iso_ok = true;
  std::vector<std::string> mismatches;

  bool ok() const { return atoms_ok && jirr_ok && order_iso_ok; }
};

FreeCharReport check_free_characterizations(std::size_t n, SReading reading = SReading::Corrected,
                                            const Caps& caps = {});

struct GeneratedCharReport {
  bool atoms_ok = true;
  bool jirr_ok = true;
  std::vector<std::string> mismatches;

  bool ok() const { return atoms_ok && jirr_ok; }
};

// Throws PreconditionError when gens do not generate a.
GeneratedCharReport check_generated_characterization(const FinitePDL& a, const std::vector<std::size_t>& gens,
                                                     SReading reading = SReading::Corrected);

}  // namespace pdl
