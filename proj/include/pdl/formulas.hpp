#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pdl/algebra.hpp"
#include "pdl/caps.hpp"
#include "pdl/eval.hpp"
#include "pdl/free.hpp"
#include "pdl/term.hpp"

namespace pdl {

// Positive diagram first (constants, then !, &, | tables in element order),
// then x_m != x_k for m < k. Element i is variable x{i+1}.
std::vector<Formula> diagram_literals(const FinitePDL& a);
Formula diagram(const FinitePDL& a);

// Assignment of a's elements into b satisfying the diagram. Backtracks over
// the elements not yet forced by the operation tables.
std::optional<std::vector<std::size_t>> diagram_embedding(const FinitePDL& a, const FinitePDL& b,
                                                          const Caps& caps = {});
bool embedding_via_diagram(const FinitePDL& a, const FinitePDL& b, const Caps& caps = {});

// Builds the At and Jirr formulas over a fixed variable tuple, sharing the
// p-terms and the joins below them between calls.
class FamilyBuilder {
 public:
  explicit FamilyBuilder(std::vector<Term> vars, SReading reading = SReading::Corrected);

  const std::vector<Term>& variables() const { return vars_; }
  const std::vector<SPair>& pairs() const { return pairs_; }
  const std::vector<Term>& p_terms() const { return p_; }

  Formula at(const Term& t) const;
  Formula jirr(const Term& t) const;

 private:
  std::vector<Term> vars_;
  std::vector<SPair> pairs_;
  std::vector<Term> a_;      // a_T by decreasing mask
  std::vector<Term> p_;      // in pairs_ order
  std::vector<Term> below_;  // join of p over strictly smaller pairs
};

Formula gen_At(const Term& t, std::size_t n);
Formula gen_Jirr(const Term& t, std::size_t n, SReading reading = SReading::Corrected);

Formula gen_P(std::size_t n, std::size_t m, std::size_t h);
Formula gen_Q(std::size_t n, std::size_t m, std::size_t h);
// P over x1..xn, y1..ym; Q additionally over z1..zk.
Formula gen_F(std::size_t n, std::size_t m, std::size_t k, const Formula& p, const Formula& q,
              const Caps& caps = {}, SReading reading = SReading::Corrected);
Formula gen_FS(std::size_t n, std::size_t m, std::size_t h, const Caps& caps = {});
Formula gen_DN();

std::vector<Term> xyz_variables(std::size_t n, std::size_t m, std::size_t k = 0);

}  // namespace pdl
