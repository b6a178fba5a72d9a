#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pdl/caps.hpp"
#include "pdl/poset.hpp"

namespace pdl {

// Upset algebra of a finite poset. Elements are indices into the list of all
// upsets sorted by bitmask value, so 0 is the empty upset and size()-1 the
// full one.
class FinitePDL {
 public:
  FinitePDL();
  static FinitePDL from_dual(FinitePoset dual, const Caps& caps = {});

  const FinitePoset& dual() const { return d_->dual; }
  std::size_t size() const { return d_->elements.size(); }
  const std::vector<ElementSet>& elements() const { return d_->elements; }
  const ElementSet& element(std::size_t i) const { return d_->elements.at(i); }
  std::optional<std::size_t> find(const ElementSet& upset) const;
  std::size_t index_of(const ElementSet& upset) const;  // throws UnknownElementError
  std::size_t index_of_names(const std::vector<std::string>& names) const;

  std::size_t zero() const { return 0; }
  std::size_t one() const { return size() - 1; }
  std::size_t meet(std::size_t a, std::size_t b) const { return index_of(element(a) & element(b)); }
  std::size_t join(std::size_t a, std::size_t b) const { return index_of(element(a) | element(b)); }
  std::size_t neg(std::size_t a) const { return index_of(neg_set(element(a))); }
  bool leq(std::size_t a, std::size_t b) const { return element(a).is_subset_of(element(b)); }

  // Complement of the down-closure: the pseudocomplement in the upset algebra.
  ElementSet neg_set(const ElementSet& u) const { return ~dual().down_set(u); }

  std::vector<std::string> element_names(std::size_t i) const { return dual().names_of(element(i)); }
  std::string element_label(std::size_t i) const;

  const std::vector<std::size_t>& generators() const { return d_->generators; }
  FinitePDL with_generators(std::vector<std::size_t> gens) const;

 private:
  struct Data {
    FinitePoset dual;
    std::vector<ElementSet> elements;
    std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;
    std::vector<std::size_t> generators;
  };
  std::shared_ptr<const Data> d_;
};

// All upsets of a poset, sorted by bitmask value.
std::vector<ElementSet> enumerate_upsets(const FinitePoset& p, std::size_t cap);

FinitePDL from_dual(const FinitePoset& x, const Caps& caps = {});

struct ExplicitLattice {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq;  // (lower, upper)
};

struct ValidatedLattice {
  FinitePoset order;               // the input order
  FinitePDL algebra;               // isomorphic upset algebra
  std::vector<std::size_t> embed;  // explicit element -> algebra element
};

FinitePoset dual_of(const ExplicitLattice& l);
ValidatedLattice validate_explicit(const ExplicitLattice& l);

std::vector<std::size_t> join_irreducibles(const FinitePDL& a);
std::vector<std::size_t> atoms(const FinitePDL& a);
std::size_t pseudocomplement(const FinitePDL& a, std::size_t x);

struct Subalgebra {
  FinitePDL algebra;
  std::vector<std::size_t> inclusion;  // subalgebra element -> ambient element
  ElementSet members;                  // over ambient element indices
};

// Closure of gens together with 0 and 1 under meet, join and negation, as a
// set of ambient element indices.
ElementSet subalgebra_closure(const FinitePDL& a, const std::vector<std::size_t>& gens);
Subalgebra generated_subalgebra(const FinitePDL& a, const std::vector<std::size_t>& gens);
// Dual poset of a subset of `a` closed under the operations.
FinitePoset subalgebra_dual(const FinitePDL& a, const ElementSet& members);

bool is_exact(const FinitePDL& a);

struct SigmaReport {
  bool holds = true;
  std::size_t subalgebras_checked = 0;
  std::optional<ElementSet> failing;  // members of a subalgebra without a free skeleton
};
SigmaReport sigma_check(const FinitePDL& a, std::size_t generator_budget);
bool satisfies_sigma(const FinitePDL& a, std::size_t generator_budget);

// Injective homomorphism a -> b as element indices, dual to a surjective weak
// p-morphism b_* -> a_*.
std::optional<std::vector<std::size_t>> embeds(const FinitePDL& a, const FinitePDL& b, const Caps& caps = {});
bool is_embedding(const FinitePDL& a, const FinitePDL& b, const std::vector<std::size_t>& h);

// Lattice-side form of the free skeleton condition: nontrivial, a monotone
// family c(a, Y) of join-irreducibles for each join-irreducible a, and
// double negations of nonzero elements join-irreducible. Join-irreducibles
// and atoms are computed from the lattice order alone.
bool lattice_skeleton_conditions(const FinitePDL& a);

}  // namespace pdl
