#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "pdl/algebra.hpp"
#include "pdl/crosscheck.hpp"
#include "pdl/errors.hpp"
#include "pdl/formulas.hpp"
#include "pdl/free.hpp"
#include "pdl/skeleton.hpp"

using namespace pdl;
using namespace testing;

namespace {

using Names = std::vector<std::string>;

std::set<Names> element_name_sets(const FinitePDL& a, const std::vector<std::size_t>& idx) {
  std::set<Names> out;
  for (auto i : idx) out.insert(a.element_names(i));
  return out;
}

// Atoms and join-irreducibles from the lattice order alone.
std::vector<std::size_t> atoms_by_order(const FinitePDL& a) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (x == a.zero()) continue;
    bool minimal = true;
    for (std::size_t y = 0; y < a.size(); ++y)
      if (y != a.zero() && y != x && a.leq(y, x)) minimal = false;
    if (minimal) out.push_back(x);
  }
  return out;
}

std::vector<std::size_t> jirr_by_order(const FinitePDL& a) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (x == a.zero()) continue;
    bool split = false;
    for (std::size_t y = 0; y < a.size() && !split; ++y)
      for (std::size_t z = 0; z < a.size() && !split; ++z)
        if (y != x && z != x && a.join(y, z) == x) split = true;
    if (!split) out.push_back(x);
  }
  return out;
}

ExplicitLattice chain_lattice(std::size_t n) {
  ExplicitLattice l;
  for (std::size_t i = 0; i < n; ++i) {
    l.elements.push_back("c" + std::to_string(i));
    if (i) l.leq.emplace_back(l.elements[i - 1], l.elements[i]);
  }
  return l;
}

ExplicitLattice boolean4() { return {{"0", "p", "q", "1"}, {{"0", "p"}, {"0", "q"}, {"p", "1"}, {"q", "1"}}}; }

std::vector<FinitePDL> small_algebras(std::size_t max_dual) {
  std::vector<FinitePDL> out;
  for (std::size_t n = 1; n <= max_dual; ++n)
    for (const auto& x : posets_up_to_iso(n)) out.push_back(from_dual(x));
  return out;
}

}  // namespace

TEST_CASE("from_dual examples") {
  CHECK(from_dual(singleton()).size() == 2);
  const auto f = from_dual(fork_poset());
  CHECK(f.size() == 5);
  std::set<Names> all;
  for (std::size_t i = 0; i < f.size(); ++i) all.insert(f.element_names(i));
  CHECK(all == std::set<Names>{{}, {"a1"}, {"a2"}, {"a1", "a2"}, {"b", "a1", "a2"}});
  CHECK(from_dual(p_extension(boolean_poset(1)).poset).size() == 7);
  CHECK(f.zero() == f.index_of_names({}));
  CHECK(f.one() == f.index_of_names({"b", "a1", "a2"}));
}

TEST_CASE("dual_of examples") {
  CHECK(dual_of(chain_lattice(2)).size() == 1);
  const auto d = dual_of(boolean4());
  CHECK(d.size() == 2);
  CHECK(d.covers().empty());

  // F(1) written out explicitly.
  ExplicitLattice f1{{"0", "x", "nx", "nnx", "x_or_nx", "nx_or_nnx", "1"},
                     {{"0", "x"}, {"0", "nx"}, {"x", "nnx"}, {"x", "x_or_nx"}, {"nx", "x_or_nx"},
                      {"nnx", "nx_or_nnx"}, {"x_or_nx", "nx_or_nnx"}, {"nx_or_nnx", "1"}}};
  const auto v = validate_explicit(f1);
  CHECK(isomorphic(dual_of(f1), p_extension(boolean_poset(1)).poset));
  const auto jirr = dual_of(f1).elements();
  CHECK(std::set<std::string>(jirr.begin(), jirr.end()) == std::set<std::string>{"x", "nx", "nnx", "1"});
  CHECK(v.algebra.size() == 7);
}

TEST_CASE("validate_explicit examples") {
  ExplicitLattice m3{{"0", "a", "b", "c", "1"},
                     {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}}};
  CHECK_THROWS_AS(validate_explicit(m3), NotDistributiveError);
  ExplicitLattice n5{{"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}}};
  CHECK_THROWS_AS(validate_explicit(n5), NotDistributiveError);
  ExplicitLattice no_top{{"0", "a", "b"}, {{"0", "a"}, {"0", "b"}}};
  CHECK_THROWS_AS(validate_explicit(no_top), NotALatticeError);
  // Two minimal upper bounds for {a, b}.
  ExplicitLattice bowtie{{"0", "a", "b", "c", "d", "1"},
                         {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "1"}, {"d", "1"}}};
  CHECK_THROWS_AS(validate_explicit(bowtie), NotALatticeError);

  const auto b = validate_explicit(boolean4());
  const auto& a = b.algebra;
  const auto p = b.embed[1], q = b.embed[2];
  CHECK(a.neg(p) == q);
  CHECK(a.neg(q) == p);

  const auto c = validate_explicit(chain_lattice(5));
  CHECK(c.algebra.size() == 5);
  CHECK(c.algebra.neg(c.embed[0]) == c.embed[4]);
  for (std::size_t i = 1; i < 5; ++i) CHECK(c.algebra.neg(c.embed[i]) == c.embed[0]);
}

TEST_CASE("join_irreducibles and atoms") {
  const auto f = from_dual(fork_poset());
  CHECK(element_name_sets(f, join_irreducibles(f)) == std::set<Names>{{"a1"}, {"a2"}, {"b", "a1", "a2"}});
  CHECK(element_name_sets(f, atoms(f)) == std::set<Names>{{"a1"}, {"a2"}});

  const auto p1 = from_dual(p_extension(boolean_poset(1)).poset);
  CHECK(join_irreducibles(p1).size() == 4);
  CHECK(atoms(p1).size() == 2);

  const auto two = from_dual(singleton());
  CHECK(join_irreducibles(two) == std::vector<std::size_t>{two.one()});
  CHECK(atoms(two) == std::vector<std::size_t>{two.one()});

  for (const auto& a : small_algebras(5)) {
    const auto j = join_irreducibles(a), at = atoms(a);
    const auto jo = jirr_by_order(a), ao = atoms_by_order(a);
    CHECK(std::set<std::size_t>(j.begin(), j.end()) == std::set<std::size_t>(jo.begin(), jo.end()));
    CHECK(std::set<std::size_t>(at.begin(), at.end()) == std::set<std::size_t>(ao.begin(), ao.end()));
  }
}

TEST_CASE("pseudocomplement examples and laws") {
  const auto p1 = from_dual(p_extension(boolean_poset(1)).poset);
  CHECK(p1.element_names(pseudocomplement(p1, p1.index_of_names({M}))) == Names{Q});
  CHECK(pseudocomplement(p1, p1.zero()) == p1.one());
  CHECK(pseudocomplement(p1, p1.one()) == p1.zero());
  CHECK_THROWS_AS(pseudocomplement(p1, 99), UnknownElementError);

  auto algebras = small_algebras(5);
  algebras.push_back(p1);
  for (const auto& a : algebras) {
    REQUIRE(a.size() <= 64);
    for (std::size_t x = 0; x < a.size(); ++x) {
      CHECK(a.neg(a.neg(a.neg(x))) == a.neg(x));
      for (std::size_t y = 0; y < a.size(); ++y) CHECK(a.leq(x, a.neg(y)) == (a.meet(x, y) == a.zero()));
    }
  }
}

TEST_CASE("generated_subalgebra examples") {
  const auto p1 = from_dual(p_extension(boolean_poset(1)).poset);
  const auto q = p1.index_of_names({Q});
  const auto sub = generated_subalgebra(p1, {q});
  std::set<Names> members;
  for (auto i : sub.members.members()) members.insert(p1.element_names(i));
  CHECK(members == std::set<Names>{{}, {Q}, {P, M}, {Q, P, M}, {Q, P, B, M}});
  CHECK(sub.algebra.size() == 5);
  CHECK(is_embedding(sub.algebra, p1, sub.inclusion));

  CHECK(generated_subalgebra(p1, {}).algebra.size() == 2);
  std::vector<std::size_t> everything(p1.size());
  for (std::size_t i = 0; i < p1.size(); ++i) everything[i] = i;
  CHECK(generated_subalgebra(p1, everything).algebra.size() == 7);
}

TEST_CASE("is_exact examples") {
  CHECK(is_exact(from_dual(fork_poset())));
  const auto tri = from_dual(trifork_poset());
  CHECK(tri.size() == 9);
  CHECK_FALSE(is_exact(tri));
  CHECK_FALSE(is_exact(validate_explicit(boolean4()).algebra));
}

TEST_CASE("satisfies_sigma examples") {
  const auto p1 = from_dual(p_extension(boolean_poset(1)).poset);
  CHECK(satisfies_sigma(p1, p1.size()));
  const auto tri = from_dual(trifork_poset());
  CHECK_FALSE(satisfies_sigma(tri, tri.size()));
  const auto r = sigma_check(tri, tri.size());
  REQUIRE(r.failing.has_value());
  const auto failing = subalgebra_dual(tri, *r.failing);
  CHECK_FALSE(check_free_skeleton(failing).has_value());
  const auto two = from_dual(singleton());
  CHECK(satisfies_sigma(two, 1));
  CHECK(satisfies_sigma(two, 5));
}

TEST_CASE("embeds examples") {
  const auto fork = from_dual(fork_poset());
  const auto p1 = from_dual(p_extension(boolean_poset(1)).poset);
  const auto h = embeds(fork, p1);
  REQUIRE(h.has_value());
  CHECK(is_embedding(fork, p1, *h));
  std::set<Names> atom_images;
  for (auto a : atoms(fork)) atom_images.insert(p1.element_names((*h)[a]));
  CHECK(atom_images == std::set<Names>{{Q}, {P, M}});

  const auto id = embeds(fork, fork);
  REQUIRE(id.has_value());
  CHECK(is_embedding(fork, fork, *id));

  const auto b4 = validate_explicit(boolean4()).algebra;
  const auto p2 = from_dual(p_extension(boolean_poset(2)).poset);
  CHECK_FALSE(embeds(b4, p2).has_value());

  std::vector<std::size_t> not_injective(fork.size(), fork.zero());
  CHECK_FALSE(is_embedding(fork, p1, std::vector<std::size_t>(fork.size(), p1.zero())));
  CHECK_FALSE(is_embedding(fork, fork, not_injective));
}

TEST_CASE("duality round trips") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& x : posets_up_to_iso(n)) {
      const auto a = from_dual(x);
      ExplicitLattice l;
      for (std::size_t i = 0; i < a.size(); ++i) l.elements.push_back("e" + std::to_string(i));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
          if (i != j && a.leq(i, j)) l.leq.emplace_back(l.elements[i], l.elements[j]);
      CHECK(isomorphic(dual_of(l), x));
    }
  }
  for (const auto& [name, l] : explicit_corpus()) {
    ValidatedLattice v;
    try {
      v = validate_explicit(l);
    } catch (const Error&) {
      continue;
    }
    CAPTURE(name);
    CHECK(v.algebra.size() == l.elements.size());
    CHECK(isomorphic(dual_of(l), v.algebra.dual()));
    for (std::size_t i = 0; i < l.elements.size(); ++i)
      for (std::size_t j = 0; j < l.elements.size(); ++j)
        CHECK(v.order.leq(i, j) == v.algebra.leq(v.embed[i], v.embed[j]));
  }
}

TEST_CASE("lattice-side skeleton conditions agree with the poset side") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& x : posets_up_to_iso(n)) {
      const auto a = from_dual(x);
      CHECK(lattice_skeleton_conditions(a) == check_free_skeleton(x).has_value());
    }
  }
}

TEST_CASE("atoms and join-irreducibles under surjective homomorphisms") {
  // Quotients are max-closed subsets S of the dual, with h(U) = U & S.
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& x : posets_up_to_iso(n)) {
      const auto a = from_dual(x);
      for (const auto& s : max_closed_subsets(x)) {
        if (s.none()) continue;
        const auto sub = x.induced(s);
        const auto b = from_dual(sub);
        const auto members = s.members();
        std::vector<std::size_t> h(a.size());
        for (std::size_t u = 0; u < a.size(); ++u) {
          ElementSet img(sub.size());
          for (std::size_t i = 0; i < members.size(); ++i)
            if (a.element(u).test(members[i])) img.set(i);
          h[u] = b.index_of(img);
        }
        std::set<std::size_t> img_atoms, img_jirr;
        for (auto at : atoms_by_order(a))
          if (h[at] != b.zero()) img_atoms.insert(h[at]);
        for (auto j : jirr_by_order(a)) {
          std::size_t below = b.zero();
          for (std::size_t c = 0; c < a.size(); ++c)
            if (c != j && a.leq(c, j)) below = b.join(below, h[c]);
          if (h[j] != below) img_jirr.insert(h[j]);
        }
        const auto ba = atoms_by_order(b), bj = jirr_by_order(b);
        CHECK(img_atoms == std::set<std::size_t>(ba.begin(), ba.end()));
        CHECK(img_jirr == std::set<std::size_t>(bj.begin(), bj.end()));
        ++checked;
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("exactness agrees with the diagram test in small free algebras") {
  const auto f1 = free_pdl(1).algebra;
  const auto f2 = free_pdl(2).algebra;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& x : posets_up_to_iso(n)) {
      const auto a = from_dual(x);
      const bool via_diagram = embedding_via_diagram(a, f1) || embedding_via_diagram(a, f2);
      CHECK(is_exact(a) == via_diagram);
    }
  }
}
