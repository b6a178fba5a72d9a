#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "pdl/crosscheck.hpp"
#include "pdl/errors.hpp"
#include "pdl/eval.hpp"
#include "pdl/free.hpp"

using namespace pdl;
using namespace testing;

namespace {

using Names = std::vector<std::string>;

std::size_t value(const FinitePDL& a, const std::string& term, std::size_t x1) {
  return eval_term(a, parse_term(term), {{"x1", x1}});
}

std::string same_print(const std::string& text) { return to_string(parse_term(text)); }

// Homomorphisms F -> C sending the generators to `images`, counted by
// backtracking over partial maps.
std::size_t count_homs(const FinitePDL& f, const std::vector<std::size_t>& gens, const FinitePDL& c,
                       const std::vector<std::size_t>& images) {
  std::vector<std::size_t> h(f.size(), c.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (h[gens[i]] != c.size() && h[gens[i]] != images[i]) return 0;
    h[gens[i]] = images[i];
  }
  auto consistent = [&](std::size_t k) {
    for (std::size_t i = 0; i <= k; ++i) {
      if (h[i] == c.size()) continue;
      const auto ni = f.neg(i);
      if (ni <= k && h[ni] != c.size() && h[ni] != c.neg(h[i])) return false;
      for (std::size_t j = 0; j <= k; ++j) {
        if (h[j] == c.size()) continue;
        const auto m = f.meet(i, j), s = f.join(i, j);
        if (m <= k && h[m] != c.size() && h[m] != c.meet(h[i], h[j])) return false;
        if (s <= k && h[s] != c.size() && h[s] != c.join(h[i], h[j])) return false;
      }
    }
    return true;
  };
  std::size_t count = 0;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == f.size()) {
      ++count;
      return;
    }
    if (h[k] != c.size()) {
      if (consistent(k)) self(self, k + 1);
      return;
    }
    for (std::size_t v = 0; v < c.size(); ++v) {
      h[k] = v;
      if (consistent(k)) self(self, k + 1);
    }
    h[k] = c.size();
  };
  if (f.zero() != f.one()) {
    h[f.zero()] = c.zero();
    h[f.one()] = c.one();
  }
  rec(rec, 0);
  return count;
}

}  // namespace

TEST_CASE("free_pdl(1)") {
  const auto f = free_pdl(1);
  const auto& a = f.algebra;
  CHECK(f.dual.poset.size() == 4);
  CHECK(a.size() == 7);
  REQUIRE(f.generators.size() == 1);
  const auto g = f.generators[0];
  CHECK(a.element_names(g) == Names{M});
  CHECK(a.element_names(a.neg(g)) == Names{Q});
  CHECK(a.element_names(a.neg(a.neg(g))) == Names{P, M});
  CHECK(atoms(a).size() == 2);
  CHECK(join_irreducibles(a).size() == 4);

  std::set<std::size_t> values;
  for (const char* t : {"0", "x1", "!x1", "!!x1", "x1 | !x1", "!x1 | !!x1", "1"}) values.insert(value(a, t, g));
  CHECK(values.size() == 7);

  std::set<std::size_t> at, ji;
  for (const char* t : {"x1", "!x1"}) at.insert(value(a, t, g));
  for (const char* t : {"x1", "!x1", "!!x1", "1"}) ji.insert(value(a, t, g));
  const auto fa = atoms(a), fj = join_irreducibles(a);
  CHECK(at == std::set<std::size_t>(fa.begin(), fa.end()));
  CHECK(ji == std::set<std::size_t>(fj.begin(), fj.end()));
}

TEST_CASE("free_pdl(2)") {
  const auto f = free_pdl(2);
  CHECK(f.dual.poset.size() == 22);
  CHECK(f.algebra.size() == 626);
  CHECK(atoms(f.algebra).size() == 4);
  CHECK(join_irreducibles(f.algebra).size() == 22);
  CHECK_THROWS_AS(free_pdl(3), CapExceededError);
}

TEST_CASE("generators generate") {
  for (std::size_t n : {1u, 2u}) {
    const auto f = free_pdl(n);
    CHECK(subalgebra_closure(f.algebra, f.generators).all());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& g = f.algebra.element(f.generators[i]);
      for (std::size_t p = 0; p < f.dual.pairs.size(); ++p)
        CHECK(g.test(p) == (((f.dual.pairs[p].base >> i) & 1U) == 1U));
    }
  }
}

TEST_CASE("a_term examples") {
  CHECK(to_string(a_term(1, 1)) == "x1");
  CHECK(to_string(a_term(1, 0)) == "!x1");
  CHECK(to_string(a_term(2, 1)) == "x1 & !x2");
  CHECK(to_string(a_term(2, 3)) == "x1 & x2");
}

TEST_CASE("p_term examples") {
  const auto f = free_pdl(1);
  const auto& a = f.algebra;
  const auto g = f.generators[0];
  auto eval = [&](const Term& t) { return a.element_names(eval_term(a, t, {{"x1", g}})); };

  const SPair x{1, 0b10};
  CHECK(to_string(p_term(1, x)) == same_print("x1 & !!(x1)"));
  CHECK(eval(p_term(1, x)) == Names{M});
  const SPair nx{0, 0b01};
  CHECK(to_string(p_term(1, nx)) == same_print("!!(!x1)"));
  CHECK(eval(p_term(1, nx)) == Names{Q});
  const SPair one{0, 0b11};
  CHECK(to_string(p_term(1, one)) == same_print("!!(x1 | !x1)"));
  CHECK(eval(p_term(1, one)) == Names{Q, P, B, M});
}

TEST_CASE("s_pairs under both readings") {
  CHECK(s_pairs(1).size() == 4);
  CHECK(s_pairs(2).size() == 22);
  CHECK(s_pairs(1, SReading::Literal).size() <= 2);
  for (const auto& s : s_pairs(2)) {
    CHECK(s.t != 0);
    for (std::uint32_t m = 0; m < 4; ++m)
      if ((s.t >> m) & 1U) CHECK((s.l & ~m) == 0);
  }
}

TEST_CASE("check_free_characterizations") {
  for (std::size_t n : {1u, 2u}) {
    const auto r = check_free_characterizations(n);
    CHECK(r.ok());
    CHECK(r.mismatches.empty());
    CHECK(r.atom_count == (std::size_t{1} << n));
  }
  CHECK(check_free_characterizations(1).s_size == 4);
  CHECK(check_free_characterizations(1).jirr_count == 4);
  CHECK(check_free_characterizations(2).s_size == 22);
  CHECK(check_free_characterizations(2).jirr_count == 22);

  const auto literal = check_free_characterizations(1, SReading::Literal);
  CHECK_FALSE(literal.ok());
  CHECK(literal.s_size < 4);

  // x <= !!x on both sides.
  const SPair x{1, 0b10}, nnx{0, 0b10};
  CHECK(spair_leq(x, nnx));
  CHECK_FALSE(spair_leq(nnx, x));
  const auto f = free_pdl(1);
  const auto g = f.generators[0];
  CHECK(f.algebra.leq(eval_term(f.algebra, p_term(1, x), {{"x1", g}}),
                      eval_term(f.algebra, p_term(1, nnx), {{"x1", g}})));
}

TEST_CASE("check_generated_characterization") {
  const auto f = free_pdl(1);
  CHECK(check_generated_characterization(f.algebra, f.generators).ok());

  const auto fork = from_dual(fork_poset());
  const auto u = fork.index_of_names({"a1"});
  CHECK(fork.neg(u) == fork.index_of_names({"a2"}));
  CHECK(check_generated_characterization(fork, {u}).ok());

  const auto two = from_dual(singleton());
  CHECK(check_generated_characterization(two, {two.one()}).ok());

  const auto p2 = from_dual(p_extension(boolean_poset(2)).poset);
  CHECK_THROWS_AS(check_generated_characterization(p2, {p2.one()}), PreconditionError);
}

TEST_CASE("element_terms name every element") {
  for (std::size_t n : {1u, 2u}) {
    const auto f = free_pdl(n);
    const auto vars = default_variables(n);
    const auto terms = element_terms(f.algebra, f.generators, vars);
    REQUIRE(terms.size() == f.algebra.size());
    Assignment v;
    for (std::size_t i = 0; i < n; ++i) v[to_string(vars[i])] = f.generators[i];
    for (std::size_t e = 0; e < terms.size(); ++e) CHECK(eval_term(f.algebra, terms[e], v) == e);
  }
  const auto p1 = from_dual(p_extension(boolean_poset(1)).poset);
  CHECK_THROWS_AS(element_terms(p1, {p1.zero()}, default_variables(1)), PreconditionError);
}

TEST_CASE("universal mapping property") {
  std::vector<FinitePDL> targets;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& x : posets_up_to_iso(n)) targets.push_back(from_dual(x));

  // n = 1: exactly one homomorphism per generator image, counted by search.
  const auto f1 = free_pdl(1);
  for (const auto& c : targets)
    for (std::size_t v = 0; v < c.size(); ++v) CHECK(count_homs(f1.algebra, f1.generators, c, {v}) == 1);

  // n = 2: the term presentation gives a homomorphism; it is unique because
  // the generators generate.
  const auto f2 = free_pdl(2);
  const auto terms = element_terms(f2.algebra, f2.generators, default_variables(2));
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, f2.algebra.size() - 1);
  for (const auto& c : targets) {
    if (c.size() > 8) continue;
    for (std::size_t v1 = 0; v1 < c.size(); ++v1) {
      for (std::size_t v2 = 0; v2 < c.size(); ++v2) {
        std::vector<std::size_t> h(terms.size());
        for (std::size_t e = 0; e < terms.size(); ++e) h[e] = eval_term(c, terms[e], {{"x1", v1}, {"x2", v2}});
        CHECK(h[f2.generators[0]] == v1);
        CHECK(h[f2.generators[1]] == v2);
        for (int s = 0; s < 200; ++s) {
          const auto a = pick(rng), b = pick(rng);
          CHECK(h[f2.algebra.meet(a, b)] == c.meet(h[a], h[b]));
          CHECK(h[f2.algebra.join(a, b)] == c.join(h[a], h[b]));
          CHECK(h[f2.algebra.neg(a)] == c.neg(h[a]));
        }
      }
    }
  }
}

TEST_CASE("F(1) embeds into F(2)") {
  const auto f1 = free_pdl(1).algebra;
  const auto f2 = free_pdl(2).algebra;
  const auto h = embeds(f1, f2);
  REQUIRE(h.has_value());
  CHECK(is_embedding(f1, f2, *h));
}
