#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pdl/crosscheck.hpp"
#include "pdl/errors.hpp"
#include "pdl/skeleton.hpp"

using namespace pdl;
using namespace testing;

namespace {

bool bounded(const FinitePoset& p) { return p.minimum().has_value() && p.maximum().has_value(); }

FinitePoset diamond() {
  return build_poset({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
}

}  // namespace

TEST_CASE("bounded posets have a skeleton") {
  for (const auto& x : {chain(3), diamond(), singleton()}) {
    const auto w = check_free_skeleton(x);
    REQUIRE(w.has_value());
    CHECK(verify_witness(*w));
  }
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& x : posets_up_to_iso(n))
      if (bounded(x)) CHECK(check_free_skeleton(x).has_value());
}

TEST_CASE("FORK witness") {
  const auto x = fork_poset();
  const auto w = check_free_skeleton(x);
  REQUIRE(w.has_value());
  CHECK(verify_witness(*w));
  CHECK(w->bottom == x.index_of("b"));
  const auto b = x.index_of("b");
  CHECK(w->at(b, x.set_of({"a1"})) == x.index_of("a1"));
  CHECK(w->at(b, x.set_of({"a2"})) == x.index_of("a2"));
  CHECK(w->at(b, x.set_of({"a1", "a2"})) == b);
  // Every (x, Y) key is present.
  CHECK(w->s.size() == 5);
}

TEST_CASE("TRIFORK and antichains have none") {
  CHECK_FALSE(check_free_skeleton(trifork_poset()).has_value());
  CHECK_FALSE(brute_force_skeleton(trifork_poset()).has_value());
  CHECK_FALSE(check_free_skeleton(antichain(2)).has_value());
  CHECK_FALSE(brute_force_skeleton(antichain(2)).has_value());
  CHECK(brute_force_skeleton(fork_poset()).has_value());
}

TEST_CASE("verify_witness rejects tampered families") {
  const auto x = fork_poset();
  auto w = *check_free_skeleton(x);
  const auto b = x.index_of("b");
  w.s[{b, x.set_of({"a1", "a2"})}] = x.index_of("a1");
  CHECK_FALSE(verify_witness(w));
  REQUIRE(witness_violation(w).has_value());

  auto missing = *check_free_skeleton(x);
  missing.s.erase(missing.s.begin());
  CHECK_FALSE(verify_witness(missing));

  auto wrong_bottom = *check_free_skeleton(x);
  wrong_bottom.bottom = x.index_of("a2");
  CHECK_FALSE(verify_witness(wrong_bottom));
}

TEST_CASE("singleton witness") {
  const auto w = check_free_skeleton(singleton());
  REQUIRE(w.has_value());
  CHECK(w->s.size() == 1);
  CHECK(verify_witness(*w));
}

TEST_CASE("checker agrees with brute force on small posets") {
  std::size_t compared = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& x : posets_up_to_iso(n)) {
      const auto fast = check_free_skeleton(x);
      const auto slow = brute_force_skeleton(x);
      CHECK(fast.has_value() == slow.has_value());
      if (fast) CHECK(verify_witness(*fast));
      if (slow) CHECK(verify_witness(*slow));
      ++compared;
    }
  }
  CHECK(compared == 1 + 2 + 5 + 16 + 63);
}

TEST_CASE("skeleton stats add up") {
  SkeletonStats st;
  const auto w = check_free_skeleton(p_extension(boolean_poset(2)).poset, &st);
  REQUIRE(w.has_value());
  CHECK(st.elements == 21);
  CHECK(st.greedy_succeeded + st.greedy_failed_backtrack_succeeded + st.no_family == st.elements);
}

TEST_CASE("free duals have a skeleton") {
  for (std::size_t n : {1u, 2u}) {
    const auto w = check_free_skeleton(p_extension(boolean_poset(n)).poset);
    REQUIRE(w.has_value());
    CHECK(verify_witness(*w));
  }
}

TEST_CASE("restrict_witness examples") {
  const auto x = fork_poset();
  const auto w = *check_free_skeleton(x);

  const auto whole = restrict_witness(w, x.set_of({"a1", "a2"}));
  CHECK(whole.poset.size() == 3);
  CHECK(verify_witness(whole));

  const auto one = restrict_witness(w, x.set_of({"a1"}));
  CHECK(one.poset.size() == 1);
  CHECK(one.poset.name(0) == "a1");
  CHECK(verify_witness(one));

  const auto p1 = p_extension(boolean_poset(1)).poset;
  const auto wp = *check_free_skeleton(p1);
  const auto q = restrict_witness(wp, p1.set_of({Q}));
  CHECK(q.poset.elements() == std::vector<std::string>{Q});
  CHECK(verify_witness(q));

  CHECK_THROWS_AS(restrict_witness(w, x.set_of({"b"})), PreconditionError);
}

TEST_CASE("restrict_witness output always verifies") {
  std::mt19937_64 rng(17);
  std::size_t restricted = 0;
  for (int round = 0; round < 300; ++round) {
    const auto x = random_poset(rng, 2 + round % 7, 0.5);
    const auto w = check_free_skeleton(x);
    if (!w) continue;
    for (const auto& y : nonempty_subsets(x.maximal())) {
      const auto r = restrict_witness(*w, y);
      CHECK(verify_witness(r));
      CHECK(r.poset.maximal().count() == y.count());
      ++restricted;
    }
  }
  CHECK(restricted > 100);
}
