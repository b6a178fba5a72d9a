#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "helpers.hpp"
#include "pdl/decide.hpp"
#include "pdl/eval.hpp"
#include "pdl/formulas.hpp"
#include "pdl/free.hpp"
#include "pdl/io.hpp"
#include "pdl/skeleton.hpp"

using namespace pdl;
using namespace testing;

namespace {

using Names = std::vector<std::string>;

Verdict run(const std::string& text) { return decide(parse_sentence(text)); }

Names witness_dual(const Verdict& v) {
  REQUIRE(v.witness.has_value());
  return v.witness->dual.elements();
}

Term random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> d(0, depth <= 0 ? 1 : 4);
  switch (d(rng)) {
    case 0: return Term::var(vars[rng() % vars.size()]);
    case 1: return (rng() % 3 == 0) ? ((rng() & 1) ? Term::zero() : Term::one()) : Term::var(vars[rng() % vars.size()]);
    case 2: return !random_term(rng, vars, depth - 1);
    case 3: return random_term(rng, vars, depth - 1) & random_term(rng, vars, depth - 1);
    default: return random_term(rng, vars, depth - 1) | random_term(rng, vars, depth - 1);
  }
}

Formula random_matrix(std::mt19937_64& rng, const std::vector<std::string>& vars) {
  auto atom = [&] {
    auto l = random_term(rng, vars, 3), r = random_term(rng, vars, 2);
    return (rng() % 3 == 0) ? Formula::neq(l, r) : Formula::eq(l, r);
  };
  switch (rng() % 4) {
    case 0: return atom();
    case 1: return Formula::disj(atom(), atom());
    case 2: return Formula::implies(atom(), atom());
    default: return Formula::implies(atom(), Formula::disj(atom(), atom()));
  }
}

}  // namespace

TEST_CASE("valid sentences") {
  const auto c = run("x1 & !x1 = 0");
  CHECK(c.kind == VerdictKind::Valid);
  CHECK(c.checked_quotients == 5);
  CHECK(verify_verdict(parse_sentence("x1 & !x1 = 0"), c));

  // Fails in the four-element Boolean algebra, holds in the free algebra.
  const std::string text = "x1 | !x1 = 1 -> (x1 = 1 or x1 = 0)";
  CHECK_FALSE(holds_universal(from_dual(antichain(2)), parse_sentence(text)));
  const auto v = run(text);
  CHECK(v.kind == VerdictKind::Valid);
  CHECK(verify_verdict(parse_sentence(text), v));
}

TEST_CASE("invalid sentences carry verifying witnesses") {
  for (const char* text : {"!!x1 = x1", "!x1 | !!x1 = 1", "x1 = !!x1 or !x1 != 0"}) {
    CAPTURE(text);
    const auto s = parse_sentence(text);
    const auto v = decide(s);
    CHECK(v.kind == VerdictKind::Invalid);
    REQUIRE(v.witness.has_value());
    CHECK(verify_verdict(s, v));
    // The witness algebra is exact and generated by the assignment.
    const auto& w = *v.witness;
    CHECK(check_free_skeleton(w.dual).has_value());
    const auto a = from_dual(w.dual);
    std::vector<std::size_t> gens;
    Assignment asg;
    for (const auto& [name, set] : w.assignment) {
      gens.push_back(a.index_of(set));
      asg[name] = a.index_of(set);
    }
    CHECK(subalgebra_closure(a, gens).all());
    CHECK_FALSE(eval_formula(a, s.matrix, asg));
  }
}

TEST_CASE("witness for x1 = !!x1 or !x1 != 0") {
  const auto v = run("x1 = !!x1 or !x1 != 0");
  CHECK(witness_dual(v) == Names{P, M});
  const auto& w = *v.witness;
  const auto a = from_dual(w.dual);
  const auto x = a.index_of(w.assignment.at("x1"));
  CHECK(a.size() == 3);
  CHECK(a.element_names(x) == Names{M});
  CHECK(a.neg(x) == a.zero());
  CHECK(a.neg(a.neg(x)) == a.one());
}

TEST_CASE("the whole dual also refutes !!x1 = x1") {
  const auto s = parse_sentence("!!x1 = x1");
  const auto f = free_pdl(1);
  CHECK_FALSE(eval_formula(f.algebra, s.matrix, {{"x1", f.generators[0]}}));
  const auto v = decide(s);
  REQUIRE(v.witness.has_value());
  // The engine reports the first failing quotient in enumeration order.
  CHECK(witness_dual(v) == Names{P, M});
}

TEST_CASE("DN is unknown at default caps") {
  const auto s = UniversalSentence::close(gen_DN());
  const auto v = decide(s);
  CHECK(v.kind == VerdictKind::Unknown);
  CHECK_FALSE(v.reason.empty());
  REQUIRE_FALSE(v.fallbacks.empty());
  for (const auto& fb : v.fallbacks) CHECK(fb.status != FallbackResult::Status::Fails);
  CHECK(v.fallbacks[0].n == 1);
  CHECK(v.fallbacks[0].status == FallbackResult::Status::Holds);
  CHECK(verify_verdict(s, v));
}

TEST_CASE("a fallback failure is a definitive Invalid") {
  // Three variables, fails already at a generator of F(1).
  const auto s = parse_sentence("x1 | !x1 = 1 or x2 = x3");
  const auto v = decide(s);
  CHECK(v.kind == VerdictKind::Invalid);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->source == "fallback");
  CHECK(verify_verdict(s, v));
}

TEST_CASE("exact quotients of F(1)") {
  const auto qs = enumerate_exact_quotients(1);
  REQUIRE(qs.size() == 5);
  const auto table = quotient_table(1);
  CHECK(table->max_closed_total == 8);
  const auto& p = table->pext.poset;
  std::set<Names> duals;
  for (const auto& q : qs) duals.insert(p.names_of(q.subset));
  CHECK(duals == std::set<Names>{{M}, {Q}, {P, M}, {Q, B, M}, {Q, P, B, M}});

  for (const auto& q : qs) {
    const auto sub = p.induced(q.subset);
    const auto a = from_dual(sub);
    const auto names = p.names_of(q.subset);
    REQUIRE(q.generators.size() == 1);
    // g_1 restricted to S, as a set over P(2^1).
    const auto g = p.names_of(q.generators[0]);
    if (names == Names{M}) CHECK(g == Names{M});
    if (names == Names{Q}) CHECK(g.empty());
    if (names == Names{P, M} || names == Names{Q, B, M}) {
      const auto x = a.index_of_names(g);
      const auto at = atoms(a);
      CHECK(std::find(at.begin(), at.end(), x) != at.end());
    }
    if (names.size() == 4) CHECK(g == Names{M});
  }
}

TEST_CASE("exact quotients of F(2)") {
  const auto qs = enumerate_exact_quotients(2);
  CHECK(qs.size() == 409);
  const auto table = quotient_table(2);
  for (const auto& q : qs) {
    const auto sub = table->pext.poset.induced(q.subset);
    CHECK(is_exact(from_dual(sub)));
  }
  const auto again = enumerate_exact_quotients(2);
  REQUIRE(again.size() == qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) CHECK(again[i].subset == qs[i].subset);
}

TEST_CASE("tampered witnesses fail verification") {
  const auto s = parse_sentence("!!x1 = x1");
  auto v = decide(s);
  REQUIRE(v.witness.has_value());
  auto& asg = v.witness->assignment.at("x1");
  asg = v.witness->dual.full_set();
  CHECK_FALSE(verify_verdict(s, v));

  auto wrong = decide(parse_sentence("x1 & !x1 = 0"));
  wrong.kind = VerdictKind::Invalid;
  CHECK_FALSE(verify_verdict(parse_sentence("x1 & !x1 = 0"), wrong));
}

TEST_CASE("decide is deterministic and stable under renaming") {
  for (const char* text : {"!!x1 = x1", "x1 & x2 = 0 -> !!x1 & !!x2 = 0", "x1 | x2 = 1 -> (x1 = 1 or x2 = 1)",
                           "!x1 | !!x1 = 1"}) {
    const auto s = parse_sentence(text);
    CHECK(verdict_to_json(s, decide(s)).dump() == verdict_to_json(s, decide(s)).dump());
  }
  const std::map<std::string, Term> swap = {{"x1", Term::var("x2")}, {"x2", Term::var("x1")}};
  const std::map<std::string, Term> rename = {{"x1", Term::var("u")}, {"x2", Term::var("w")}};
  for (const char* text : {"x1 & x2 = 0 -> !!x1 & !!x2 = 0", "x1 & !x1 = 0", "!(x1 | x2) = !x1 & !x2",
                           "x1 | !x1 = 1 -> (x1 = 1 or x1 = 0)"}) {
    const auto s = parse_sentence(text);
    REQUIRE(decide(s).kind == VerdictKind::Valid);
    CHECK(decide(UniversalSentence::close(substitute(s.matrix, swap))).kind == VerdictKind::Valid);
    CHECK(decide(UniversalSentence::close(substitute(s.matrix, rename))).kind == VerdictKind::Valid);
  }
}

TEST_CASE("one-variable verdicts agree with the free algebras") {
  std::mt19937_64 rng(31);
  const auto f1 = free_pdl(1).algebra;
  const auto f2 = free_pdl(2).algebra;
  std::size_t valid = 0, invalid = 0;
  for (int i = 0; i < 300; ++i) {
    const auto s = UniversalSentence::close(random_matrix(rng, {"x1"}));
    if (s.variables.empty()) continue;
    const auto v = decide(s);
    CHECK(verify_verdict(s, v));
    const bool holds2 = holds_universal(f2, s);
    if (!holds2) CHECK(v.kind == VerdictKind::Invalid);
    if (v.kind == VerdictKind::Valid) {
      ++valid;
      CHECK(holds_universal(f1, s));
      CHECK(holds2);
    } else {
      ++invalid;
    }
  }
  CHECK(valid > 10);
  CHECK(invalid > 10);
}
