#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pdl/crosscheck.hpp"
#include "pdl/errors.hpp"
#include "pdl/extension.hpp"
#include "pdl/synthesis.hpp"

using namespace pdl;
using namespace testing;

namespace {

CubePoint cube_point(const PairPoint& p) {
  CubePoint c{p.base, {}};
  p.cloud.for_each([&](std::size_t i) { c.cloud.push_back(i); });
  return c;
}

void check_synthesis(const FinitePoset& x, std::size_t expected_k) {
  const auto w = check_free_skeleton(x);
  REQUIRE(w.has_value());
  const auto s = synthesize_surjection(x, *w);
  CHECK(s.k == expected_k);
  CHECK(s.check.ok);
  CHECK(constructive_dimension(*w) == s.k);
  if (s.explicit_map) {
    CHECK(is_weak_p_morphism(*s.explicit_map));
    CHECK(s.explicit_map->is_surjective());
    CHECK(s.explicit_map->source().size() == cube_size(s.k));
  }
  if (s.k <= 4) CHECK(verify_exhaustive(*s.map).ok);
}

}  // namespace

TEST_CASE("cube_size") {
  CHECK(cube_size(1) == 4);
  CHECK(cube_size(2) == 22);
  CHECK(cube_size(3) == 310);
  CHECK(cube_size(4) == 66'658);
  CHECK(cube_size(200) == UINT64_MAX);
}

TEST_CASE("cube points") {
  const CubePoint bottom{0, {0, 1, 2, 3}}, atom{0, {0, 1, 3}}, top{3, {3}};
  CHECK(cube_leq(bottom, atom));
  CHECK(cube_leq(atom, top));
  CHECK_FALSE(cube_leq(top, atom));
  CHECK(cube_is_maximal(top));
  CHECK_FALSE(cube_is_maximal(atom));
  const auto p = project_point(CubePoint{5, {5, 7}}, 2);
  CHECK(p.base == 1);
  CHECK(p.cloud == std::vector<std::uint64_t>{1, 3});
}

TEST_CASE("base case: singleton and CHAIN3") {
  check_synthesis(singleton(), 2);
  check_synthesis(chain(3), 4);

  const auto s = synthesize_surjection(singleton(), *check_free_skeleton(singleton()));
  CHECK(s.map->kind() == "base");
  REQUIRE(s.explicit_map.has_value());
  for (auto v : s.explicit_map->images()) CHECK(v == 0);

  const auto c = synthesize_surjection(chain(3), *check_free_skeleton(chain(3)));
  CHECK(c.check.method == "exhaustive");
  CHECK(c.check.checked == 66'658);
}

TEST_CASE("inductive step: FORK") {
  const auto x = fork_poset();
  const auto w = *check_free_skeleton(x);
  const auto s = synthesize_surjection(x, w);
  CHECK(s.check.ok);
  CHECK(s.check.method == "certificate");
  CHECK(s.map->kind() == "extension");
  CHECK(s.k == constructive_dimension(w));
  // Recheck the certificate from scratch and sample points directly.
  const auto* e = dynamic_cast<const ExtensionMap*>(s.map.get());
  REQUIRE(e != nullptr);
  CHECK(verify_certificate(*e).ok);
  CHECK(x.maximal().test((*s.map)(CubePoint{0, {0}})));
  CHECK((*s.map)(CubePoint{0, {0}}) == e->w0());
}

TEST_CASE("more inductive cases") {
  const auto spine = build_poset({"b", "c", "a1", "a2"}, {{"b", "c"}, {"c", "a1"}, {"c", "a2"}});
  const auto w = *check_free_skeleton(spine);
  const auto s = synthesize_surjection(spine, w);
  CHECK(s.check.ok);
  CHECK(s.k == constructive_dimension(w));
}

TEST_CASE("refusals") {
  const auto x = fork_poset();
  auto w = *check_free_skeleton(x);
  CHECK_THROWS_AS(synthesize_surjection(chain(3), w), PreconditionError);
  w.s[{w.bottom, x.set_of({"a1", "a2"})}] = x.index_of("a1");
  CHECK_THROWS_AS(synthesize_surjection(x, w), PreconditionError);

  // Three maxima below a common bottom with pairwise joins: k is too large.
  const auto big = build_poset({"b", "s12", "s13", "s23", "a1", "a2", "a3"},
                               {{"b", "s12"}, {"b", "s13"}, {"b", "s23"}, {"s12", "a1"}, {"s12", "a2"},
                                {"s13", "a1"}, {"s13", "a3"}, {"s23", "a2"}, {"s23", "a3"}});
  const auto wb = check_free_skeleton(big);
  REQUIRE(wb.has_value());
  CHECK_THROWS_AS(synthesize_surjection(big, *wb), CapExceededError);
}

TEST_CASE("certificate agrees with the exhaustive check") {
  std::mt19937_64 rng(7);
  const auto fork = fork_poset();
  const auto c2 = chain(2);
  std::size_t both_ok = 0, both_fail = 0;
  for (int it = 0; it < 600; ++it) {
    const auto& x = (it % 2) ? fork : c2;
    const auto w = *check_free_skeleton(x);
    const std::size_t k = 2 + (it % 3 == 0);
    const auto pe = p_extension(boolean_poset(k));
    const auto sur = find_surjective_wpm(pe.poset, x);
    REQUIRE(sur.has_value());
    ElementSet g(pe.poset.size());
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) g.set(rng() % pe.poset.size());
    const auto up = pe.poset.up_set(g);
    const bool tamper = rng() % 2;
    std::vector<CubePoint> u;
    std::vector<std::size_t> r;
    up.for_each([&](std::size_t e) {
      u.push_back(cube_point(pe.pairs[e]));
      std::size_t v = (*sur)(e);
      if (tamper && rng() % 4 == 0) v = rng() % x.size();
      r.push_back(v);
    });
    try {
      ExtensionMap m(k, w, u, r);
      const auto cert = verify_certificate(m);
      const auto full = verify_exhaustive(m);
      CHECK(cert.ok == full.ok);
      if (cert.ok && full.ok) ++both_ok;
      if (!cert.ok && !full.ok) ++both_fail;
    } catch (const PreconditionError&) {
    }
  }
  CHECK(both_ok > 50);
  CHECK(both_fail > 50);
}

TEST_CASE("ExtensionMap rejects non-upsets") {
  const auto w = *check_free_skeleton(fork_poset());
  // <0,{0,1}> without the points above it.
  CHECK_THROWS_AS(ExtensionMap(1, w, {CubePoint{0, {0, 1}}}, {0}), PreconditionError);
}

TEST_CASE("extend_weak_p_morphism examples") {
  // Terminal target.
  const auto c2 = chain(2);
  const auto one = singleton();
  const auto w1 = *check_free_skeleton(one);
  const PosetMap top_only(c2.induced(c2.set_of({"c1"})), one, {0});
  const auto ext = extend_weak_p_morphism(c2, c2.set_of({"c1"}), top_only, w1);
  CHECK(ext.images() == std::vector<std::size_t>{0, 0});
  CHECK(is_weak_p_morphism(ext));

  // TRIFORK onto FORK.
  const auto tri = trifork_poset();
  const auto fork = build_poset({"b'", "a1'", "a2'"}, {{"b'", "a1'"}, {"b'", "a2'"}});
  const auto wf = *check_free_skeleton(fork);
  const auto u = tri.set_of({"a1", "a2", "a3"});
  const auto sub = tri.induced(u);
  std::vector<std::size_t> img(sub.size());
  img[sub.index_of("a1")] = fork.index_of("a1'");
  img[sub.index_of("a2")] = fork.index_of("a2'");
  img[sub.index_of("a3")] = fork.index_of("a1'");
  const PosetMap p(sub, fork, img);
  const auto pp = extend_weak_p_morphism(tri, u, p, wf);
  CHECK(pp(tri.index_of("b")) == fork.index_of("b'"));
  CHECK(is_weak_p_morphism(pp));
  CHECK(pp.is_surjective());

  // Nothing to extend.
  const PosetMap id(fork, fork, {0, 1, 2});
  CHECK(extend_weak_p_morphism(fork, fork.full_set(), id, wf).images() == id.images());
}

TEST_CASE("extend_weak_p_morphism preconditions") {
  const auto tri = trifork_poset();
  const auto fork = fork_poset();
  const auto wf = *check_free_skeleton(fork);
  const auto not_up = tri.set_of({"b", "a1"});
  const PosetMap q(tri.induced(not_up), fork, {0, 1});
  CHECK_THROWS_AS(extend_weak_p_morphism(tri, not_up, q, wf), PreconditionError);

  // Maximal a1 sent to the non-maximal b.
  const auto u = tri.set_of({"a1", "a2", "a3"});
  const PosetMap bad(tri.induced(u), fork, {0, 1, 2});
  CHECK_THROWS_AS(extend_weak_p_morphism(tri, u, bad, wf), PreconditionError);
}

TEST_CASE("extensions are always weak p-morphisms") {
  std::mt19937_64 rng(13);
  std::vector<FinitePoset> targets;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& y : posets_up_to_iso(n))
      if (check_free_skeleton(y)) targets.push_back(y);
  std::size_t extended = 0;
  for (int it = 0; it < 400; ++it) {
    const auto x = random_poset(rng, 2 + it % 6, 0.45);
    const auto& y = targets[rng() % targets.size()];
    ElementSet g(x.size());
    g.set(rng() % x.size());
    const auto u = x.up_set(g) | x.maximal();
    const auto sub = x.induced(u);
    std::optional<PosetMap> p;
    try {
      p = find_surjective_wpm(sub, y);
    } catch (const BudgetExceededError&) {
      continue;
    }
    if (!p) continue;
    const auto e = extend_weak_p_morphism(x, u, *p, *check_free_skeleton(y));
    CHECK(is_weak_p_morphism(e));
    CHECK(e.is_surjective());
    const auto members = u.members();
    for (std::size_t i = 0; i < members.size(); ++i) CHECK(e(members[i]) == (*p)(i));
    ++extended;
  }
  CHECK(extended > 50);
}
