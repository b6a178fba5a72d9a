#include "pdl/extension.hpp"

#include "pdl/errors.hpp"

namespace pdl {

PosetMap extend_weak_p_morphism(const FinitePoset& x, const ElementSet& u, const PosetMap& p,
                                const SkeletonWitness& w) {
  if (u.size() != x.size() || !x.is_upset(u)) throw PreconditionError("U is not an upset of X");
  if (!(p.source() == x.induced(u))) throw PreconditionError("p is not defined on the subposet U");
  if (!(p.target() == w.poset)) throw PreconditionError("witness is for a different target");
  if (auto v = weak_p_morphism_violation(p)) throw PreconditionError("p is not a weak p-morphism: " + *v);
  if (auto v = witness_violation(w)) throw PreconditionError("witness does not verify: " + *v);

  const FinitePoset& y = p.target();
  const std::size_t w0 = y.maximal().first();
  const auto members = u.members();
  std::vector<std::size_t> local(x.size(), x.size());
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = i;

  std::vector<std::size_t> img(x.size());
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (u.test(e)) {
      img[e] = p(local[e]);
    } else if (x.maximal().test(e)) {
      img[e] = w0;
    } else {
      ElementSet d(y.size());
      (u & x.max_above(e)).for_each([&](std::size_t m) { d.set(p(local[m])); });
      if (!x.max_above(e).is_subset_of(u)) d.set(w0);
      img[e] = w.at(w.bottom, d);
    }
  }
  PosetMap out(x, y, std::move(img));
  if (auto v = weak_p_morphism_violation(out)) throw Error("internal: extension is not a weak p-morphism: " + *v);
  return out;
}

}  // namespace pdl
