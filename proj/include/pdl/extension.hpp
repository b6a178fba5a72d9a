#pragma once

#include "pdl/poset.hpp"
#include "pdl/skeleton.hpp"

namespace pdl {

// Extends a weak p-morphism p: U -> Y defined on an upset U of X to all of X.
// p.source() must equal X.induced(U) and w must be a witness for p.target().
// Outside U the value is s(bottom, e(x)) for non-maximal x and the fixed
// maximal element w0 (least index in max Y) for maximal x, where
// e(x) = p[U & max up(x)], plus w0 when max up(x) leaves U.
PosetMap extend_weak_p_morphism(const FinitePoset& x, const ElementSet& u, const PosetMap& p,
                                const SkeletonWitness& w);

}  // namespace pdl
