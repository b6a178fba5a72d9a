#pragma once

#include <string>

#include <json.hpp>

#include "pdl/algebra.hpp"
#include "pdl/caps.hpp"
#include "pdl/decide.hpp"
#include "pdl/free.hpp"
#include "pdl/poset.hpp"
#include "pdl/skeleton.hpp"
#include "pdl/synthesis.hpp"

namespace pdl {

using Json = nlohmann::ordered_json;

// All loaders throw InputError on malformed input.
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

// {"elements": [...], "leq": [[lower, upper], ...]}
FinitePoset poset_from_json(const Json& j);
Json poset_to_json(const FinitePoset& p);  // leq lists the covering pairs

ExplicitLattice explicit_lattice_from_json(const Json& j);

// {"kind":"dual","poset":{...}} or {"kind":"explicit","elements":[...],"leq":[...]}.
// Explicit lattices go through validate_explicit.
FinitePDL lattice_from_json(const Json& j, const Caps& caps = {});
Json lattice_to_json(const FinitePDL& a);
// The sorted list of dual elements in the upset.
Json element_json(const FinitePDL& a, std::size_t i);

Json witness_to_json(const SkeletonWitness& w);
SkeletonWitness witness_from_json(const FinitePoset& x, const Json& j);

Json verdict_to_json(const UniversalSentence& s, const Verdict& v);
Json free_report_json(const FreeCharReport& r);
Json synthesis_json(const Synthesis& s);

}  // namespace pdl
