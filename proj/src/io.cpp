#include "pdl/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "pdl/errors.hpp"

namespace pdl {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw InputError(std::string(what) + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> pair_list(const Json& j) {
  if (!j.is_array()) throw InputError("leq must be an array of pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw InputError("leq entries must be [lower, upper] string pairs");
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

Json names_json(const FinitePoset& p, const ElementSet& s) {
  Json a = Json::array();
  s.for_each([&](std::size_t i) { a.push_back(p.name(i)); });
  return a;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

FinitePoset poset_from_json(const Json& j) {
  return FinitePoset::build(string_list(field(j, "elements"), "elements"), pair_list(field(j, "leq")));
}

Json poset_to_json(const FinitePoset& p) {
  Json j;
  j["elements"] = p.elements();
  Json leq = Json::array();
  for (auto [a, b] : p.covers()) leq.push_back({p.name(a), p.name(b)});
  j["leq"] = std::move(leq);
  return j;
}

ExplicitLattice explicit_lattice_from_json(const Json& j) {
  ExplicitLattice l;
  l.elements = string_list(field(j, "elements"), "elements");
  l.leq = pair_list(field(j, "leq"));
  return l;
}

FinitePDL lattice_from_json(const Json& j, const Caps& caps) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw InputError("kind must be a string");
  if (kind == "dual") return FinitePDL::from_dual(poset_from_json(field(j, "poset")), caps);
  if (kind == "explicit") return validate_explicit(explicit_lattice_from_json(j)).algebra;
  throw InputError("kind must be \"dual\" or \"explicit\"");
}

Json lattice_to_json(const FinitePDL& a) {
  Json j;
  j["kind"] = "dual";
  j["poset"] = poset_to_json(a.dual());
  return j;
}

Json element_json(const FinitePDL& a, std::size_t i) { return names_json(a.dual(), a.element(i)); }

Json witness_to_json(const SkeletonWitness& w) {
  const FinitePoset& p = w.poset;
  Json j;
  j["bottom"] = p.name(w.bottom);
  Json s = Json::array();
  for (const auto& [key, val] : w.s) {
    Json e;
    e["x"] = p.name(key.first);
    e["Y"] = names_json(p, key.second);
    e["val"] = p.name(val);
    s.push_back(std::move(e));
  }
  j["s"] = std::move(s);
  return j;
}

SkeletonWitness witness_from_json(const FinitePoset& x, const Json& j) {
  SkeletonWitness w;
  w.poset = x;
  try {
    w.bottom = x.index_of(field(j, "bottom").get<std::string>());
    for (const auto& e : field(j, "s")) {
      const std::size_t a = x.index_of(field(e, "x").get<std::string>());
      const ElementSet y = x.set_of(string_list(field(e, "Y"), "Y"));
      const std::size_t v = x.index_of(field(e, "val").get<std::string>());
      w.s.emplace(SkeletonWitness::Key{a, y}, v);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("witness: ") + e.what());
  } catch (const UnknownElementError& e) {
    throw InputError(std::string("witness: ") + e.what());
  }
  return w;
}

Json verdict_to_json(const UniversalSentence& s, const Verdict& v) {
  Json j;
  j["sentence"] = to_string(s.matrix);
  j["variables"] = s.variables;
  j["verdict"] = verdict_name(v.kind);
  if (v.kind == VerdictKind::Valid) j["checked_quotients"] = v.checked_quotients;
  if (v.witness) {
    const InvalidWitness& w = *v.witness;
    Json wj;
    wj["source"] = w.source;
    wj["k"] = w.k;
    if (w.subset) {
      wj["quotient_index"] = w.quotient_index;
      auto t = quotient_table(w.k);
      Json sub = Json::array();
      w.subset->for_each([&](std::size_t i) { sub.push_back(t->pext.poset.name(i)); });
      wj["subset"] = std::move(sub);
    }
    wj["dual"] = poset_to_json(w.dual);
    Json asg = Json::object();
    for (const auto& [name, set] : w.assignment) asg[name] = names_json(w.dual, set);
    wj["assignment"] = std::move(asg);
    j["witness"] = std::move(wj);
  }
  if (v.kind == VerdictKind::Unknown) j["reason"] = v.reason;
  if (!v.fallbacks.empty()) {
    Json fb = Json::array();
    for (const auto& f : v.fallbacks) {
      Json e;
      e["n"] = f.n;
      e["status"] = f.status == FallbackResult::Status::Holds   ? "holds"
                    : f.status == FallbackResult::Status::Fails ? "fails"
                                                                : "truncated";
      e["detail"] = f.detail;
      fb.push_back(std::move(e));
    }
    j["fallbacks"] = std::move(fb);
  }
  return j;
}

Json free_report_json(const FreeCharReport& r) {
  Json j;
  j["n"] = r.n;
  j["atoms_ok"] = r.atoms_ok;
  j["jirr_ok"] = r.jirr_ok;
  j["order_iso_ok"] = r.order_iso_ok;
  j["mismatches"] = r.mismatches;
  return j;
}

Json synthesis_json(const Synthesis& s) {
  Json j;
  j["k"] = s.k;
  j["construction"] = s.map->kind();
  // Saturated sizes are left out.
  if (cube_size(s.k) != std::numeric_limits<std::uint64_t>::max()) j["domain_size"] = cube_size(s.k);
  j["verified"] = s.check.ok;
  j["method"] = s.check.method;
  j["checked"] = s.check.checked;
  if (auto e = dynamic_cast<const ExtensionMap*>(s.map.get())) {
    j["upset_size"] = e->upset().size();
    j["w0"] = e->target().name(e->w0());
  }
  if (s.explicit_map) {
    const PosetMap& m = *s.explicit_map;
    Json images = Json::object();
    for (std::size_t i = 0; i < m.source().size(); ++i) images[m.source().name(i)] = m.target().name(m(i));
    j["map"] = std::move(images);
  }
  return j;
}

}  // namespace pdl
