#include "cli.hpp"

#include <CLI11.hpp>

#include "pdl/algebra.hpp"
#include "pdl/crosscheck.hpp"
#include "pdl/decide.hpp"
#include "pdl/errors.hpp"
#include "pdl/free.hpp"
#include "pdl/io.hpp"
#include "pdl/skeleton.hpp"
#include "pdl/synthesis.hpp"

namespace pdl::cli {

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;
constexpr int kUnknown = 3;

struct Options {
  std::string format = "json";
  std::uint64_t seed = 1;
  Caps caps;
};

void emit(std::ostream& out, const Options& o, const Json& j) {
  if (o.format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    out << key << ": ";
    if (value.is_string())
      out << value.get<std::string>();
    else
      out << value.dump();
    out << "\n";
  }
}

Json labels(const FinitePDL& a, const std::vector<std::size_t>& idx) {
  Json arr = Json::array();
  for (auto i : idx) arr.push_back(element_json(a, i));
  return arr;
}

int cmd_skeleton(const Options& o, const std::string& file, std::ostream& out) {
  const FinitePoset x = poset_from_json(read_json_file(file));
  SkeletonStats stats;
  const auto w = check_free_skeleton(x, &stats);
  Json j;
  j["command"] = "skeleton";
  j["skeleton"] = w.has_value();
  j["witness"] = w ? witness_to_json(*w) : Json(nullptr);
  Json s;
  s["elements"] = stats.elements;
  s["greedy_succeeded"] = stats.greedy_succeeded;
  s["greedy_failed_backtrack_succeeded"] = stats.greedy_failed_backtrack_succeeded;
  s["no_family"] = stats.no_family;
  s["nodes"] = stats.nodes;
  j["stats"] = std::move(s);
  emit(out, o, j);
  return w ? kYes : kNo;
}

int cmd_exact(const Options& o, const std::string& file, std::ostream& out) {
  const FinitePDL a = lattice_from_json(read_json_file(file), o.caps);
  const auto w = check_free_skeleton(a.dual());
  Json j;
  j["command"] = "exact";
  j["exact"] = w.has_value();
  j["size"] = a.size();
  j["dual"] = poset_to_json(a.dual());
  j["witness"] = w ? witness_to_json(*w) : Json(nullptr);
  emit(out, o, j);
  return w ? kYes : kNo;
}

int cmd_decide(const Options& o, const std::string& sentence, const std::string& file, std::ostream& out) {
  // A file wins over an inline sentence.
  std::string text = file.empty() ? sentence : read_text_file(file);
  if (text.empty()) throw InputError("no sentence given");
  const UniversalSentence s = parse_sentence(text);
  const Verdict v = decide(s, o.caps);
  Json j = verdict_to_json(s, v);
  j["verified"] = verify_verdict(s, v, o.caps);
  emit(out, o, j);
  switch (v.kind) {
    case VerdictKind::Valid: return kYes;
    case VerdictKind::Invalid: return kNo;
    case VerdictKind::Unknown: return kUnknown;
  }
  return kError;
}

int cmd_free(const Options& o, std::size_t n, bool check, std::ostream& out) {
  if (check) {
    const FreeCharReport r = check_free_characterizations(n, SReading::Corrected, o.caps);
    emit(out, o, free_report_json(r));
    return r.ok() ? kYes : kNo;
  }
  const FreeAlgebra f = free_pdl(n, o.caps);
  const FinitePDL& a = f.algebra;
  const auto terms = element_terms(a, f.generators, default_variables(n));
  Json j;
  j["n"] = n;
  j["dual_size"] = f.dual.poset.size();
  j["algebra_size"] = a.size();
  const auto at = atoms(a);
  const auto jirr = join_irreducibles(a);
  j["atom_count"] = at.size();
  j["jirr_count"] = jirr.size();
  Json at_terms = Json::array(), jirr_terms = Json::array();
  for (auto e : at) at_terms.push_back(to_string(terms[e]));
  for (auto e : jirr) jirr_terms.push_back(to_string(terms[e]));
  j["atoms"] = std::move(at_terms);
  j["join_irreducibles"] = std::move(jirr_terms);
  // Element listings get long quickly; they stay for n = 1 only.
  if (n == 1) {
    Json elems = Json::array();
    for (std::size_t e = 0; e < a.size(); ++e) {
      Json ej;
      ej["upset"] = element_json(a, e);
      ej["term"] = to_string(terms[e]);
      elems.push_back(std::move(ej));
    }
    j["elements"] = std::move(elems);
  }
  emit(out, o, j);
  return kYes;
}

int cmd_embed(const Options& o, const std::string& fa, const std::string& fb, std::ostream& out) {
  const FinitePDL a = lattice_from_json(read_json_file(fa), o.caps);
  const FinitePDL b = lattice_from_json(read_json_file(fb), o.caps);
  const auto h = embeds(a, b, o.caps);
  Json j;
  j["command"] = "embed";
  j["embeds"] = h.has_value();
  if (h) {
    Json m = Json::array();
    for (std::size_t i = 0; i < a.size(); ++i) m.push_back({element_json(a, i), element_json(b, (*h)[i])});
    j["map"] = std::move(m);
  }
  emit(out, o, j);
  return h ? kYes : kNo;
}

int cmd_sigma(const Options& o, const std::string& file, std::size_t budget, std::ostream& out) {
  const FinitePDL a = lattice_from_json(read_json_file(file), o.caps);
  const SigmaReport r = sigma_check(a, budget);
  Json j;
  j["command"] = "sigma";
  j["holds"] = r.holds;
  j["generator_budget"] = budget;
  j["subalgebras_checked"] = r.subalgebras_checked;
  j["failing"] = r.failing ? labels(a, r.failing->members()) : Json(nullptr);
  emit(out, o, j);
  return r.holds ? kYes : kNo;
}

int cmd_crosscheck(const Options& o, const std::string& suite, std::size_t size_cap, std::ostream& out) {
  std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  Json j;
  j["command"] = "crosscheck";
  Json arr = Json::array();
  bool ok = true;
  for (const auto& name : names) {
    const SuiteReport r = run_suite(name, size_cap, o.caps);
    ok = ok && r.ok;
    Json s;
    s["suite"] = r.name;
    s["pass"] = r.ok;
    s["cases"] = r.cases;
    s["mismatches"] = r.mismatches;
    s["notes"] = r.notes;
    arr.push_back(std::move(s));
  }
  j["pass"] = ok;
  j["suites"] = std::move(arr);
  emit(out, o, j);
  return ok ? kYes : kNo;
}

int cmd_synth(const Options& o, const std::string& file, std::ostream& out) {
  const FinitePoset x = poset_from_json(read_json_file(file));
  const auto w = check_free_skeleton(x);
  Json j;
  j["command"] = "synth";
  if (!w) {
    j["skeleton"] = false;
    emit(out, o, j);
    return kNo;
  }
  j["skeleton"] = true;
  j["constructive_k"] = constructive_dimension(*w);
  j["surjection"] = synthesis_json(synthesize_surjection(x, *w, o.caps));
  emit(out, o, j);
  return kYes;
}

void report_error(std::ostream& out, std::ostream& err, const Options& o, const std::string& kind,
                  const std::string& what) {
  err << "error: " << what << "\n";
  Json j;
  j["error"] = kind;
  j["message"] = what;
  emit(out, o, j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Workbench for finite pseudocomplemented distributive lattices"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}))->envname("PDLWB_FORMAT");
  app.add_option("--threads", o.caps.threads, "Worker threads")->check(CLI::PositiveNumber)->envname("PDLWB_THREADS");
  app.add_option("--seed", o.seed, "Seed for randomized checks")->envname("PDLWB_SEED");
  auto cap = [&](const char* flag, auto& field, const char* env, const char* help) {
    app.add_option(flag, field, help)->check(CLI::PositiveNumber)->envname(env);
  };
  cap("--boolean-n", o.caps.boolean_n, "PDLWB_BOOLEAN_N", "Largest n for 2^n");
  cap("--p-extension-cap", o.caps.p_extension_size, "PDLWB_P_EXTENSION_CAP", "Largest |P(X)| built");
  cap("--enumeration-width", o.caps.enumeration_width, "PDLWB_ENUMERATION_WIDTH", "Largest |P| for subset enumeration");
  cap("--upset-cap", o.caps.upset_count, "PDLWB_UPSET_CAP", "Largest number of upsets");
  cap("--free-n", o.caps.free_n, "PDLWB_FREE_N", "Largest n for free algebras");
  cap("--decide-k", o.caps.decide_k, "PDLWB_DECIDE_K", "Variables handled exhaustively");
  cap("--fallback-n", o.caps.fallback_n, "PDLWB_FALLBACK_N", "Free algebras tried by the fallback");
  cap("--eval-budget", o.caps.eval_budget, "PDLWB_EVAL_BUDGET", "Assignments per model check");
  cap("--search-budget", o.caps.search_budget, "PDLWB_SEARCH_BUDGET", "Nodes per map search");
  cap("--family-budget", o.caps.family_budget, "PDLWB_FAMILY_BUDGET", "Families for the brute-force skeleton");
  cap("--formula-budget", o.caps.formula_budget, "PDLWB_FORMULA_BUDGET", "Disjuncts built by formula generation");
  cap("--synthesis-exhaustive", o.caps.synthesis_exhaustive, "PDLWB_SYNTHESIS_EXHAUSTIVE",
      "Largest P(2^k) checked element by element");
  cap("--synthesis-upset", o.caps.synthesis_upset, "PDLWB_SYNTHESIS_UPSET", "Largest upset in a certificate");

  std::string file, file_b, sentence, suite;
  std::size_t n = 0, budget = 2, size_cap = 0;
  bool info = false, check = false;
  std::function<int()> action;

  auto* sk = app.add_subcommand("skeleton", "Decide whether a poset has a free skeleton");
  sk->add_option("file", file, "Poset JSON")->required();
  sk->callback([&] { action = [&] { return cmd_skeleton(o, file, out); }; });

  auto* ex = app.add_subcommand("exact", "Decide exactness of a lattice");
  ex->add_option("file", file, "Lattice JSON")->required();
  ex->callback([&] { action = [&] { return cmd_exact(o, file, out); }; });

  auto* de = app.add_subcommand("decide", "Decide a universal sentence in the free algebra");
  de->add_option("sentence", sentence, "Sentence text");
  de->add_option("--file", file, "Read the sentence from a file");
  de->callback([&] { action = [&] { return cmd_decide(o, sentence, file, out); }; });

  auto* fr = app.add_subcommand("free", "Free algebra on n generators");
  fr->add_option("n", n, "Generators")->required()->check(CLI::PositiveNumber);
  auto* fi = fr->add_flag("--info", info, "Sizes, atoms and join-irreducibles");
  auto* fc = fr->add_flag("--check", check, "Run the characterization checks");
  fi->excludes(fc);
  fr->callback([&] { action = [&] { return cmd_free(o, n, check, out); }; });

  auto* em = app.add_subcommand("embed", "Find an embedding of one lattice into another");
  em->add_option("a", file, "Lattice JSON")->required();
  em->add_option("b", file_b, "Lattice JSON")->required();
  em->callback([&] { action = [&] { return cmd_embed(o, file, file_b, out); }; });

  auto* sg = app.add_subcommand("sigma", "Check the axioms on subalgebras with few generators");
  sg->add_option("file", file, "Lattice JSON")->required();
  sg->add_option("--gen-budget", budget, "Largest generating set")->check(CLI::PositiveNumber);
  sg->callback([&] { action = [&] { return cmd_sigma(o, file, budget, out); }; });

  auto* cc = app.add_subcommand("crosscheck", "Run an oracle suite");
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  cc->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(choices));
  cc->add_option("--size-cap", size_cap, "Largest poset size")->check(CLI::Range(1, 7));
  cc->callback([&] { action = [&] { return cmd_crosscheck(o, suite, size_cap, out); }; });

  auto* sy = app.add_subcommand("synth", "Build a surjection from some P(2^k) onto a poset");
  sy->add_option("file", file, "Poset JSON")->required();
  sy->callback([&] { action = [&] { return cmd_synth(o, file, out); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(out, err, o, "usage", e.what());
    return kError;
  }
  try {
    return action();
  } catch (const SyntaxError& e) {
    report_error(out, err, o, "syntax", e.what());
  } catch (const NotDistributiveError& e) {
    report_error(out, err, o, "not_distributive", e.what());
  } catch (const NotALatticeError& e) {
    report_error(out, err, o, "not_a_lattice", e.what());
  } catch (const PseudocomplementError& e) {
    report_error(out, err, o, "pseudocomplement", e.what());
  } catch (const CapExceededError& e) {
    report_error(out, err, o, "cap_exceeded", e.what());
  } catch (const BudgetExceededError& e) {
    report_error(out, err, o, "budget_exceeded", e.what());
  } catch (const Error& e) {
    report_error(out, err, o, "input", e.what());
  } catch (const std::exception& e) {
    report_error(out, err, o, "internal", e.what());
  }
  return kError;
}

}  // namespace pdl::cli
