#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ddf/corpus.hpp"
#include "ddf/document.hpp"
#include "ddf/equivalence.hpp"
#include "ddf/error.hpp"
#include "ddf/fiber_inverse.hpp"
#include "json.hpp"

using namespace ddf;

namespace {

using Json = nlohmann::ordered_json;

constexpr int kClean = 0;
constexpr int kViolations = 1;
constexpr int kInputError = 2;

struct Options {
  bool json = false;
  std::size_t max_path_len = 0;
  std::optional<std::uint32_t> seed;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

// Machine report on stdout with --json, otherwise one line per violation
// and a summary.
int report(const Options& opt, const std::string& verb, const Report& r) {
  if (opt.json) {
    Json v = Json::array();
    for (const auto& x : r.violations()) v.push_back({{"axiom", x.axiom}, {"context", x.context}, {"witness", x.witness}});
    Json out = {{"verb", verb}, {"ok", r.ok()}, {"violations", v}, {"notes", r.notes()}};
    std::cout << out.dump(1) << "\n";
  } else {
    std::cout << r.str();
    for (const auto& n : r.notes()) std::cout << "note: " << n << "\n";
    std::cout << verb << ": " << (r.ok() ? "ok" : std::to_string(r.violations().size()) + " violation(s)") << "\n";
  }
  return r.ok() ? kClean : kViolations;
}

int fault(const Options& opt, const std::string& verb, const std::string& kind, const std::string& message) {
  if (opt.json) {
    Json out = {{"verb", verb}, {"ok", false}, {"error", {{"kind", kind}, {"message", message}}}};
    std::cout << out.dump(1) << "\n";
  }
  std::cerr << "error: " << message << "\n";
  return kInputError;
}

// Every double category hosting a functor, fibration, module or profunctor.
std::vector<std::pair<Id, DoubleCategory>> hosted_bases(const Document& doc) {
  std::vector<std::pair<Id, DoubleCategory>> out;
  for (const auto& [name, b] : doc.double_categories) {
    bool hosts = false;
    for (const auto& [n, f] : doc.lax_functors) hosts |= f.base == b;
    for (const auto& [n, p] : doc.ddfs) hosts |= p.base() == b;
    if (hosts) out.emplace_back(name, b);
  }
  return out;
}

template <class T>
const T* find(const std::map<Id, T>& section, const std::string& name) {
  auto it = section.find(name);
  return it == section.end() ? nullptr : &it->second;
}

// Checks an entity and emits its image, or reports why it has none.
template <class T, class Check, class Build, class Add>
int construct(const Options& opt, const std::string& verb, const T& x, const std::string& out_name, Check check, Build build,
              Add add, const std::string& out_path) {
  Report r = check(x);
  if (!r.ok()) return report(opt, verb, r);
  Document doc;
  add(doc, out_name, build(x));
  write_output(out_path, emit_document(doc));
  return kClean;
}

int elements(const Options& opt, const Document& doc, const std::string& name, const std::string& out) {
  const CheckOptions co{opt.max_path_len};
  std::string result = "el(" + name + ")";
  if (auto f = find(doc.lax_functors, name)) {
    return construct(opt, "elements", *f, result, [&](const auto& x) { return check_lax_functor(x, co); }, el_functor, add_ddf, out);
  }
  if (auto t = find(doc.transformations, name)) {
    return construct(opt, "elements", *t, result, check_transformation, el_transformation, add_ddf_morphism, out);
  }
  if (auto m = find(doc.modules, name)) {
    return construct(opt, "elements", *m, result, [&](const auto& x) { return check_module(x, co); }, el_module, add_profunctor, out);
  }
  if (auto mu = find(doc.multimodulations, name)) {
    return construct(opt, "elements", *mu, result, [&](const auto& x) { return check_multimodulation(x, co); },
                     el_multimodulation, add_multicell, out);
  }
  throw Error(ErrorKind::UnresolvedName, "no lax functor, transformation, module or multimodulation named '" + name + "'");
}

int invert(const Options& opt, const Document& doc, const std::string& name, const std::string& out) {
  std::string result = "fib(" + name + ")";
  if (auto p = find(doc.ddfs, name)) return construct(opt, "invert", *p, result, is_ddf, f_of_ddf, add_lax_functor, out);
  if (auto h = find(doc.ddf_morphisms, name)) {
    return construct(opt, "invert", *h, result, check_ddf_morphism, f_of_morphism, add_transformation, out);
  }
  if (auto m = find(doc.profunctors, name)) {
    return construct(opt, "invert", *m, result, check_internal_profunctor, f_of_profunctor, add_module, out);
  }
  if (auto g = find(doc.multicells, name)) {
    return construct(opt, "invert", *g, result, check_prof_multicell, f_of_multicell, add_multimodulation, out);
  }
  throw Error(ErrorKind::UnresolvedName, "no ddf, ddf morphism, profunctor or multicell named '" + name + "'");
}

Document demo(const std::string& kind, const Options& opt) {
  DoubleCategory b;
  if (kind == "terminal") b = terminal_double();
  else if (kind == "vertical") b = vertical_double(corpus::c2());
  else if (kind == "walking") b = walking_proarrow();
  else if (kind == "representable") b = walking_cell();
  else throw Error(ErrorKind::InvalidInput, "unknown demo '" + kind + "'");
  Document doc = document_of(b, "B", corpus::equivalence_corpus(b));
  if (opt.seed) {
    // A seeded presheaf on the horizontal arrow and its elements.
    LaxSpanFunctor f = corpus::random_presheaf(*opt.seed);
    add_double_category(doc, "H", f.base);
    add_lax_functor(doc, "R", f);
    add_ddf(doc, "el(R)", el_functor(f));
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite discrete double fibrations: validation, elements, fiber inverse and equivalence checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  std::uint32_t seed = 0;
  app.add_flag("--json", opt.json, "Machine-readable report on stdout");
  app.add_option("--max-path-len", opt.max_path_len, "Bound on base path length for path-enumerating checks (0: none)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for sampled corpus entries");

  std::string file, name, out, base, kind;
  auto* validate = app.add_subcommand("validate", "Run every applicable checker; exit 0 iff clean");
  validate->add_option("file", file, "Document, or - for stdin")->required();
  auto* el = app.add_subcommand("elements", "Elements of a lax functor, transformation, module or multimodulation");
  el->add_option("file", file, "Document, or - for stdin")->required();
  el->add_option("--functor", name, "Entity name")->required();
  el->add_option("-o,--output", out, "Output file (default stdout)");
  auto* inv = app.add_subcommand("invert", "Fiber inverse of a ddf, ddf morphism, profunctor or multicell");
  inv->add_option("file", file, "Document, or - for stdin")->required();
  inv->add_option("--ddf", name, "Entity name")->required();
  inv->add_option("-o,--output", out, "Output file (default stdout)");
  auto* rt = app.add_subcommand("roundtrip", "Unit and counit checks over one base");
  rt->add_option("file", file, "Document, or - for stdin")->required();
  rt->add_option("--base", base, "Double category name")->required();
  auto* verify = app.add_subcommand("verify", "Equivalence report over every base in the document");
  verify->add_option("file", file, "Document, or - for stdin")->required();
  auto* dm = app.add_subcommand("demo", "Emit a generated corpus document");
  dm->add_option("kind", kind, "terminal, vertical, walking or representable")
      ->required()
      ->check(CLI::IsMember({"terminal", "vertical", "walking", "representable"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  if (*seed_opt) opt.seed = seed;

  std::string verb = app.get_subcommands().front()->get_name();
  try {
    if (dm->parsed()) {
      std::cout << emit_document(demo(kind, opt));
      return kClean;
    }
    Document doc = parse_document(read_input(file));
    const CheckOptions co{opt.max_path_len};
    if (validate->parsed()) return report(opt, verb, validate_document(doc, co));
    if (el->parsed()) return elements(opt, doc, name, out);
    if (inv->parsed()) return invert(opt, doc, name, out);
    if (rt->parsed()) {
      auto it = doc.double_categories.find(base);
      if (it == doc.double_categories.end()) throw Error(ErrorKind::UnresolvedName, "no double category named '" + base + "'");
      return report(opt, verb, verify_equivalence(it->second, corpus_of(doc)));
    }
    Report r;
    auto bases = hosted_bases(doc);
    for (const auto& [n, b] : bases) r.merge(verify_equivalence(b, corpus_of(doc)), "base " + n);
    if (bases.empty()) r.note("no base hosts an instance");
    return report(opt, verb, r);
  } catch (const Error& e) {
    return fault(opt, verb, std::string(to_string(e.kind())), e.what());
  }
}
