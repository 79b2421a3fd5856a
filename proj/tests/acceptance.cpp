// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
// Usage: acceptance [corpus dir]

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "ddf/corpus.hpp"
#include "ddf/document.hpp"
#include "ddf/equivalence.hpp"
#include "ddf/error.hpp"
#include "ddf/fiber_inverse.hpp"

using namespace ddf;

namespace {

// Collects failed expectations of one criterion.
struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

std::size_t at(const FinSet& s, std::string_view x) { return s.index_of(x); }

// Mutants: one broken axiom each, with the axiom the checker must name.
struct Mutant {
  std::string name;
  std::string axiom;
  std::function<Report()> run;
};

FinCategory broken_unit_category() {
  return make_category({{"*"}, {{"id", "*", "*"}, {"e", "*", "*"}}, {{"*", "id"}},
                        {{"id", "id", "id"}, {"id", "e", "id"}, {"e", "id", "e"}, {"e", "e", "e"}}});
}

std::vector<Mutant> mutants() {
  std::vector<Mutant> out;
  out.push_back({"non-associative table", "category.associativity", [] { return check_category(corpus::non_associative()); }});
  out.push_back({"identity absorbing e", "category.unit", [] { return check_category(broken_unit_category()); }});
  out.push_back({"missing composite", "category.closure", [] {
                   auto p = presentation_of(corpus::c2());
                   p.composites.pop_back();
                   return check_category(make_category(p));
                 }});
  out.push_back({"functor sending f to an identity", "functor.boundary", [] {
                   FinFunctor g = identity_functor(corpus::c2());
                   g.on_morphisms = g.on_morphisms.with("f", "idX");
                   return check_functor(g);
                 }});
  out.push_back({"C2 onto the terminal category", "fibration.unique_lift", [] {
                   FinCategory c = corpus::c2(), one = corpus::one();
                   return is_discrete_fibration({c, one, FinFn::constant(c.objects(), one.objects(), one.objects()[0]),
                                                 FinFn::constant(c.morphisms(), one.morphisms(), one.morphisms()[0])});
                 }});
  out.push_back({"external unit law", "double.unit_law", [] {
                   DoubleCategory v = vertical_double(corpus::c4());
                   std::size_t i = *v.pair_index(at(v.proarrows(), "idX"), at(v.proarrows(), "e"));
                   std::size_t j = *v.cell_pair_index(at(v.cells(), "1_idX"), at(v.cells(), "1_e"));
                   v.ext_comp.on_objects = v.ext_comp.on_objects.with(v.composable().objects()[i], "idX");
                   v.ext_comp.on_morphisms = v.ext_comp.on_morphisms.with(v.composable().morphisms()[j], "1_idX");
                   return check_double_category(v);
                 }});
  out.push_back({"external associativity", "double.associativity", [] {
                   DoublePresentation p;
                   p.objects = {"A"};
                   p.proarrows = {{"a", "A", "A"}, {"b", "A", "A"}};
                   p.proarrow_ext = {{"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}};
                   return check_double_category(build_double(p));
                 }});
  out.push_back({"lax functor of a non-associative table", "lax.associativity",
                 [] { return check_lax_functor(encode_category(corpus::non_associative())); }});
  out.push_back({"unit laxity off the diagonal", "lax.unit", [] {
                   LaxSpanFunctor f = encode_category(corpus::c4());
                   f.unit_lax[0] = f.unit_lax[0].with("X", "e");
                   return check_lax_functor(f);
                 }});
  out.push_back({"composition laxity with the wrong ends", "lax.laxity_boundary", [] {
                   LaxSpanFunctor f = encode_category(corpus::c4());
                   f.comp_lax[0] = f.comp_lax[0].with("(idX,f)", "idX");
                   return check_lax_functor(f);
                 }});
  out.push_back({"transformation not preserving identities", "transformation.unit", [] {
                   FinCategory z = corpus::z2();
                   return check_transformation(
                       encode_functor({z, z, FinFn::identity(z.objects()), FinFn::constant(z.morphisms(), z.morphisms(), "a")}));
                 }});
  out.push_back({"ddf morphism swapping fibers", "ddf_morphism.over_base", [] {
                   DDFCandidate p = el_functor(terminal_lax(vertical_double(corpus::discrete2())));
                   const DoubleCategory& e = p.total();
                   auto swap = [](const FinSet& s) {
                     return FinFn(s, s, {1, 0});
                   };
                   return check_ddf_morphism({p, p, {e, e, {e.d0, e.d0, swap(e.objects()), swap(e.arrows())},
                                                     {e.d1, e.d1, swap(e.proarrows()), swap(e.cells())}}});
                 }});
  out.push_back({"left action breaking associativity", "module.associativity", [] {
                   Module m = unit_module(encode_category(corpus::skew()));
                   m.left_act[0] = m.left_act[0].with("(e,f)", "f");
                   return check_module(m);
                 }});
  out.push_back({"left action of an identity moved", "module.unit", [] {
                   Module m = unit_module(encode_category(corpus::skew()));
                   m.left_act[0] = m.left_act[0].with("(idX,e)", "idX");
                   return check_module(m);
                 }});
  out.push_back({"left action with the wrong ends", "module.action_boundary", [] {
                   Module m = unit_module(encode_category(corpus::skew()));
                   m.left_act[0] = m.left_act[0].with("(idX,f)", "idY");
                   return check_module(m);
                 }});
  out.push_back({"nullary cell at an idempotent", "multimodulation.nullary_equivariance", [] {
                   Multimodulation mu = unit_multimodulation(encode_category(corpus::skew()));
                   mu.components.at({0}) = mu.components.at({0}).with("X", "e");
                   return check_multimodulation(mu);
                 }});
  out.push_back({"binary cell with the wrong ends", "multimodulation.boundary", [] {
                   Multimodulation mu = composition_multimodulation(encode_category(corpus::c4()));
                   auto& fn = mu.components.at({0, 0});
                   fn = fn.with("(idX,f)", "idY");
                   return check_multimodulation(mu);
                 }});
  out.push_back({"profunctor action over the wrong composite", "profunctor.action_square", [] {
                   InternalProfunctor u = unit_profunctor(identity_ddf(walking_proarrow()));
                   u.left_act.on_objects = u.left_act.on_objects.with("(u_A,m)", "u_A");
                   u.left_act.on_morphisms = u.left_act.on_morphisms.with("(1_u_A,1_m)", "1_u_A");
                   return check_internal_profunctor(u);
                 }});
  out.push_back({"profunctor carrier off the base", "profunctor.span", [] {
                   InternalProfunctor u = unit_profunctor(identity_ddf(walking_proarrow()));
                   u.over.on_objects = u.over.on_objects.with("m", "u_A");
                   u.over.on_morphisms = u.over.on_morphisms.with("1_m", "1_u_A");
                   return check_internal_profunctor(u);
                 }});
  out.push_back({"multicell over the wrong proarrow", "prof_multicell.over_base", [] {
                   ProfMulticell g = identity_prof_multicell(unit_profunctor(identity_ddf(walking_proarrow())));
                   g.map.on_objects = g.map.on_objects.with("m", "u_A");
                   g.map.on_morphisms = g.map.on_morphisms.with("1_m", "1_u_A");
                   return check_prof_multicell(g);
                 }});
  return out;
}

Tally criterion1() {
  Tally t;
  for (const auto& b : corpus::bases()) {
    Report r = check_double_category(b);
    t.expect(r.ok(), "base: " + r.str());
    t.expect(check_lax_functor(terminal_lax(b)).ok(), "terminal functor");
    for (const auto& x : b.objects()) {
      Report rx = check_lax_functor(representable(b, x));
      t.expect(rx.ok(), "representable at " + x + ": " + rx.str());
    }
    for (const auto& k : b.arrows()) t.expect(check_transformation(representable_map(b, k)).ok(), "representable map " + k);
  }
  for (const auto& f : corpus::lax_functors()) t.expect(check_lax_functor(f).ok(), "corpus functor");
  std::vector<Mutant> ms = mutants();
  t.expect(ms.size() >= 10, "fewer than ten mutants");
  for (const auto& m : ms) {
    try {
      Report r = m.run();
      t.expect(r.has(m.axiom), m.name + " not rejected as " + m.axiom + ": " + r.str());
    } catch (const Error& e) {
      t.expect(false, m.name + " threw " + e.what());
    }
  }
  return t;
}

Tally criterion2() {
  Tally t;
  for (const auto& f : corpus::lax_functors()) {
    DDFCandidate p = el_functor(f);
    bool direct = is_ddf(p).ok(), transposed = is_ddf_via_transpose(p).ok();
    t.expect(direct, "el of a corpus functor is not a fibration");
    t.expect(direct == transposed, "characterizations disagree on el");
  }
  // Both characterizations on candidates that are and are not fibrations.
  std::vector<DDFCandidate> candidates = corpus::ddfs();
  candidates.push_back({to_terminal(corpus::horizontal(corpus::c2()), terminal_double())});
  candidates.push_back({to_terminal(vertical_double(corpus::c2()), terminal_double())});
  candidates.push_back({to_terminal(walking_cell(), terminal_double())});
  std::size_t rejected = 0;
  for (const auto& p : candidates) {
    bool direct = is_ddf(p).ok();
    rejected += !direct;
    t.expect(direct == is_ddf_via_transpose(p).ok(), "characterizations disagree");
  }
  t.expect(rejected >= 2, "no negative candidates");
  return t;
}

bool bijective(const std::vector<FinFn>& fns) {
  for (const auto& f : fns) {
    if (!f.is_bijective()) return false;
  }
  return true;
}

// Reports of verify_equivalence over every base, computed once.
const std::vector<Report>& equivalence_reports() {
  static const std::vector<Report> reports = [] {
    std::vector<Report> out;
    for (const auto& b : corpus::bases()) out.push_back(verify_equivalence(b, corpus::equivalence_corpus(b)));
    return out;
  }();
  return reports;
}

bool any_axiom(const Report& r, std::string_view prefix, std::initializer_list<std::string_view> axioms) {
  for (const auto& v : r.violations()) {
    for (auto a : axioms) {
      if (v.axiom == std::string(prefix) + std::string(a)) return true;
    }
  }
  return false;
}

Tally criterion3() {
  Tally t;
  for (const auto& f : corpus::lax_functors()) {
    LaxTransformation e = eta(f);
    t.expect(check_transformation(e).ok(), "eta is not a transformation");
    t.expect(bijective(e.obj_comp) && bijective(e.pro_comp), "eta has a non-bijective component");
    LaxSpanFunctor back = f_of_ddf(el_functor(f));
    for (std::size_t a = 0; a < f.on_object.size(); ++a) t.expect(back.on_object[a].size() == f.on_object[a].size(), "object count");
    for (std::size_t m = 0; m < f.on_proarrow.size(); ++m) t.expect(back.vertex(m).size() == f.vertex(m).size(), "vertex count");
    t.expect(e.tgt == back, "eta does not land in the round trip");
  }
  for (const auto& p : corpus::ddfs()) {
    t.expect(is_isomorphism(epsilon(p)), "epsilon is not an isomorphism");
    t.expect(check_ddf_morphism(epsilon_morphism(p)).ok(), "epsilon is not over the base");
  }
  for (const auto& b : corpus::bases()) {
    for (const auto& tau : corpus::equivalence_corpus(b).transformations) {
      t.expect(compose_transformations(f_of_morphism(el_transformation(tau)), eta(tau.src)) ==
                   compose_transformations(eta(tau.tgt), tau),
               "eta naturality square");
    }
  }
  for (const auto& r : equivalence_reports()) {
    t.expect(!any_axiom(r, "equivalence.",
                        {"ddf_characterizations", "counts", "eta_invertible", "triangle", "eta_naturality",
                         "epsilon_invertible", "epsilon_naturality", "error"}),
             r.str());
  }
  return t;
}

Tally criterion4() {
  Tally t;
  std::vector<FinCategory> cats = corpus::categories();
  t.expect(cats.size() >= 5, "fewer than five categories");
  bool has_c2 = false;
  for (const auto& c : cats) {
    has_c2 |= c == corpus::c2();
    LaxSpanFunctor f = encode_category(c);
    t.expect(check_lax_functor(f).ok(), "encoded category is not a lax functor");
    t.expect(decode_category(f) == c, "decode after encode");
    t.expect(encode_category(decode_category(f)) == f, "encode after decode");
    t.expect(encode_functor(identity_functor(c)) == identity_transformation(f), "identity functor");
    t.expect(decode_functor(encode_functor(identity_functor(c))) == identity_functor(c), "functor round trip");
    // Through elements and back, the category is recovered up to the fiber names.
    FinCategory d = decode_category(f_of_ddf(el_functor(f)));
    t.expect(check_category(d).ok() && d.objects().size() == c.objects().size() && d.morphisms().size() == c.morphisms().size() &&
                 d.composites().size() == c.composites().size(),
             "category through elements");
  }
  t.expect(has_c2, "C2 missing");
  Report na = check_lax_functor(encode_category(corpus::non_associative()));
  t.expect(na.has("lax.associativity"), "non-associative table accepted");
  t.expect(check_lax_functor(encode_category(broken_unit_category())).has("lax.unit"), "broken unit accepted");
  return t;
}

// Objects and morphisms renamed to their image in the base plus their rank in
// the fiber and listed in name order, so functors over a fixed category
// compare by structure.
FinFunctor canonical_over(const FinFunctor& q) {
  auto rename = [](const FinSet& s, const FinFn& image) {
    std::map<std::size_t, std::size_t> seen;
    Table out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::size_t b = image.at(i);
      out[s[i]] = image.cod()[b] + "#" + std::to_string(seen[b]++);
    }
    return out;
  };
  Table obj = rename(q.src.objects(), q.on_objects), mor = rename(q.src.morphisms(), q.on_morphisms);
  CategoryPresentation p = presentation_of(q.src);
  for (auto& x : p.objects) x = obj.at(x);
  for (auto& m : p.morphisms) m = {mor.at(m.name), obj.at(m.dom), obj.at(m.cod)};
  for (auto& [x, i] : p.identities) {
    x = obj.at(x);
    i = mor.at(i);
  }
  for (auto& e : p.composites) e = {mor.at(e.first), mor.at(e.second), mor.at(e.result)};
  std::sort(p.objects.begin(), p.objects.end());
  std::sort(p.morphisms.begin(), p.morphisms.end(), [](const auto& x, const auto& y) { return x.name < y.name; });
  FinCategory d = make_category(p);
  Table on_obj, on_mor;
  for (std::size_t i = 0; i < q.src.objects().size(); ++i) on_obj[obj.at(q.src.objects()[i])] = q.tgt.objects()[q.on_objects.at(i)];
  for (std::size_t i = 0; i < q.src.morphisms().size(); ++i) {
    on_mor[mor.at(q.src.morphisms()[i])] = q.tgt.morphisms()[q.on_morphisms.at(i)];
  }
  return {d, q.tgt, FinFn::from_table(d.objects(), q.tgt.objects(), on_obj), FinFn::from_table(d.morphisms(), q.tgt.morphisms(), on_mor)};
}

Tally criterion5() {
  Tally t;
  FinCategory c = corpus::c2();
  FinFunctor direct = corpus::over_c2();
  t.expect(check_functor(direct).ok(), "direct object of Cat/C2 is not a functor");
  LaxSpanFunctor f = encode_functor_over(direct);
  t.expect(check_lax_functor(f).ok(), "encoding over C2");
  t.expect(decode_functor_over(f, c) == direct, "decode after encode");
  DDFCandidate p = el_functor(f);
  t.expect(is_ddf(p).ok(), "elements over C2");
  FinFunctor round = decode_functor_over(f_of_ddf(p), c);
  t.expect(check_functor(round).ok(), "round trip is not a functor");
  t.expect(canonical_over(round) == canonical_over(direct), "round trip differs from the direct object after renaming");
  // C4 over C2, collapsing the idempotent.
  FinFunctor c4_to_c2{corpus::c4(), c, FinFn::from_table(corpus::c4().objects(), c.objects(), {{"X", "X"}, {"Y", "Y"}}),
                      FinFn::from_table(corpus::c4().morphisms(), c.morphisms(),
                                        {{"idX", "idX"}, {"idY", "idY"}, {"e", "idX"}, {"f", "f"}})};
  t.expect(check_functor(c4_to_c2).ok(), "C4 over C2 is not a functor");
  FinFunctor back = decode_functor_over(f_of_ddf(el_functor(encode_functor_over(c4_to_c2))), c);
  t.expect(canonical_over(back) == canonical_over(c4_to_c2), "C4 over C2");
  return t;
}

Tally criterion6() {
  Tally t;
  for (const auto& b : corpus::bases()) {
    EquivalenceCorpus c = corpus::equivalence_corpus(b);
    t.expect(c.modules.size() >= 3, "fewer than three modules");
    t.expect(c.multimodulations.size() >= 3, "fewer than three multimodulations");
    bool binary = false, nullary = false;
    for (const auto& mu : c.multimodulations) {
      binary |= mu.arity() == 2;
      nullary |= mu.arity() == 0;
    }
    t.expect(binary && nullary, "missing a binary or nullary multimodulation");
    for (const auto& m : c.modules) {
      InternalProfunctor e = el_module(m);
      t.expect(check_internal_profunctor(e).ok(), "el_module");
      t.expect(check_module(f_of_profunctor(e)).ok(), "f_of_profunctor");
      Multimodulation eta_m = eta_module(m);
      t.expect(compose_multimodulations(inverse_multimodulation(eta_m), {eta_m}) == identity_multimodulation(m), "eta_M inverse");
      ProfMulticell eps = epsilon_module(e);
      t.expect(compose_prof_multicells(eps, {inverse_prof_multicell(eps)}) == identity_prof_multicell(e), "epsilon_M inverse");
    }
    for (const auto& mu : c.multimodulations) {
      ProfMulticell g = el_multimodulation(mu);
      t.expect(check_prof_multicell(g).ok(), "el_multimodulation");
      t.expect(check_multimodulation(f_of_multicell(g)).ok(), "f_of_multicell");
    }
  }
  for (const auto& f : corpus::lax_functors()) {
    t.expect(el_module(unit_module(f)) == unit_profunctor(el_functor(f)), "unit preservation");
  }
  for (const auto& r : equivalence_reports()) {
    t.expect(!any_axiom(r, "equivalence.", {"functoriality", "unit_preservation", "eta_cell_naturality", "epsilon_cell_naturality"}),
             r.str());
    t.expect(r.ok(), r.str());
  }
  return t;
}

Tally criterion7() {
  Tally t;
  for (const auto& f : corpus::lax_functors()) {
    DDFCandidate p = el_functor(f);
    const DoubleCategory& b = f.base;
    const DoubleCategory& e = p.total();
    // Brute force: every (index, element) pair, counted per base entry.
    std::size_t objects = 0, arrows = 0, proarrows = 0, cells = 0;
    for (std::size_t a = 0; a < b.objects().size(); ++a) {
      for (std::size_t x = 0; x < f.on_object[a].size(); ++x) ++objects;
    }
    for (std::size_t a = 0; a < b.arrows().size(); ++a) {
      for (std::size_t y = 0; y < f.on_arrow[a].dom().size(); ++y) ++arrows;
    }
    for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
      for (std::size_t s = 0; s < f.vertex(m).size(); ++s) ++proarrows;
    }
    for (std::size_t c = 0; c < b.cells().size(); ++c) {
      for (std::size_t s = 0; s < f.on_cell[c].vertex.dom().size(); ++s) ++cells;
    }
    t.expect(e.objects().size() == objects, "object count");
    t.expect(e.arrows().size() == arrows, "arrow count");
    t.expect(e.proarrows().size() == proarrows, "proarrow count");
    t.expect(e.cells().size() == cells, "cell count");
    // Fiber by fiber, against the projection.
    for (std::size_t a = 0; a < b.objects().size(); ++a) {
      std::size_t fiber = 0;
      for (std::size_t x = 0; x < e.objects().size(); ++x) fiber += p.proj.f0.on_objects.at(x) == a;
      t.expect(fiber == f.on_object[a].size(), "object fiber");
    }
    for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
      std::size_t fiber = 0;
      for (std::size_t s = 0; s < e.proarrows().size(); ++s) fiber += p.proj.f1.on_objects.at(s) == m;
      t.expect(fiber == f.vertex(m).size(), "proarrow fiber");
    }
  }
  return t;
}

Tally criterion8(const std::string& corpus_dir) {
  Tally t;
  std::size_t i = 0;
  for (const auto& b : corpus::bases()) {
    std::string name = "B" + std::to_string(i++);
    std::string text = emit_document(document_of(b, name, corpus::equivalence_corpus(b)));
    t.expect(emit_document(document_of(b, name, corpus::equivalence_corpus(b))) == text, "repeated emission differs");
    Document d = parse_document(text);
    std::string again = emit_document(d);
    t.expect(again == text, "emit after parse differs");
    t.expect(emit_document(parse_document(again)) == again, "not idempotent");
  }
  t.expect(parse_document("").empty() && emit_document(Document{}) == "{}\n", "empty document");
  if (!corpus_dir.empty()) {
    for (const char* f : {"terminal", "vertical_c2", "walking_proarrow", "representable", "bad"}) {
      std::ifstream in(corpus_dir + "/" + f + ".json", std::ios::binary);
      t.expect(static_cast<bool>(in), std::string("missing corpus file ") + f);
      std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
      t.expect(emit_document(parse_document(text)) == text, std::string("corpus file not canonical: ") + f);
    }
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  std::string corpus_dir = argc > 1 ? argv[1] : "";
  struct Criterion {
    const char* title;
    std::function<Tally()> run;
  };
  std::vector<Criterion> criteria = {
      {"validator soundness on generators and mutants", criterion1},
      {"el(F) is a discrete double fibration, two characterizations agree", criterion2},
      {"unit and counit are natural isomorphisms on functors and fibrations", criterion3},
      {"lax functors on the terminal base are categories", criterion4},
      {"lax functors on the vertical C2 are categories over C2", criterion5},
      {"modules and multicells: el and fiber inverse agree", criterion6},
      {"counting oracles for elements", criterion7},
      {"determinism and format round trip", [&] { return criterion8(corpus_dir); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Tally t;
    try {
      t = criteria[i].run();
    } catch (const std::exception& e) {
      t.expect(false, std::string("threw ") + e.what());
    }
    bool ok = t.failures.empty();
    all = all && ok;
    std::printf("criterion %zu: %s: %s (%zu checks)\n", i + 1, ok ? "PASS" : "FAIL", criteria[i].title, t.checks);
    for (std::size_t k = 0; k < t.failures.size() && k < 5; ++k) std::printf("  %s\n", t.failures[k].c_str());
  }
  return all ? 0 : 1;
}
