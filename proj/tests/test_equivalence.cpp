#include "ddf/corpus.hpp"
#include "ddf/equivalence.hpp"
#include "ddf/error.hpp"
#include "doctest.h"

using namespace ddf;

namespace {

std::vector<Module> sample_modules() {
  std::vector<Module> out;
  for (const auto& b : corpus::bases()) {
    for (const auto& m : corpus::equivalence_corpus(b).modules) out.push_back(m);
  }
  return out;
}

std::vector<Multimodulation> sample_multimodulations() {
  std::vector<Multimodulation> out;
  for (const auto& b : {terminal_double(), vertical_double(corpus::c2()), walking_proarrow()}) {
    for (const auto& m : corpus::equivalence_corpus(b).multimodulations) out.push_back(m);
  }
  return out;
}

bool all_bijective(const std::vector<FinFn>& fns) {
  for (const auto& f : fns) {
    if (!f.is_bijective()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("elements of modules") {
  for (const auto& f : corpus::lax_functors()) {
    CHECK(el_module(unit_module(f)) == unit_profunctor(el_functor(f)));
  }
  for (const auto& mod : sample_modules()) {
    InternalProfunctor m = el_module(mod);
    Report r = check_internal_profunctor(m);
    CHECK_MESSAGE(r.ok(), r.str());
    std::size_t count = 0;
    for (std::size_t x = 0; x < mod.base().proarrows().size(); ++x) count += mod.vertex(x).size();
    CHECK(m.carrier.objects().size() == count);
  }
}

TEST_CASE("elements of the hom profunctor on the terminal base") {
  // Oracle: the composition table of C4 itself.
  FinCategory c4 = corpus::c4();
  Module h = unit_module(encode_category(c4));
  InternalProfunctor m = el_module(h);
  const DoubleCategory& b = h.base();
  const Id& u = b.proarrows()[0];
  const Id& point = b.objects()[0];
  REQUIRE(m.carrier.objects().size() == c4.morphisms().size());
  // Over the terminal base the carrier is discrete.
  CHECK(m.carrier.morphisms().size() == c4.morphisms().size());
  for (std::size_t s = 0; s < c4.morphisms().size(); ++s) {
    Id obj = pair_id(u, c4.morphisms()[s]);
    CHECK(m.leg0.on_objects(obj) == pair_id(point, c4.objects()[c4.dom().at(s)]));
    CHECK(m.leg1.on_objects(obj) == pair_id(point, c4.objects()[c4.cod().at(s)]));
  }
  std::size_t checked = 0;
  for (std::size_t a = 0; a < c4.morphisms().size(); ++a) {
    for (std::size_t s = 0; s < c4.morphisms().size(); ++s) {
      if (c4.cod().at(a) != c4.dom().at(s)) continue;
      Id as = pair_id(pair_id(u, c4.morphisms()[a]), pair_id(u, c4.morphisms()[s]));
      Id want = pair_id(u, c4.morphisms()[c4.compose(s, a)]);
      CHECK(m.left_act.on_objects(as) == want);
      CHECK(m.right_act.on_objects(as) == want);
      ++checked;
    }
  }
  CHECK(checked == m.left_act.src.objects().size());
}

TEST_CASE("fiber inverse of profunctors") {
  for (const auto& p : corpus::ddfs()) {
    CHECK(f_of_profunctor(unit_profunctor(p)) == unit_module(f_of_ddf(p)));
  }
  for (const auto& mod : sample_modules()) {
    InternalProfunctor m = el_module(mod);
    Module back = f_of_profunctor(m);
    Report r = check_module(back);
    CHECK_MESSAGE(r.ok(), r.str());
    for (std::size_t x = 0; x < mod.base().proarrows().size(); ++x) {
      std::size_t fiber = 0;
      for (std::size_t s = 0; s < m.carrier.objects().size(); ++s) fiber += m.over.on_objects.at(s) == x;
      CHECK(back.vertex(x).size() == fiber);
      CHECK(back.vertex(x).size() == mod.vertex(x).size());
    }
  }
  InternalProfunctor bad = unit_profunctor(identity_ddf(walking_proarrow()));
  bad.left_act = {bad.left_act.src, bad.left_act.tgt, bad.left_act.on_objects.with("(u_A,m)", "u_A"), bad.left_act.on_morphisms};
  CHECK_THROWS_AS(f_of_profunctor(bad), Error);
}

TEST_CASE("elements and fiber inverse of cells") {
  for (const auto& mu : sample_multimodulations()) {
    ProfMulticell g = el_multimodulation(mu);
    Report r = check_prof_multicell(g);
    CHECK_MESSAGE(r.ok(), r.str());
    Multimodulation back = f_of_multicell(g);
    r = check_multimodulation(back);
    CHECK_MESSAGE(r.ok(), r.str());
  }
  for (const auto& mod : sample_modules()) {
    CHECK(el_multimodulation(identity_multimodulation(mod)) == identity_prof_multicell(el_module(mod)));
  }
  for (const auto& p : corpus::ddfs()) {
    InternalProfunctor u = unit_profunctor(p);
    CHECK(f_of_multicell(identity_prof_multicell(u)) == identity_multimodulation(f_of_profunctor(u)));
    CHECK(f_of_multicell(composition_prof_multicell(p)) == composition_multimodulation(f_of_ddf(p)));
    CHECK(f_of_multicell(unit_prof_multicell(p)) == unit_multimodulation(f_of_ddf(p)));
  }
  for (const auto& f : corpus::lax_functors()) {
    // Associativity composite and unit composite, both ways round.
    Multimodulation phi = composition_multimodulation(f);
    Multimodulation id = identity_multimodulation(unit_module(f));
    Multimodulation unit = unit_multimodulation(f);
    ProfMulticell ephi = el_multimodulation(phi), eid = el_multimodulation(id), eunit = el_multimodulation(unit);
    CHECK(ephi == composition_prof_multicell(el_functor(f)));
    CHECK(eunit == unit_prof_multicell(el_functor(f)));
    CHECK(el_multimodulation(compose_multimodulations(phi, {phi, id})) == compose_prof_multicells(ephi, {ephi, eid}));
    CHECK(el_multimodulation(compose_multimodulations(phi, {unit, id})) == compose_prof_multicells(ephi, {eunit, eid}));
  }
}

TEST_CASE("eta and epsilon") {
  for (const auto& f : corpus::lax_functors()) {
    LaxTransformation t = eta(f);
    CHECK(check_transformation(t).ok());
    CHECK(all_bijective(t.obj_comp));
    CHECK(all_bijective(t.pro_comp));
  }
  for (const auto& p : corpus::ddfs()) {
    DoubleFunctor e = epsilon(p);
    CHECK(is_isomorphism(e));
    CHECK(check_ddf_morphism(epsilon_morphism(p)).ok());
  }
  for (const auto& b : corpus::bases()) {
    // Singleton fibers: (x,x) |-> x.
    DoubleFunctor e = epsilon(identity_ddf(b));
    for (const auto& x : b.objects()) CHECK(e.f0.on_objects(pair_id(x, x)) == x);
    for (const auto& m : b.proarrows()) CHECK(e.f1.on_objects(pair_id(m, m)) == m);
  }
  for (const auto& mod : sample_modules()) {
    Multimodulation t = eta_module(mod);
    CHECK(check_multimodulation(t).ok());
    Multimodulation inv = inverse_multimodulation(t);
    CHECK(compose_multimodulations(inv, {t}) == identity_multimodulation(mod));
    InternalProfunctor m = el_module(mod);
    ProfMulticell e = epsilon_module(m);
    CHECK(check_prof_multicell(e).ok());
    ProfMulticell einv = inverse_prof_multicell(e);
    CHECK(compose_prof_multicells(e, {einv}) == identity_prof_multicell(m));
  }
  CHECK_THROWS_AS(epsilon({to_terminal(corpus::horizontal(corpus::c2()), terminal_double())}), Error);
}

TEST_CASE("naturality of eta on transformations") {
  for (const auto& b : corpus::bases()) {
    for (const auto& t : corpus::equivalence_corpus(b).transformations) {
      LaxTransformation lhs = compose_transformations(f_of_morphism(el_transformation(t)), eta(t.src));
      LaxTransformation rhs = compose_transformations(eta(t.tgt), t);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("verify_equivalence on every base") {
  for (const auto& b : corpus::bases()) {
    EquivalenceCorpus c = corpus::equivalence_corpus(b);
    CHECK(c.modules.size() >= 3);
    CHECK(c.multimodulations.size() >= 3);
    Report r = verify_equivalence(b, c);
    CHECK_MESSAGE(r.ok(), r.str());
  }
}

TEST_CASE("verify_equivalence pinpoints bad instances") {
  DoubleCategory b = terminal_double();
  EquivalenceCorpus c = corpus::equivalence_corpus(b);
  // One value of one action moved to another element.
  std::size_t which = c.modules.size();
  std::size_t pair = 0;
  for (std::size_t i = 0; i < c.modules.size() && which == c.modules.size(); ++i) {
    for (std::size_t j = 0; j < c.modules[i].left_act.size(); ++j) {
      const FinFn& l = c.modules[i].left_act[j];
      if (!l.dom().empty() && l.cod().size() >= 2) {
        which = i;
        pair = j;
        break;
      }
    }
  }
  REQUIRE(which < c.modules.size());
  Module bad = c.modules[which];
  const FinFn& l = bad.left_act[pair];
  bad.left_act[pair] = l.with(l.dom()[0], l.cod()[(l.at(0) + 1) % l.cod().size()]);
  REQUIRE_FALSE(check_module(bad).ok());
  EquivalenceCorpus small;
  small.modules = {c.modules[which], bad};
  Report r = verify_equivalence(b, small);
  bool pinned = false;
  for (const auto& v : r.violations()) pinned |= v.context.find("module 1") != std::string::npos;
  CHECK(pinned);
  for (const auto& v : r.violations()) CHECK(v.context.find("module 0") == std::string::npos);
}
