#include <map>
#include <random>

#include "ddf/cat.hpp"
#include "ddf/error.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace ddf;

namespace {

CategoryPresentation c2_presentation() {
  return {{"X", "Y"},
          {{"idX", "X", "X"}, {"idY", "Y", "Y"}, {"f", "X", "Y"}},
          {{"X", "idX"}, {"Y", "idY"}},
          {{"idX", "idX", "idX"}, {"idY", "idY", "idY"}, {"idX", "f", "f"}, {"f", "idY", "f"}}};
}

FinCategory one_category() {
  return make_category({{"*"}, {{"id", "*", "*"}}, {{"*", "id"}}, {{"id", "id", "id"}}});
}

// Category of elements of a presheaf on C2 given by P(Y) -> P(X).
struct Elements {
  FinCategory cat;
  FinFunctor proj;
};

Elements presheaf_elements(const FinCategory& c2, const std::vector<Id>& px, const std::vector<Id>& py,
                           const std::map<Id, Id>& fstar) {
  CategoryPresentation p;
  for (const auto& x : px) p.objects.push_back("(X," + x + ")");
  for (const auto& y : py) p.objects.push_back("(Y," + y + ")");
  for (const auto& o : p.objects) {
    p.morphisms.push_back({"id" + o, o, o});
    p.identities.emplace_back(o, "id" + o);
    p.composites.push_back({"id" + o, "id" + o, "id" + o});
  }
  for (const auto& y : py) {
    Id name = "(f," + y + ")";
    Id dom = "(X," + fstar.at(y) + ")", cod = "(Y," + y + ")";
    p.morphisms.push_back({name, dom, cod});
    p.composites.push_back({"id" + dom, name, name});
    p.composites.push_back({name, "id" + cod, name});
  }
  FinCategory el = make_category(p);
  Table on_obj, on_mor;
  for (const auto& x : px) on_obj["(X," + x + ")"] = "X", on_mor["id(X," + x + ")"] = "idX";
  for (const auto& y : py) on_obj["(Y," + y + ")"] = "Y", on_mor["id(Y," + y + ")"] = "idY", on_mor["(f," + y + ")"] = "f";
  return {el, {el, c2, FinFn::from_table(el.objects(), c2.objects(), on_obj),
               FinFn::from_table(el.morphisms(), c2.morphisms(), on_mor)}};
}

// Oracle: enumerate lifts directly.
std::size_t count_lifts(const FinFunctor& f, std::size_t y, std::size_t b) {
  std::size_t n = 0;
  for (std::size_t m = 0; m < f.src.morphisms().size(); ++m) {
    n += f.src.cod().at(m) == y && f.on_morphisms.at(m) == b;
  }
  return n;
}

}  // namespace

TEST_CASE("check_category") {
  CHECK(check_category(one_category()).ok());
  FinCategory c2 = make_category(c2_presentation());
  CHECK(check_category(c2).ok());
  CHECK(presentation_of(c2).morphisms.size() == 3);
  CHECK(make_category(presentation_of(c2)) == c2);

  SUBCASE("composite on a non-composable pair") {
    auto p = c2_presentation();
    p.composites.push_back({"f", "f", "f"});
    Report r = check_category(make_category(p));
    REQUIRE(r.has("category.composable"));
    CHECK(r.violations()[0].witness == "(f,f)");
  }
  SUBCASE("missing composite") {
    auto p = c2_presentation();
    p.composites.pop_back();
    CHECK(check_category(make_category(p)).has("category.closure"));
  }
  SUBCASE("broken unit") {
    auto p = make_category({{"*"}, {{"id", "*", "*"}, {"e", "*", "*"}}, {{"*", "id"}},
                            {{"id", "id", "id"}, {"id", "e", "id"}, {"e", "id", "e"}, {"e", "e", "e"}}});
    CHECK(check_category(p).has("category.unit"));
  }
  SUBCASE("broken associativity") {
    // Monoid table {1,a,b} with a·a = b, a·b = a, b·a = b: not associative.
    auto p = make_category({{"*"},
                            {{"1", "*", "*"}, {"a", "*", "*"}, {"b", "*", "*"}},
                            {{"*", "1"}},
                            {{"1", "1", "1"},
                             {"1", "a", "a"},
                             {"a", "1", "a"},
                             {"1", "b", "b"},
                             {"b", "1", "b"},
                             {"a", "a", "b"},
                             {"a", "b", "a"},
                             {"b", "a", "b"},
                             {"b", "b", "b"}}});
    CHECK(check_category(p).has("category.associativity"));
  }
}

TEST_CASE("check_functor") {
  FinCategory c2 = make_category(c2_presentation());
  FinCategory one = one_category();
  CHECK(check_functor(identity_functor(c2)).ok());
  FinFunctor to_one{c2, one, FinFn::constant(c2.objects(), one.objects(), "*"),
                    FinFn::constant(c2.morphisms(), one.morphisms(), "id")};
  CHECK(check_functor(to_one).ok());
  // f sent to an identity while its endpoints go to different objects.
  FinFunctor bad = identity_functor(c2);
  bad.on_morphisms = bad.on_morphisms.with("f", "idX");
  CHECK(check_functor(bad).has("functor.boundary"));
  CHECK(compose_functors(to_one, identity_functor(c2)) == to_one);
}

TEST_CASE("discrete fibrations") {
  FinCategory c2 = make_category(c2_presentation());
  FinCategory one = one_category();
  FinFunctor to_one{c2, one, FinFn::constant(c2.objects(), one.objects(), "*"),
                    FinFn::constant(c2.morphisms(), one.morphisms(), "id")};
  SUBCASE("identity") {
    CHECK(is_discrete_fibration(identity_functor(c2)).ok());
    CHECK(is_discrete_fibration_via_pullback(identity_functor(c2)).ok());
    CHECK(unique_lift(identity_functor(c2), "Y", "idY") == "idY");
  }
  SUBCASE("C2 to the terminal category is not one") {
    std::size_t y = c2.objects().index_of("Y");
    CHECK(count_lifts(to_one, y, 0) == 2);
    Report r = is_discrete_fibration(to_one);
    CHECK(r.has("fibration.unique_lift"));
    CHECK(r.str().find("(Y, id, 2)") != std::string::npos);
    CHECK_FALSE(is_discrete_fibration_via_pullback(to_one).ok());
    CHECK_THROWS_AS(unique_lift(to_one, "Y", "id"), Error);
  }
  SUBCASE("elements of presheaves on C2") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
      FinSet px = gen::set_of("x", 1 + trial % 3), py = gen::set(rng, "y", 3);
      FinFn fs = gen::fn(rng, py, px);
      std::map<Id, Id> table;
      for (const auto& y : py) table[y] = fs(y);
      Elements el = presheaf_elements(c2, px.elements(), py.elements(), table);
      REQUIRE(check_category(el.cat).ok());
      REQUIRE(check_functor(el.proj).ok());
      CHECK(is_discrete_fibration(el.proj).ok());
      CHECK(is_discrete_fibration_via_pullback(el.proj).ok());
      for (std::size_t y = 0; y < el.cat.objects().size(); ++y) {
        for (std::size_t b = 0; b < c2.morphisms().size(); ++b) {
          if (c2.cod().at(b) != el.proj.on_objects.at(y)) continue;
          REQUIRE(count_lifts(el.proj, y, b) == 1);
          std::size_t l = unique_lift(el.proj, y, b);
          CHECK(el.proj.on_morphisms.at(l) == b);
          CHECK(el.cat.cod().at(l) == y);
        }
      }
      // Lifting respects composition: lift(g∘h, y) = lift(g, y) ∘ lift(h, dom lift(g, y)).
      for (const auto& c : c2.composites()) {
        for (std::size_t y = 0; y < el.cat.objects().size(); ++y) {
          if (el.proj.on_objects.at(y) != c2.cod().at(c.second)) continue;
          std::size_t lg = unique_lift(el.proj, y, c.second);
          std::size_t lh = unique_lift(el.proj, el.cat.dom().at(lg), c.first);
          CHECK(unique_lift(el.proj, y, c.result) == el.cat.compose(lg, lh));
        }
      }
      // Randomly break one lift and both checks must notice.
      if (!py.empty()) {
        FinFunctor broken = el.proj;
        broken.on_morphisms = broken.on_morphisms.with("(f," + py[0] + ")", "idY");
        CHECK(is_discrete_fibration(broken).ok() == is_discrete_fibration_via_pullback(broken).ok());
      }
    }
  }
}

TEST_CASE("fibers") {
  FinCategory c2 = make_category(c2_presentation());
  CHECK(fiber_objects(identity_functor(c2), "Y") == FinSet{"Y"});
  CHECK_THROWS_AS(fiber_objects(identity_functor(c2), "Z"), Error);
  Elements el = presheaf_elements(c2, {"a", "b"}, {"c"}, {{"c", "a"}});
  FinCategory fx = fiber_category(el.proj, "X");
  CHECK(fx.objects() == FinSet{"(X,a)", "(X,b)"});
  CHECK(fx.morphisms().size() == 2);
  CHECK(check_category(fx).ok());
}

TEST_CASE("pullback_category") {
  FinCategory c2 = make_category(c2_presentation());
  FinCategory one = one_category();
  SUBCASE("along the identity") {
    FinFunctor id = identity_functor(c2);
    CategoryPullback p = pullback_category(id, id);
    CHECK(p.cat.objects().size() == 2);
    CHECK(p.cat.morphisms().size() == 3);
    CHECK(check_category(p.cat).ok());
    CHECK(is_isomorphism(p.p0));
  }
  SUBCASE("constant functors give the product") {
    FinFunctor k{c2, one, FinFn::constant(c2.objects(), one.objects(), "*"),
                 FinFn::constant(c2.morphisms(), one.morphisms(), "id")};
    CategoryPullback p = pullback_category(k, k);
    CHECK(p.cat.objects().size() == 4);
    CHECK(p.cat.morphisms().size() == 9);
    CHECK(check_category(p.cat).ok());
    CHECK(check_functor(p.p0).ok());
    CHECK(check_functor(p.p1).ok());
  }
  SUBCASE("matched-pair count oracle") {
    Elements el = presheaf_elements(c2, {"a", "b"}, {"c", "d"}, {{"c", "a"}, {"d", "a"}});
    CategoryPullback p = pullback_category(el.proj, el.proj);
    std::size_t objects = 0, morphisms = 0;
    for (std::size_t i = 0; i < el.cat.objects().size(); ++i)
      for (std::size_t j = 0; j < el.cat.objects().size(); ++j)
        objects += el.proj.on_objects.at(i) == el.proj.on_objects.at(j);
    for (std::size_t i = 0; i < el.cat.morphisms().size(); ++i)
      for (std::size_t j = 0; j < el.cat.morphisms().size(); ++j)
        morphisms += el.proj.on_morphisms.at(i) == el.proj.on_morphisms.at(j);
    CHECK(p.cat.objects().size() == objects);
    CHECK(p.cat.morphisms().size() == morphisms);
    CHECK(check_category(p.cat).ok());
  }
  SUBCASE("opposite is an involution") {
    CHECK(opposite_category(opposite_category(c2)) == c2);
    CHECK(check_category(opposite_category(c2)).ok());
  }
}
