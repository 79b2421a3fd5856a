#include "ddf/double_cat.hpp"
#include "ddf/error.hpp"
#include "doctest.h"

using namespace ddf;

namespace {

FinCategory c2() {
  return make_category({{"X", "Y"},
                        {{"idX", "X", "X"}, {"idY", "Y", "Y"}, {"f", "X", "Y"}},
                        {{"X", "idX"}, {"Y", "idY"}},
                        {{"idX", "idX", "idX"}, {"idY", "idY", "idY"}, {"idX", "f", "f"}, {"f", "idY", "f"}}});
}

// e idempotent on X with f∘e = f.
FinCategory c4() {
  return make_category({{"X", "Y"},
                        {{"idX", "X", "X"}, {"idY", "Y", "Y"}, {"f", "X", "Y"}, {"e", "X", "X"}},
                        {{"X", "idX"}, {"Y", "idY"}},
                        {{"idX", "idX", "idX"},
                         {"idY", "idY", "idY"},
                         {"idX", "f", "f"},
                         {"f", "idY", "f"},
                         {"idX", "e", "e"},
                         {"e", "idX", "e"},
                         {"e", "e", "e"},
                         {"e", "f", "f"}}});
}

// One object with an idempotent proarrow e: A ⇸ A.
DoubleCategory idempotent_loop() {
  DoublePresentation p;
  p.objects = {"A"};
  p.proarrows = {{"e", "A", "A"}};
  p.proarrow_ext = {{"e", "e", "e"}};
  return build_double(p);
}

std::size_t pro(const DoubleCategory& b, std::string_view m) { return b.proarrows().index_of(m); }
std::size_t cell(const DoubleCategory& b, std::string_view c) { return b.cells().index_of(c); }

}  // namespace

TEST_CASE("examples are double categories") {
  for (const auto& b : {terminal_double(), vertical_double(c2()), vertical_double(c4()), walking_proarrow(),
                        walking_cell(), idempotent_loop()}) {
    Report r = check_double_category(b);
    CHECK_MESSAGE(r.ok(), r.str());
    CHECK(check_interchange(b).ok());
    CHECK(check_double_category(transpose(b)).ok());
    CHECK(check_double_category(opposite(b)).ok());
    CHECK(transpose(transpose(b)) == b);
    CHECK(opposite(opposite(b)) == b);
  }
}

TEST_CASE("sizes") {
  DoubleCategory t = terminal_double();
  CHECK(t.objects().size() == 1);
  CHECK(t.arrows().size() == 1);
  CHECK(t.proarrows().size() == 1);
  CHECK(t.cells().size() == 1);

  DoubleCategory v = vertical_double(c2());
  CHECK(v.objects().size() == 2);
  CHECK(v.arrows().size() == 2);
  CHECK(v.proarrows().size() == 3);
  CHECK(v.ext(pro(v, "f"), pro(v, "idY")) == pro(v, "f"));
  CHECK(v.ext(pro(v, "idX"), pro(v, "f")) == pro(v, "f"));
  CHECK_THROWS_AS(v.ext(pro(v, "f"), pro(v, "f")), Error);

  DoubleCategory w = walking_proarrow();
  CHECK(w.cells().size() == 3);
  DoubleCategory wt = transpose(w);
  CHECK(wt.arrows().size() == 3);
  CHECK(wt.proarrows().size() == 2);

  DoubleCategory c = walking_cell();
  CHECK(c.arrows().size() == 6);
  CHECK(c.proarrows().size() == 6);
  CHECK(c.cells().size() == 9);
  std::size_t theta = cell(c, "θ");
  CHECK(c.ext_cells(cell(c, "u_f"), theta) == theta);
  CHECK(c.ext_cells(theta, cell(c, "u_g")) == theta);
}

TEST_CASE("paths") {
  DoubleCategory v = vertical_double(c4());
  // Oracle: composable k-paths are k-chains of C4 morphisms.
  FinCategory c = c4();
  std::size_t chains2 = 0;
  for (std::size_t a = 0; a < c.morphisms().size(); ++a)
    for (std::size_t b = 0; b < c.morphisms().size(); ++b) chains2 += c.cod().at(a) == c.dom().at(b);
  CHECK(v.proarrow_paths(2).size() == chains2);
  CHECK(v.composable().objects().size() == chains2);
  for (const auto& p : v.proarrow_paths(3)) {
    std::size_t lhs = v.path_composite(p);
    CHECK(lhs == c.compose(p[2], c.compose(p[1], p[0])));
  }
}

TEST_CASE("mutants") {
  SUBCASE("unit law") {
    DoubleCategory v = vertical_double(c4());
    std::size_t i = *v.pair_index(pro(v, "idX"), pro(v, "e"));
    std::size_t j = *v.cell_pair_index(cell(v, "1_idX"), cell(v, "1_e"));
    v.ext_comp.on_objects = v.ext_comp.on_objects.with(v.composable().objects()[i], "idX");
    v.ext_comp.on_morphisms = v.ext_comp.on_morphisms.with(v.composable().morphisms()[j], "1_idX");
    Report r = check_double_category(v);
    CHECK(r.has("double.unit_law"));
    CHECK_FALSE(r.has("double.composite_boundary"));
  }
  SUBCASE("associativity") {
    DoublePresentation p;
    p.objects = {"A"};
    p.proarrows = {{"a", "A", "A"}, {"b", "A", "A"}};
    p.proarrow_ext = {{"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}};
    Report r = check_double_category(build_double(p));
    CHECK(r.has("double.associativity"));
    CHECK_FALSE(r.has("double.unit_law"));
  }
  SUBCASE("interchange") {
    DoubleCategory c = walking_cell();
    std::size_t i = *c.cell_pair_index(cell(c, "1_n"), cell(c, "1_u_D"));
    c.ext_comp.on_morphisms = c.ext_comp.on_morphisms.with(c.composable().morphisms()[i], "θ");
    CHECK_FALSE(check_interchange(c).ok());
    CHECK_FALSE(check_double_category(c).ok());
  }
}

TEST_CASE("double functors") {
  DoubleCategory t = terminal_double();
  for (const auto& b : {vertical_double(c4()), walking_cell(), idempotent_loop()}) {
    CHECK(check_double_functor(identity_double_functor(b)).ok());
    DoubleFunctor k = to_terminal(b, t);
    CHECK(check_double_functor(k).ok());
    CHECK(compose_double_functors(k, identity_double_functor(b)) == k);
    CHECK(check_double_functor(transpose_functor(k)).ok());
    CHECK(is_isomorphism(identity_double_functor(b)));
    CHECK_FALSE(is_isomorphism(k) != (b.cells().size() == 1 && b.arrows().size() == 1));
  }
  SUBCASE("unit not preserved") {
    DoubleCategory d = idempotent_loop();
    DoubleFunctor p{t, d, {t.d0, d.d0, FinFn::constant(t.objects(), d.objects(), "A"),
                           FinFn::constant(t.arrows(), d.arrows(), "id_A")},
                    {t.d1, d.d1, FinFn::constant(t.proarrows(), d.proarrows(), "e"),
                     FinFn::constant(t.cells(), d.cells(), "1_e")}};
    Report r = check_double_functor(p);
    CHECK(r.has("double_functor.unit"));
    CHECK_FALSE(r.has("double_functor.source"));
    CHECK_FALSE(r.has("double_functor.composition"));
  }
}

TEST_CASE("generator identities") {
  FinCategory one = make_category({{"•"}, {{"u_•", "•", "•"}}, {{"•", "u_•"}}, {{"u_•", "u_•", "u_•"}}});
  CHECK(vertical_double(one) == terminal_double());
  // Arrows and proarrows swap names, so the transpose agrees up to renaming.
  DoubleCategory tt = transpose(terminal_double());
  CHECK(tt.arrows() == FinSet{"u_•"});
  CHECK(tt.proarrows() == FinSet{"id_•"});
  CHECK(check_double_category(tt).ok());
  CHECK(opposite(terminal_double()) == terminal_double());
  CHECK(opposite(walking_proarrow()) == walking_proarrow());
  FinCategory c = c4();
  DoubleCategory h = transpose(vertical_double(c));
  CHECK(h.arrows() == c.morphisms());
  CHECK(h.d0.composites() == c.composites());
  CHECK(h.proarrows().size() == c.objects().size());
}
