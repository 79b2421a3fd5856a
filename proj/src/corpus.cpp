#include "ddf/corpus.hpp"

#include <algorithm>
#include <random>

namespace ddf::corpus {

namespace {

// Identities are named id<X>; unit composites are added automatically.
FinCategory category(std::vector<Id> objects, std::vector<CategoryPresentation::Morphism> arrows,
                     std::vector<CategoryPresentation::Entry> composites) {
  CategoryPresentation p;
  p.objects = objects;
  for (const auto& x : objects) {
    p.morphisms.push_back({"id" + x, x, x});
    p.identities.emplace_back(x, "id" + x);
  }
  for (const auto& a : arrows) p.morphisms.push_back(a);
  for (const auto& m : p.morphisms) {
    p.composites.push_back({"id" + m.dom, m.name, m.name});
    if (m.dom != m.cod || m.name != "id" + m.dom) p.composites.push_back({m.name, "id" + m.cod, m.name});
  }
  for (const auto& c : composites) p.composites.push_back(c);
  return make_category(p);
}

}  // namespace

FinCategory one() { return category({"*"}, {}, {}); }

FinCategory c2() { return category({"X", "Y"}, {{"f", "X", "Y"}}, {}); }

FinCategory c4() { return category({"X", "Y"}, {{"f", "X", "Y"}, {"e", "X", "X"}}, {{"e", "e", "e"}, {"e", "f", "f"}}); }

FinCategory discrete2() { return category({"X", "Y"}, {}, {}); }

FinCategory z2() { return category({"*"}, {{"a", "*", "*"}}, {{"a", "a", "id*"}}); }

FinCategory parallel_pair() { return category({"X", "Y"}, {{"f", "X", "Y"}, {"g", "X", "Y"}}, {}); }

FinCategory chain3() {
  return category({"X", "Y", "Z"}, {{"f", "X", "Y"}, {"g", "Y", "Z"}, {"gf", "X", "Z"}}, {{"f", "g", "gf"}});
}

FinCategory skew() {
  return make_category({{"X", "Y"},
                        {{"idX", "X", "X"}, {"idY", "Y", "Y"}, {"e", "X", "X"}, {"f", "X", "Y"}, {"g", "X", "Y"}},
                        {{"X", "idX"}, {"Y", "idY"}},
                        {{"idX", "idX", "idX"}, {"idX", "e", "e"}, {"idX", "f", "f"}, {"idX", "g", "g"},
                         {"e", "idX", "e"}, {"e", "e", "e"}, {"e", "f", "g"}, {"e", "g", "g"},
                         {"f", "idY", "f"}, {"g", "idY", "g"}, {"idY", "idY", "idY"}}});
}

FinCategory non_associative() {
  // a∘a = b, b∘a = a, a∘b = b, b∘b = b: (a∘a)∘a = a but a∘(a∘a) = b.
  return category({"*"}, {{"a", "*", "*"}, {"b", "*", "*"}},
                  {{"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}});
}

std::vector<FinCategory> categories() { return {one(), c2(), c4(), discrete2(), z2(), parallel_pair(), chain3()}; }

DoubleCategory horizontal(const FinCategory& c) { return transpose(vertical_double(c)); }

std::vector<DoubleCategory> bases() {
  return {terminal_double(), vertical_double(c2()), vertical_double(c4()), walking_proarrow(), walking_cell(),
          horizontal(c2()), horizontal(c4())};
}

FinFunctor over_c2() {
  CategoryPresentation p;
  p.objects = {"x1", "x2", "y"};
  p.morphisms = {{"idx1", "x1", "x1"}, {"idx2", "x2", "x2"}, {"idy", "y", "y"}, {"f1", "x1", "y"}, {"f2", "x2", "y"}};
  p.identities = {{"x1", "idx1"}, {"x2", "idx2"}, {"y", "idy"}};
  p.composites = {{"idx1", "idx1", "idx1"}, {"idx2", "idx2", "idx2"}, {"idy", "idy", "idy"}, {"idx1", "f1", "f1"},
                  {"f1", "idy", "f1"},      {"idx2", "f2", "f2"},       {"f2", "idy", "f2"}};
  FinCategory d = make_category(p);
  FinCategory c = c2();
  return {d, c, FinFn::from_table(d.objects(), c.objects(), {{"x1", "X"}, {"x2", "X"}, {"y", "Y"}}),
          FinFn::from_table(d.morphisms(), c.morphisms(),
                            {{"idx1", "idX"}, {"idx2", "idX"}, {"idy", "idY"}, {"f1", "f"}, {"f2", "f"}})};
}

LaxSpanFunctor random_presheaf(std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> size(1, 3);
  auto set = [&](const std::string& prefix) {
    std::vector<Id> xs;
    int n = size(rng);
    for (int i = 0; i < n; ++i) xs.push_back(prefix + std::to_string(i));
    return FinSet(std::move(xs));
  };
  FinCategory c = c2();
  DoubleCategory b = horizontal(c);
  FinSet fx = set("x"), fy = set("y");
  std::uniform_int_distribution<std::size_t> pick(0, fx.size() - 1);
  std::vector<std::size_t> image(fy.size());
  for (auto& i : image) i = pick(rng);
  std::vector<FinSet> sets(b.objects().size());
  sets[b.objects().index_of("X")] = fx;
  sets[b.objects().index_of("Y")] = fy;
  std::vector<FinFn> transitions(b.arrows().size());
  transitions[b.arrows().index_of("idX")] = FinFn::identity(fx);
  transitions[b.arrows().index_of("idY")] = FinFn::identity(fy);
  transitions[b.arrows().index_of("f")] = FinFn(fy, fx, std::move(image));
  return presheaf_lax(b, std::move(sets), std::move(transitions));
}

std::vector<LaxSpanFunctor> lax_functors() {
  std::vector<LaxSpanFunctor> out;
  for (const auto& b : bases()) {
    out.push_back(terminal_lax(b));
    for (const auto& x : b.objects()) out.push_back(representable(b, x));
  }
  for (const auto& c : categories()) out.push_back(encode_category(c));
  out.push_back(encode_functor_over(over_c2()));
  for (std::uint32_t s = 0; s < 5; ++s) out.push_back(random_presheaf(s));
  return out;
}

std::vector<DDFCandidate> ddfs() {
  std::vector<DDFCandidate> out;
  for (const auto& b : bases()) out.push_back(identity_ddf(b));
  for (const auto& f : lax_functors()) out.push_back(el_functor(f));
  out.push_back({to_terminal(walking_proarrow(), terminal_double())});
  return out;
}

EquivalenceCorpus equivalence_corpus(const DoubleCategory& b) {
  EquivalenceCorpus c;
  // Largest functors first so modules have room to fail; the terminal one last.
  std::vector<LaxSpanFunctor> on_b;
  for (const auto& f : lax_functors()) {
    if (f.base == b && !(f == terminal_lax(b))) on_b.push_back(f);
  }
  auto weight = [](const LaxSpanFunctor& f) {
    std::size_t n = 0;
    for (const auto& s : f.on_object) n += s.size();
    for (const auto& s : f.on_proarrow) n += s.vertex().size();
    return n;
  };
  std::stable_sort(on_b.begin(), on_b.end(), [&](const auto& x, const auto& y) { return weight(x) > weight(y); });
  if (on_b.size() > 5) on_b.resize(5);
  c.functors = std::move(on_b);
  c.functors.push_back(terminal_lax(b));
  for (const auto& f : c.functors) {
    c.transformations.push_back(identity_transformation(f));
    c.transformations.push_back(to_terminal(f));
  }
  for (const auto& k : b.arrows()) c.transformations.push_back(representable_map(b, k));
  c.ddfs.push_back(identity_ddf(b));
  for (const auto& f : c.functors) c.ddfs.push_back(el_functor(f));
  for (const auto& t : c.transformations) c.ddf_morphisms.push_back(el_transformation(t));

  std::size_t n = std::min<std::size_t>(3, c.functors.size());
  for (std::size_t i = 0; i < n; ++i) c.modules.push_back(unit_module(c.functors[i]));
  if (c.functors.size() >= 2) c.modules.push_back(product_module(c.functors[0], c.functors[1]));
  for (std::size_t i = 0; i < n; ++i) {
    const LaxSpanFunctor& f = c.functors[i];
    LaxTransformation id = identity_transformation(f);
    c.multimodulations.push_back(identity_multimodulation(unit_module(f)));
    c.multimodulations.push_back(composition_multimodulation(f));
    c.multimodulations.push_back(unit_multimodulation(f));
    c.multimodulations.push_back(to_product({unit_module(f)}, id, id));
    c.multimodulations.push_back(to_product({}, id, id));
  }
  for (const auto& m : c.modules) c.profunctors.push_back(el_module(m));
  for (std::size_t i = 0; i < std::min<std::size_t>(2, c.ddfs.size()); ++i) c.profunctors.push_back(unit_profunctor(c.ddfs[i]));
  for (const auto& mu : c.multimodulations) c.multicells.push_back(el_multimodulation(mu));
  for (std::size_t i = 0; i < std::min<std::size_t>(2, c.ddfs.size()); ++i) {
    c.multicells.push_back(composition_prof_multicell(c.ddfs[i]));
    c.multicells.push_back(unit_prof_multicell(c.ddfs[i]));
  }
  return c;
}

}  // namespace ddf::corpus
