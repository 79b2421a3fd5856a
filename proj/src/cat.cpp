#include "ddf/cat.hpp"

#include <algorithm>
#include <map>

#include "ddf/error.hpp"

namespace ddf {

FinCategory::FinCategory() : FinCategory(FinSet(), FinSet(), FinFn(), FinFn(), FinFn(), {}) {}

FinCategory::FinCategory(FinSet objects, FinSet morphisms, FinFn dom, FinFn cod, FinFn id,
                         std::vector<Composite> composites) {
  if (!(dom.dom() == morphisms) || !(dom.cod() == objects) || !(cod.dom() == morphisms) || !(cod.cod() == objects)) {
    throw Error(ErrorKind::Shape, "dom/cod must map morphisms to objects");
  }
  if (!(id.dom() == objects) || !(id.cod() == morphisms)) throw Error(ErrorKind::Shape, "id must map objects to morphisms");
  std::sort(composites.begin(), composites.end(), [](const Composite& a, const Composite& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  for (std::size_t i = 0; i < composites.size(); ++i) {
    const auto& c = composites[i];
    if (c.first >= morphisms.size() || c.second >= morphisms.size() || c.result >= morphisms.size()) {
      throw Error(ErrorKind::Shape, "composition entry outside the morphisms");
    }
    if (i > 0 && composites[i - 1].first == c.first && composites[i - 1].second == c.second) {
      throw Error(ErrorKind::Shape, "two composites for (" + morphisms[c.first] + "," + morphisms[c.second] + ")");
    }
  }
  auto data = std::make_shared<Data>();
  data->offsets.assign(morphisms.size() + 1, 0);
  for (const auto& c : composites) ++data->offsets[c.first + 1];
  for (std::size_t f = 0; f < morphisms.size(); ++f) data->offsets[f + 1] += data->offsets[f];
  data->objects = std::move(objects);
  data->morphisms = std::move(morphisms);
  data->dom = std::move(dom);
  data->cod = std::move(cod);
  data->id = std::move(id);
  data->composites = std::move(composites);
  data_ = std::move(data);
}

FinCategory FinCategory::discrete(const FinSet& objects, std::string_view id_prefix) {
  std::vector<Id> ids;
  for (const auto& x : objects) ids.push_back(std::string(id_prefix) + x);
  FinSet morphisms(std::move(ids));
  std::vector<std::size_t> image(objects.size());
  std::vector<Composite> composites;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    image[i] = i;
    composites.push_back({i, i, i});
  }
  FinFn to_objects(morphisms, objects, image);
  return FinCategory(objects, morphisms, to_objects, to_objects, FinFn(objects, morphisms, image), composites);
}

std::span<const Composite> FinCategory::composites_from(std::size_t first) const {
  const auto& c = data_->composites;
  return std::span<const Composite>(c.data() + data_->offsets[first], data_->offsets[first + 1] - data_->offsets[first]);
}

std::optional<std::size_t> FinCategory::then(std::size_t first, std::size_t second) const {
  for (const auto& c : composites_from(first)) {
    if (c.second == second) return c.result;
  }
  return std::nullopt;
}

std::size_t FinCategory::compose(std::size_t g, std::size_t f) const {
  auto r = then(f, g);
  if (!r) throw Error(ErrorKind::CompositionMismatch, morphisms()[g] + " ∘ " + morphisms()[f] + " is undefined");
  return *r;
}

const Id& FinCategory::compose(std::string_view g, std::string_view f) const {
  return morphisms()[compose(morphisms().index_of(g), morphisms().index_of(f))];
}

FinCategory make_category(const CategoryPresentation& p) {
  FinSet objects(p.objects);
  std::vector<Id> names;
  Table dom, cod, id;
  for (const auto& m : p.morphisms) {
    names.push_back(m.name);
    dom[m.name] = m.dom;
    cod[m.name] = m.cod;
  }
  FinSet morphisms(std::move(names));
  for (const auto& [x, i] : p.identities) id[x] = i;
  std::vector<Composite> comps;
  for (const auto& e : p.composites) {
    auto f = morphisms.find(e.first), g = morphisms.find(e.second), h = morphisms.find(e.result);
    if (!f || !g || !h) throw Error(ErrorKind::Shape, "composite mentions an unknown morphism");
    comps.push_back({*f, *g, *h});
  }
  return FinCategory(objects, morphisms, FinFn::from_table(morphisms, objects, dom),
                     FinFn::from_table(morphisms, objects, cod), FinFn::from_table(objects, morphisms, id),
                     std::move(comps));
}

CategoryPresentation presentation_of(const FinCategory& c) {
  CategoryPresentation p;
  p.objects = c.objects().elements();
  const auto& mor = c.morphisms();
  for (std::size_t m = 0; m < mor.size(); ++m) {
    p.morphisms.push_back({mor[m], c.objects()[c.dom().at(m)], c.objects()[c.cod().at(m)]});
  }
  for (std::size_t x = 0; x < c.objects().size(); ++x) p.identities.emplace_back(c.objects()[x], mor[c.identity(x)]);
  for (const auto& e : c.composites()) p.composites.push_back({mor[e.first], mor[e.second], mor[e.result]});
  return p;
}

bool operator==(const FinCategory& a, const FinCategory& b) {
  if (a.data_ == b.data_) return true;
  return a.objects() == b.objects() && a.morphisms() == b.morphisms() && a.dom() == b.dom() && a.cod() == b.cod() &&
         a.id() == b.id() && a.composites() == b.composites();
}

Report check_category(const FinCategory& c) {
  Report r;
  const auto& mor = c.morphisms();
  const auto& obj = c.objects();
  for (std::size_t x = 0; x < obj.size(); ++x) {
    std::size_t i = c.identity(x);
    if (c.dom().at(i) != x || c.cod().at(i) != x) r.add("category.identity_boundary", obj[x] + " -> " + mor[i]);
  }
  for (const auto& e : c.composites()) {
    std::string w = "(" + mor[e.first] + "," + mor[e.second] + ")";
    if (c.cod().at(e.first) != c.dom().at(e.second)) {
      r.add("category.composable", w);
      continue;
    }
    if (c.dom().at(e.result) != c.dom().at(e.first) || c.cod().at(e.result) != c.cod().at(e.second)) {
      r.add("category.composite_boundary", w + " -> " + mor[e.result]);
    }
  }
  // Closure: every composable pair has an entry.
  std::vector<std::vector<std::size_t>> out_of(obj.size());
  for (std::size_t g = 0; g < mor.size(); ++g) out_of[c.dom().at(g)].push_back(g);
  for (std::size_t f = 0; f < mor.size(); ++f) {
    for (auto g : out_of[c.cod().at(f)]) {
      if (!c.then(f, g)) r.add("category.closure", "(" + mor[f] + "," + mor[g] + ")");
    }
  }
  for (std::size_t f = 0; f < mor.size(); ++f) {
    auto left = c.then(c.identity(c.dom().at(f)), f);
    auto right = c.then(f, c.identity(c.cod().at(f)));
    if (left && *left != f) r.add("category.unit", mor[f] + " ∘ id = " + mor[*left]);
    if (right && *right != f) r.add("category.unit", "id ∘ " + mor[f] + " = " + mor[*right]);
  }
  for (const auto& fg : c.composites()) {
    for (const auto& gh : c.composites_from(fg.second)) {
      auto a = c.then(fg.result, gh.second);
      auto b = c.then(fg.first, gh.result);
      if (a && b && *a != *b) {
        r.add("category.associativity", "(" + mor[fg.first] + "," + mor[fg.second] + "," + mor[gh.second] + ")");
      }
    }
  }
  return r;
}

Report check_functor(const FinFunctor& f) {
  Report r;
  if (!(f.on_objects.dom() == f.src.objects()) || !(f.on_objects.cod() == f.tgt.objects()) ||
      !(f.on_morphisms.dom() == f.src.morphisms()) || !(f.on_morphisms.cod() == f.tgt.morphisms())) {
    r.add("functor.shape", "object/morphism maps do not match the categories");
    return r;
  }
  const auto& mor = f.src.morphisms();
  for (std::size_t m = 0; m < mor.size(); ++m) {
    std::size_t fm = f.on_morphisms.at(m);
    if (f.tgt.dom().at(fm) != f.on_objects.at(f.src.dom().at(m)) ||
        f.tgt.cod().at(fm) != f.on_objects.at(f.src.cod().at(m))) {
      r.add("functor.boundary", mor[m]);
    }
  }
  for (std::size_t x = 0; x < f.src.objects().size(); ++x) {
    if (f.on_morphisms.at(f.src.identity(x)) != f.tgt.identity(f.on_objects.at(x))) {
      r.add("functor.identity", f.src.objects()[x]);
    }
  }
  for (const auto& c : f.src.composites()) {
    auto image = f.tgt.then(f.on_morphisms.at(c.first), f.on_morphisms.at(c.second));
    if (!image || *image != f.on_morphisms.at(c.result)) {
      r.add("functor.composition", "(" + mor[c.first] + "," + mor[c.second] + ")");
    }
  }
  return r;
}

FinCategory opposite_category(const FinCategory& c) {
  std::vector<Composite> comps;
  comps.reserve(c.composites().size());
  for (const auto& e : c.composites()) comps.push_back({e.second, e.first, e.result});
  return FinCategory(c.objects(), c.morphisms(), c.cod(), c.dom(), c.id(), std::move(comps));
}

FinFunctor identity_functor(const FinCategory& c) {
  return {c, c, FinFn::identity(c.objects()), FinFn::identity(c.morphisms())};
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  if (!(f.tgt == g.src)) throw Error(ErrorKind::CompositionMismatch, "functors are not composable");
  return {f.src, g.tgt, compose_fn(g.on_objects, f.on_objects), compose_fn(g.on_morphisms, f.on_morphisms)};
}

bool is_isomorphism(const FinFunctor& f) { return f.on_objects.is_bijective() && f.on_morphisms.is_bijective(); }

FinFunctor inverse_functor(const FinFunctor& f) {
  return {f.tgt, f.src, f.on_objects.inverse(), f.on_morphisms.inverse()};
}

Report is_discrete_fibration(const FinFunctor& f) {
  Report r;
  const auto& base = f.tgt;
  // count[(y, b)] = morphisms with codomain y over b
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> count;
  for (std::size_t m = 0; m < f.src.morphisms().size(); ++m) ++count[{f.src.cod().at(m), f.on_morphisms.at(m)}];
  for (std::size_t y = 0; y < f.src.objects().size(); ++y) {
    std::size_t fy = f.on_objects.at(y);
    for (std::size_t b = 0; b < base.morphisms().size(); ++b) {
      if (base.cod().at(b) != fy) continue;
      auto it = count.find({y, b});
      std::size_t n = it == count.end() ? 0 : it->second;
      if (n != 1) {
        r.add("fibration.unique_lift",
              "(" + f.src.objects()[y] + ", " + base.morphisms()[b] + ", " + std::to_string(n) + ")");
      }
    }
  }
  return r;
}

Report is_discrete_fibration_via_pullback(const FinFunctor& f) {
  Report r;
  Pullback p = pullback(f.tgt.cod(), f.on_objects);
  // Comparison map morphism ↦ (image, codomain); a bijection iff lifts are unique.
  FinFn compare = mediating_map(p, f.on_morphisms, f.src.cod());
  std::vector<std::size_t> hits(p.vertex.size(), 0);
  for (auto j : compare.image()) ++hits[j];
  for (std::size_t j = 0; j < hits.size(); ++j) {
    if (hits[j] != 1) r.add("fibration.pullback", p.vertex[j] + " has " + std::to_string(hits[j]) + " preimages");
  }
  return r;
}

std::size_t unique_lift(const FinFunctor& f, std::size_t y, std::size_t b) {
  if (f.tgt.cod().at(b) != f.on_objects.at(y)) {
    throw Error(ErrorKind::InvalidInput,
                "base morphism " + f.tgt.morphisms()[b] + " does not end at the image of " + f.src.objects()[y]);
  }
  std::optional<std::size_t> found;
  std::size_t n = 0;
  for (std::size_t m = 0; m < f.src.morphisms().size(); ++m) {
    if (f.src.cod().at(m) == y && f.on_morphisms.at(m) == b) {
      found = m;
      ++n;
    }
  }
  if (n != 1) {
    throw Error(ErrorKind::NotAFibration, std::to_string(n) + " lifts of " + f.tgt.morphisms()[b] + " at " +
                                              f.src.objects()[y]);
  }
  return *found;
}

const Id& unique_lift(const FinFunctor& f, std::string_view y, std::string_view b) {
  return f.src.morphisms()[unique_lift(f, f.src.objects().index_of(y), f.tgt.morphisms().index_of(b))];
}

FinSet fiber_objects(const FinFunctor& f, std::string_view b) {
  auto bi = f.tgt.objects().find(b);
  if (!bi) throw Error(ErrorKind::InvalidObject, "no base object " + std::string(b));
  std::vector<Id> out;
  for (std::size_t x = 0; x < f.src.objects().size(); ++x) {
    if (f.on_objects.at(x) == *bi) out.push_back(f.src.objects()[x]);
  }
  return FinSet(std::move(out));
}

FinCategory fiber_category(const FinFunctor& f, std::string_view b) {
  FinSet objects = fiber_objects(f, b);
  std::size_t idb = f.tgt.identity(f.tgt.objects().index_of(b));
  std::vector<Id> mor;
  for (std::size_t m = 0; m < f.src.morphisms().size(); ++m) {
    if (f.on_morphisms.at(m) == idb) mor.push_back(f.src.morphisms()[m]);
  }
  FinSet morphisms(std::move(mor));
  auto sub = [&](const FinFn& fn) { return fn.restrict_to(morphisms, objects); };
  std::vector<Composite> comps;
  for (const auto& c : f.src.composites()) {
    auto a = morphisms.find(f.src.morphisms()[c.first]);
    auto bb = morphisms.find(f.src.morphisms()[c.second]);
    if (a && bb) comps.push_back({*a, *bb, morphisms.index_of(f.src.morphisms()[c.result])});
  }
  return FinCategory(objects, morphisms, sub(f.src.dom()), sub(f.src.cod()), f.src.id().restrict_to(objects, morphisms),
                     std::move(comps));
}

CategoryPullback pullback_category(const FinFunctor& f, const FinFunctor& g) {
  if (!(f.tgt == g.tgt)) throw Error(ErrorKind::CompositionMismatch, "pullback of functors with different targets");
  const FinCategory& a = f.src;
  const FinCategory& b = g.src;
  Pullback obj = pullback(f.on_objects, g.on_objects);
  Pullback mor = pullback(f.on_morphisms, g.on_morphisms);
  auto pair_fn = [&](const FinFn& on_a, const FinFn& on_b, const Pullback& from, const FinSet& to) {
    return FinFn::tabulate(from.vertex, to, [&](const Id& v) { return pair_id(on_a(from.p0(v)), on_b(from.p1(v))); });
  };
  FinFn dom = pair_fn(a.dom(), b.dom(), mor, obj.vertex);
  FinFn cod = pair_fn(a.cod(), b.cod(), mor, obj.vertex);
  FinFn id = pair_fn(a.id(), b.id(), obj, mor.vertex);
  std::vector<Composite> comps;
  for (std::size_t i = 0; i < mor.vertex.size(); ++i) {
    std::size_t ma = mor.p0.at(i);
    std::size_t mb = mor.p1.at(i);
    for (const auto& ca : a.composites_from(ma)) {
      for (const auto& cb : b.composites_from(mb)) {
        auto second = mor.vertex.find(pair_id(a.morphisms()[ca.second], b.morphisms()[cb.second]));
        if (!second) continue;
        comps.push_back({i, *second, mor.vertex.index_of(pair_id(a.morphisms()[ca.result], b.morphisms()[cb.result]))});
      }
    }
  }
  FinCategory cat(obj.vertex, mor.vertex, dom, cod, id, std::move(comps));
  return {cat, FinFunctor{cat, a, obj.p0, mor.p0}, FinFunctor{cat, b, obj.p1, mor.p1}};
}

PathCategory path_category(std::span<const FinCategory> factors, std::span<const FinFunctor> right_legs,
                           std::span<const FinFunctor> left_legs) {
  if (factors.empty()) throw Error(ErrorKind::InvalidInput, "empty path of categories");
  if (right_legs.size() + 1 != factors.size() || left_legs.size() + 1 != factors.size()) {
    throw Error(ErrorKind::InvalidInput, "path legs do not match the factors");
  }
  PathCategory out{factors[0], {identity_functor(factors[0])}};
  for (std::size_t i = 1; i < factors.size(); ++i) {
    FinFunctor last_right = compose_functors(right_legs[i - 1], out.proj.back());
    CategoryPullback p = pullback_category(last_right, left_legs[i - 1]);
    std::vector<FinFunctor> proj;
    for (const auto& q : out.proj) proj.push_back(compose_functors(q, p.p0));
    proj.push_back(p.p1);
    out.cat = p.cat;
    out.proj = std::move(proj);
  }
  return out;
}

}  // namespace ddf
