#include "ddf/document.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <utility>

#include "ddf/error.hpp"
#include "json.hpp"

namespace ddf {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSections[] = {"sets",         "functions",        "categories",    "double_categories",
                                     "lax_functors", "transformations",  "ddfs",          "ddf_morphisms",
                                     "modules",      "multimodulations", "profunctors",   "multicells"};

std::string pointer_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// A JSON value with its location, for error messages.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const Json& json() const { return *j_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, (path_.empty() ? "/" : path_) + ": " + msg);
  }
  [[noreturn]] void unresolved(std::string_view kind, std::string_view name) const {
    throw Error(ErrorKind::UnresolvedName,
                (path_.empty() ? "/" : path_) + ": unresolved " + std::string(kind) + " '" + std::string(name) + "'");
  }

  const Json::object_t& object() const {
    if (!j_->is_object()) fail("expected an object");
    return j_->get_ref<const Json::object_t&>();
  }
  const Json::array_t& array() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->get_ref<const Json::array_t&>();
  }
  std::string str() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }
  std::size_t size() const { return j_->is_array() ? array().size() : object().size(); }

  Node at(std::string_view key) const {
    const auto& o = object();
    auto it = o.find(std::string(key));
    if (it == o.end()) fail("missing field '" + std::string(key) + "'");
    return {it->second, path_ + "/" + pointer_token(key)};
  }
  Node item(std::size_t i) const { return {array().at(i), path_ + "/" + std::to_string(i)}; }

  // Rejects fields outside the list.
  void fields(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [k, v] : object()) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) at(k).fail("unknown field");
    }
  }

  std::vector<Id> names() const {
    std::vector<Id> out;
    for (std::size_t i = 0; i < array().size(); ++i) out.push_back(item(i).str());
    return out;
  }

  // Object keyed by exactly the elements of expected; calls f(index, node) in expected order.
  void each_named(const FinSet& expected, const std::function<void(std::size_t, const Node&)>& f) const {
    for (const auto& [k, v] : object()) {
      if (!expected.contains(k)) at(k).fail("'" + k + "' is not in the indexing set");
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (object().find(expected[i]) == object().end()) fail("missing entry for '" + expected[i] + "'");
      f(i, at(expected[i]));
    }
  }

 private:
  const Json* j_;
  std::string path_;
};

// Rethrows construction faults as parse errors at n.
template <class F>
auto guard(const Node& n, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::UnresolvedName) throw;
    n.fail(e.what());
  }
}

template <class T>
const T& resolve(const std::map<Id, T>& section, const Node& n, std::string_view kind) {
  Id name = n.str();
  auto it = section.find(name);
  if (it == section.end()) n.unresolved(kind, name);
  return it->second;
}

FinSet read_set(const Node& n) {
  return guard(n, [&] { return FinSet(n.names()); });
}

Table read_table(const Node& n) {
  Table t;
  for (const auto& [k, v] : n.object()) t[k] = n.at(k).str();
  return t;
}

FinFn read_fn(const Node& n, const FinSet& dom, const FinSet& cod) {
  Table t = read_table(n);
  return guard(n, [&] { return FinFn::from_table(dom, cod, t); });
}

FinFunctor read_functor(const Node& n, const FinCategory& src, const FinCategory& tgt) {
  n.fields({"objects", "morphisms"});
  return {src, tgt, read_fn(n.at("objects"), src.objects(), tgt.objects()),
          read_fn(n.at("morphisms"), src.morphisms(), tgt.morphisms())};
}

// Entries [part_1, ..., part_k, value] keyed by path_id of the parts.
Table read_tuples(const Node& n, std::size_t parts) {
  Table t;
  for (std::size_t i = 0; i < n.array().size(); ++i) {
    Node e = n.item(i);
    std::vector<Id> row = e.names();
    if (row.size() != parts + 1) e.fail("expected " + std::to_string(parts + 1) + " names");
    Id value = row.back();
    row.pop_back();
    if (!t.emplace(path_id(row), value).second) e.fail("duplicate entry");
  }
  return t;
}

FinFn read_tuple_fn(const Node& n, const FinSet& dom, const FinSet& cod, std::size_t parts) {
  Table t = read_tuples(n, parts);
  return guard(n, [&] { return FinFn::from_table(dom, cod, t); });
}

FinFunctor read_tuple_functor(const Node& n, const FinCategory& src, const FinCategory& tgt, std::size_t parts) {
  n.fields({"objects", "morphisms"});
  return {src, tgt, read_tuple_fn(n.at("objects"), src.objects(), tgt.objects(), parts),
          read_tuple_fn(n.at("morphisms"), src.morphisms(), tgt.morphisms(), parts)};
}

Span read_span(const Node& n, const FinSet& left, const FinSet& right) {
  n.fields({"vertex", "leg0", "leg1"});
  FinSet v = read_set(n.at("vertex"));
  return Span(read_fn(n.at("leg0"), v, left), read_fn(n.at("leg1"), v, right));
}

// Pair tables [m, n, x, y, value] split by composable pair of b.
std::vector<Table> read_pair_tables(const Node& n, const DoubleCategory& b) {
  std::vector<Table> out(b.composable().objects().size());
  for (std::size_t i = 0; i < n.array().size(); ++i) {
    Node e = n.item(i);
    std::vector<Id> row = e.names();
    if (row.size() != 5) e.fail("expected 5 names");
    auto m = b.proarrows().find(row[0]);
    auto k = b.proarrows().find(row[1]);
    if (!m) e.unresolved("proarrow", row[0]);
    if (!k) e.unresolved("proarrow", row[1]);
    auto pair = b.pair_index(*m, *k);
    if (!pair) e.fail(row[0] + " and " + row[1] + " are not composable");
    if (!out[*pair].emplace(pair_id(row[2], row[3]), row[4]).second) e.fail("duplicate entry");
  }
  return out;
}

DoubleCategory read_double(const Node& n, const Document& doc) {
  n.fields({"d0", "d1", "src", "tgt", "unit", "composition"});
  FinCategory d0 = resolve(doc.categories, n.at("d0"), "category");
  FinCategory d1 = resolve(doc.categories, n.at("d1"), "category");
  FinFunctor src = read_functor(n.at("src"), d1, d0);
  FinFunctor tgt = read_functor(n.at("tgt"), d1, d0);
  FinFunctor unit = read_functor(n.at("unit"), d0, d1);
  Node comp = n.at("composition");
  comp.fields({"proarrows", "cells"});
  Table pro = read_tuples(comp.at("proarrows"), 2);
  Table cell = read_tuples(comp.at("cells"), 2);
  auto lookup = [](const Table& t) {
    return [&t](const Id& a, const Id& b) -> std::optional<Id> {
      auto it = t.find(pair_id(a, b));
      if (it == t.end()) return std::nullopt;
      return it->second;
    };
  };
  DoubleCategory b = guard(n, [&] { return make_double(d0, d1, src, tgt, unit, lookup(pro), lookup(cell)); });
  if (pro.size() != b.composable().objects().size()) comp.at("proarrows").fail("entry for a non-composable pair");
  if (cell.size() != b.composable().morphisms().size()) comp.at("cells").fail("entry for a non-composable pair");
  return b;
}

LaxSpanFunctor read_lax(const Node& n, const Document& doc) {
  n.fields({"base", "objects", "arrows", "proarrows", "cells", "units", "composition"});
  LaxSpanFunctor f{resolve(doc.double_categories, n.at("base"), "double category"), {}, {}, {}, {}, {}, {}};
  const DoubleCategory& b = f.base;
  n.at("objects").each_named(b.objects(), [&](std::size_t, const Node& x) { f.on_object.push_back(read_set(x)); });
  n.at("arrows").each_named(b.arrows(), [&](std::size_t a, const Node& x) {
    f.on_arrow.push_back(read_fn(x, f.on_object[b.d0.cod().at(a)], f.on_object[b.d0.dom().at(a)]));
  });
  n.at("proarrows").each_named(b.proarrows(), [&](std::size_t m, const Node& x) {
    f.on_proarrow.push_back(read_span(x, f.on_object[b.pro_src(m)], f.on_object[b.pro_tgt(m)]));
  });
  n.at("cells").each_named(b.cells(), [&](std::size_t c, const Node& x) {
    const Span& src = f.on_proarrow[b.cell_cod(c)];
    const Span& tgt = f.on_proarrow[b.cell_dom(c)];
    f.on_cell.push_back({src, tgt, f.on_arrow[b.cell_src(c)], read_fn(x, src.vertex(), tgt.vertex()), f.on_arrow[b.cell_tgt(c)]});
  });
  n.at("units").each_named(b.objects(), [&](std::size_t a, const Node& x) {
    f.unit_lax.push_back(read_fn(x, f.on_object[a], f.vertex(b.unit_pro(a))));
  });
  Node comp = n.at("composition");
  std::vector<Table> tables = read_pair_tables(comp, b);
  CategoryPullback cp = pullback_category(b.tgt, b.src);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    std::size_t m = cp.p0.on_objects.at(i), k = cp.p1.on_objects.at(i);
    Pullback pb = pullback(f.on_proarrow[m].leg1(), f.on_proarrow[k].leg0());
    const FinSet& cod = f.vertex(b.ext_comp.on_objects.at(i));
    f.comp_lax.push_back(guard(comp, [&] { return FinFn::from_table(pb.vertex, cod, tables[i]); }));
  }
  return f;
}

LaxTransformation read_transformation(const Node& n, const Document& doc) {
  n.fields({"src", "tgt", "objects", "proarrows"});
  LaxTransformation t{resolve(doc.lax_functors, n.at("src"), "lax functor"),
                      resolve(doc.lax_functors, n.at("tgt"), "lax functor"), {}, {}};
  if (!(t.src.base == t.tgt.base)) n.fail("source and target lie over different bases");
  const DoubleCategory& b = t.src.base;
  n.at("objects").each_named(b.objects(), [&](std::size_t a, const Node& x) {
    t.obj_comp.push_back(read_fn(x, t.src.on_object[a], t.tgt.on_object[a]));
  });
  n.at("proarrows").each_named(b.proarrows(), [&](std::size_t m, const Node& x) {
    t.pro_comp.push_back(read_fn(x, t.src.vertex(m), t.tgt.vertex(m)));
  });
  return t;
}

// Objects, arrows, proarrows and cells of a double functor, one table each.
DoubleFunctor read_double_functor(const Node& n, const DoubleCategory& src, const DoubleCategory& tgt) {
  return {src, tgt,
          {src.d0, tgt.d0, read_fn(n.at("objects"), src.objects(), tgt.objects()),
           read_fn(n.at("arrows"), src.arrows(), tgt.arrows())},
          {src.d1, tgt.d1, read_fn(n.at("proarrows"), src.proarrows(), tgt.proarrows()),
           read_fn(n.at("cells"), src.cells(), tgt.cells())}};
}

DDFCandidate read_ddf(const Node& n, const Document& doc) {
  n.fields({"total", "base", "objects", "arrows", "proarrows", "cells"});
  return {read_double_functor(n, resolve(doc.double_categories, n.at("total"), "double category"),
                              resolve(doc.double_categories, n.at("base"), "double category"))};
}

DDFMorphism read_ddf_morphism(const Node& n, const Document& doc) {
  n.fields({"src", "tgt", "objects", "arrows", "proarrows", "cells"});
  DDFCandidate src = resolve(doc.ddfs, n.at("src"), "ddf");
  DDFCandidate tgt = resolve(doc.ddfs, n.at("tgt"), "ddf");
  return {src, tgt, read_double_functor(n, src.total(), tgt.total())};
}

Module read_module(const Node& n, const Document& doc) {
  n.fields({"src", "tgt", "proarrows", "cells", "left_action", "right_action"});
  Module mod{resolve(doc.lax_functors, n.at("src"), "lax functor"), resolve(doc.lax_functors, n.at("tgt"), "lax functor"),
             {}, {}, {}, {}};
  if (!(mod.src.base == mod.tgt.base)) n.fail("source and target lie over different bases");
  const DoubleCategory& b = mod.base();
  n.at("proarrows").each_named(b.proarrows(), [&](std::size_t m, const Node& x) {
    mod.on_proarrow.push_back(read_span(x, mod.src.on_object[b.pro_src(m)], mod.tgt.on_object[b.pro_tgt(m)]));
  });
  n.at("cells").each_named(b.cells(), [&](std::size_t c, const Node& x) {
    const Span& src = mod.on_proarrow[b.cell_cod(c)];
    const Span& tgt = mod.on_proarrow[b.cell_dom(c)];
    mod.on_cell.push_back(
        {src, tgt, mod.src.on_arrow[b.cell_src(c)], read_fn(x, src.vertex(), tgt.vertex()), mod.tgt.on_arrow[b.cell_tgt(c)]});
  });
  Node ln = n.at("left_action"), rn = n.at("right_action");
  std::vector<Table> lt = read_pair_tables(ln, b), rt = read_pair_tables(rn, b);
  CategoryPullback cp = pullback_category(b.tgt, b.src);
  for (std::size_t i = 0; i < lt.size(); ++i) {
    std::size_t m = cp.p0.on_objects.at(i), k = cp.p1.on_objects.at(i);
    const FinSet& cod = mod.vertex(b.ext_comp.on_objects.at(i));
    Pullback pl = pullback(mod.src.on_proarrow[m].leg1(), mod.on_proarrow[k].leg0());
    Pullback pr = pullback(mod.on_proarrow[m].leg1(), mod.tgt.on_proarrow[k].leg0());
    mod.left_act.push_back(guard(ln, [&] { return FinFn::from_table(pl.vertex, cod, lt[i]); }));
    mod.right_act.push_back(guard(rn, [&] { return FinFn::from_table(pr.vertex, cod, rt[i]); }));
  }
  return mod;
}

std::vector<std::size_t> read_key(const Node& n, const DoubleCategory& b, std::size_t arity) {
  std::vector<std::size_t> key;
  if (arity == 0) {
    n.fields({"object", "table"});
    Node x = n.at("object");
    auto a = b.objects().find(x.str());
    if (!a) x.unresolved("object", x.str());
    key.push_back(*a);
    return key;
  }
  n.fields({"path", "table"});
  Node p = n.at("path");
  for (std::size_t i = 0; i < p.array().size(); ++i) {
    Node x = p.item(i);
    auto m = b.proarrows().find(x.str());
    if (!m) x.unresolved("proarrow", x.str());
    key.push_back(*m);
  }
  if (key.size() != arity) p.fail("path length differs from the arity");
  return key;
}

Multimodulation read_multimodulation(const Node& n, const Document& doc) {
  n.fields({"sources", "target", "left", "right", "components"});
  Multimodulation mu;
  Node sources = n.at("sources");
  for (std::size_t i = 0; i < sources.array().size(); ++i) mu.sources.push_back(resolve(doc.modules, sources.item(i), "module"));
  mu.target = resolve(doc.modules, n.at("target"), "module");
  mu.left = resolve(doc.transformations, n.at("left"), "transformation");
  mu.right = resolve(doc.transformations, n.at("right"), "transformation");
  const DoubleCategory& b = mu.base();
  const std::size_t k = mu.arity();
  for (const auto& s : mu.sources) {
    if (!(s.base() == b)) sources.fail("sources lie over different bases");
  }
  Node comps = n.at("components");
  for (std::size_t i = 0; i < comps.array().size(); ++i) {
    Node c = comps.item(i);
    std::vector<std::size_t> key = read_key(c, b, k);
    if (mu.components.contains(key)) c.fail("duplicate component");
    FinSet cod = guard(c, [&] { return mu.target.vertex(k == 0 ? b.unit_pro(key[0]) : b.path_composite(key)); });
    FinSet dom = guard(c, [&] { return component_domain(mu, key); });
    mu.components.emplace(key, read_tuple_fn(c.at("table"), dom, cod, std::max<std::size_t>(k, 1)));
  }
  return mu;
}

InternalProfunctor read_profunctor(const Node& n, const Document& doc) {
  n.fields({"src", "tgt", "carrier", "over", "leg0", "leg1", "left_action", "right_action"});
  InternalProfunctor m;
  m.src = resolve(doc.ddfs, n.at("src"), "ddf");
  m.tgt = resolve(doc.ddfs, n.at("tgt"), "ddf");
  m.carrier = resolve(doc.categories, n.at("carrier"), "category");
  const DoubleCategory& e = m.src.total();
  const DoubleCategory& g = m.tgt.total();
  m.over = read_functor(n.at("over"), m.carrier, m.base().d1);
  m.leg0 = read_functor(n.at("leg0"), m.carrier, e.d0);
  m.leg1 = read_functor(n.at("leg1"), m.carrier, g.d0);
  CategoryPullback l = guard(n, [&] { return pullback_category(e.tgt, m.leg0); });
  CategoryPullback r = guard(n, [&] { return pullback_category(m.leg1, g.src); });
  m.left_act = read_tuple_functor(n.at("left_action"), l.cat, m.carrier, 2);
  m.right_act = read_tuple_functor(n.at("right_action"), r.cat, m.carrier, 2);
  return m;
}

ProfMulticell read_multicell(const Node& n, const Document& doc) {
  n.fields({"sources", "target", "left", "right", "map"});
  ProfMulticell g;
  Node sources = n.at("sources");
  for (std::size_t i = 0; i < sources.array().size(); ++i) {
    g.sources.push_back(resolve(doc.profunctors, sources.item(i), "profunctor"));
  }
  g.target = resolve(doc.profunctors, n.at("target"), "profunctor");
  g.left = resolve(doc.ddf_morphisms, n.at("left"), "ddf morphism");
  g.right = resolve(doc.ddf_morphisms, n.at("right"), "ddf morphism");
  PathCategory dom = guard(n, [&] { return multicell_domain(g.sources, g.left.src); });
  g.map = read_tuple_functor(n.at("map"), dom.cat, g.target.carrier, std::max<std::size_t>(g.arity(), 1));
  return g;
}

template <class T, class F>
void read_section(const Json& root, const char* section, std::map<Id, T>& out, F&& read) {
  auto it = root.find(section);
  if (it == root.end()) return;
  Node sec(*it, std::string("/") + section);
  for (const auto& [name, v] : sec.object()) out.emplace(name, read(sec.at(name)));
}

// Emission.

template <class T>
const Id& name_of(const std::map<Id, T>& section, const T& v, std::string_view kind) {
  for (const auto& [k, x] : section) {
    if (x == v) return k;
  }
  throw Error(ErrorKind::UnresolvedName, "a referenced " + std::string(kind) + " is not in the document");
}

Json set_json(const FinSet& s) { return Json(s.elements()); }

Json table_json(const FinFn& f) {
  Json out = Json::object();
  for (std::size_t i = 0; i < f.dom().size(); ++i) out[f.dom()[i]] = f.cod()[f.at(i)];
  return out;
}

Json functor_json(const FinFunctor& f) { return {{"objects", table_json(f.on_objects)}, {"morphisms", table_json(f.on_morphisms)}}; }

// [parts..., value] rows; parts(i) lists the components of domain element i.
Json tuples_json(const FinFn& f, const std::function<std::vector<Id>(std::size_t)>& parts) {
  Json out = Json::array();
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    std::vector<Id> row = parts(i);
    row.push_back(f.cod()[f.at(i)]);
    out.push_back(row);
  }
  return out;
}

Json tuple_functor_json(const FinFunctor& f, const std::vector<FinFunctor>& proj) {
  auto parts = [&](bool mor) {
    return [&, mor](std::size_t i) {
      std::vector<Id> row;
      if (proj.empty()) row.push_back(mor ? f.src.morphisms()[i] : f.src.objects()[i]);
      for (const auto& p : proj) row.push_back(mor ? p.tgt.morphisms()[p.on_morphisms.at(i)] : p.tgt.objects()[p.on_objects.at(i)]);
      return row;
    };
  };
  return {{"objects", tuples_json(f.on_objects, parts(false))}, {"morphisms", tuples_json(f.on_morphisms, parts(true))}};
}

Json span_json(const Span& s) {
  return {{"vertex", set_json(s.vertex())}, {"leg0", table_json(s.leg0())}, {"leg1", table_json(s.leg1())}};
}

// Rows [m, n, x, y, value] for a family of functions on the pullbacks of
// left(m).leg1 and right(n).leg0 over composable pairs.
Json pair_tables_json(const DoubleCategory& b, const std::vector<FinFn>& fns,
                      const std::function<const Span&(std::size_t)>& left,
                      const std::function<const Span&(std::size_t)>& right) {
  CategoryPullback cp = pullback_category(b.tgt, b.src);
  Json out = Json::array();
  for (std::size_t i = 0; i < fns.size(); ++i) {
    std::size_t m = cp.p0.on_objects.at(i), k = cp.p1.on_objects.at(i);
    Pullback pb = pullback(left(m).leg1(), right(k).leg0());
    if (!(pb.vertex == fns[i].dom())) throw Error(ErrorKind::InvalidInput, "structure map off its pullback at " + cp.cat.objects()[i]);
    for (std::size_t e = 0; e < pb.vertex.size(); ++e) {
      out.push_back({b.proarrows()[m], b.proarrows()[k], pb.p0.cod()[pb.p0.at(e)], pb.p1.cod()[pb.p1.at(e)],
                     fns[i].cod()[fns[i].at(e)]});
    }
  }
  return out;
}

Json category_json(const FinCategory& c) {
  CategoryPresentation p = presentation_of(c);
  Json mor = Json::array(), ids = Json::object(), comps = Json::array();
  for (const auto& m : p.morphisms) mor.push_back({m.name, m.dom, m.cod});
  for (const auto& [x, i] : p.identities) ids[x] = i;
  for (const auto& e : p.composites) comps.push_back({e.first, e.second, e.result});
  return {{"objects", p.objects}, {"morphisms", mor}, {"identities", ids}, {"composites", comps}};
}

Json double_json(const DoubleCategory& b, const Document& doc) {
  CategoryPullback cp = pullback_category(b.tgt, b.src);
  auto rows = [&](bool mor) {
    Json out = Json::array();
    const FinFn& ext = mor ? b.ext_comp.on_morphisms : b.ext_comp.on_objects;
    const FinSet& in = mor ? b.cells() : b.proarrows();
    for (std::size_t i = 0; i < ext.dom().size(); ++i) {
      std::size_t x = mor ? cp.p0.on_morphisms.at(i) : cp.p0.on_objects.at(i);
      std::size_t y = mor ? cp.p1.on_morphisms.at(i) : cp.p1.on_objects.at(i);
      out.push_back({in[x], in[y], ext.cod()[ext.at(i)]});
    }
    return out;
  };
  return {{"d0", name_of(doc.categories, b.d0, "category")},
          {"d1", name_of(doc.categories, b.d1, "category")},
          {"src", functor_json(b.src)},
          {"tgt", functor_json(b.tgt)},
          {"unit", functor_json(b.unit)},
          {"composition", {{"proarrows", rows(false)}, {"cells", rows(true)}}}};
}

Json named_json(const FinSet& keys, const std::function<Json(std::size_t)>& f) {
  Json out = Json::object();
  for (std::size_t i = 0; i < keys.size(); ++i) out[keys[i]] = f(i);
  return out;
}

Json lax_json(const LaxSpanFunctor& f, const Document& doc) {
  const DoubleCategory& b = f.base;
  auto span_at = [&](std::size_t m) -> const Span& { return f.on_proarrow[m]; };
  return {{"base", name_of(doc.double_categories, b, "double category")},
          {"objects", named_json(b.objects(), [&](std::size_t a) { return set_json(f.on_object[a]); })},
          {"arrows", named_json(b.arrows(), [&](std::size_t a) { return table_json(f.on_arrow[a]); })},
          {"proarrows", named_json(b.proarrows(), [&](std::size_t m) { return span_json(f.on_proarrow[m]); })},
          {"cells", named_json(b.cells(), [&](std::size_t c) { return table_json(f.on_cell[c].vertex); })},
          {"units", named_json(b.objects(), [&](std::size_t a) { return table_json(f.unit_lax[a]); })},
          {"composition", pair_tables_json(b, f.comp_lax, span_at, span_at)}};
}

Json transformation_json(const LaxTransformation& t, const Document& doc) {
  const DoubleCategory& b = t.src.base;
  return {{"src", name_of(doc.lax_functors, t.src, "lax functor")},
          {"tgt", name_of(doc.lax_functors, t.tgt, "lax functor")},
          {"objects", named_json(b.objects(), [&](std::size_t a) { return table_json(t.obj_comp[a]); })},
          {"proarrows", named_json(b.proarrows(), [&](std::size_t m) { return table_json(t.pro_comp[m]); })}};
}

void put_double_functor(Json& out, const DoubleFunctor& p) {
  out["objects"] = table_json(p.f0.on_objects);
  out["arrows"] = table_json(p.f0.on_morphisms);
  out["proarrows"] = table_json(p.f1.on_objects);
  out["cells"] = table_json(p.f1.on_morphisms);
}

Json ddf_json(const DDFCandidate& p, const Document& doc) {
  Json out = {{"total", name_of(doc.double_categories, p.total(), "double category")},
              {"base", name_of(doc.double_categories, p.base(), "double category")}};
  put_double_functor(out, p.proj);
  return out;
}

Json ddf_morphism_json(const DDFMorphism& h, const Document& doc) {
  Json out = {{"src", name_of(doc.ddfs, h.src, "ddf")}, {"tgt", name_of(doc.ddfs, h.tgt, "ddf")}};
  put_double_functor(out, h.map);
  return out;
}

Json module_json(const Module& mod, const Document& doc) {
  const DoubleCategory& b = mod.base();
  auto f = [&](std::size_t m) -> const Span& { return mod.src.on_proarrow[m]; };
  auto g = [&](std::size_t m) -> const Span& { return mod.tgt.on_proarrow[m]; };
  auto self = [&](std::size_t m) -> const Span& { return mod.on_proarrow[m]; };
  return {{"src", name_of(doc.lax_functors, mod.src, "lax functor")},
          {"tgt", name_of(doc.lax_functors, mod.tgt, "lax functor")},
          {"proarrows", named_json(b.proarrows(), [&](std::size_t m) { return span_json(mod.on_proarrow[m]); })},
          {"cells", named_json(b.cells(), [&](std::size_t c) { return table_json(mod.on_cell[c].vertex); })},
          {"left_action", pair_tables_json(b, mod.left_act, f, self)},
          {"right_action", pair_tables_json(b, mod.right_act, self, g)}};
}

Json multimodulation_json(const Multimodulation& mu, const Document& doc) {
  const DoubleCategory& b = mu.base();
  const std::size_t k = mu.arity();
  Json sources = Json::array();
  for (const auto& s : mu.sources) sources.push_back(name_of(doc.modules, s, "module"));
  Json comps = Json::array();
  for (const auto& [key, fn] : mu.components) {
    Json c = Json::object();
    if (k == 0) {
      c["object"] = b.objects()[key[0]];
      c["table"] = tuples_json(fn, [&](std::size_t i) { return std::vector<Id>{fn.dom()[i]}; });
    } else {
      std::vector<Id> path;
      std::vector<Span> spans;
      for (std::size_t i = 0; i < k; ++i) {
        path.push_back(b.proarrows()[key[i]]);
        spans.push_back(mu.sources[i].on_proarrow[key[i]]);
      }
      PathVertex pv = path_vertex(spans);
      if (!(pv.span.vertex() == fn.dom())) throw Error(ErrorKind::InvalidInput, "component off its path domain");
      c["path"] = path;
      c["table"] = tuples_json(fn, [&](std::size_t i) { return pv.parts(i); });
    }
    comps.push_back(c);
  }
  return {{"sources", sources},
          {"target", name_of(doc.modules, mu.target, "module")},
          {"left", name_of(doc.transformations, mu.left, "transformation")},
          {"right", name_of(doc.transformations, mu.right, "transformation")},
          {"components", comps}};
}

Json profunctor_json(const InternalProfunctor& m, const Document& doc) {
  CategoryPullback l = pullback_category(m.src.total().tgt, m.leg0);
  CategoryPullback r = pullback_category(m.leg1, m.tgt.total().src);
  if (!(l.cat == m.left_act.src) || !(r.cat == m.right_act.src)) throw Error(ErrorKind::InvalidInput, "action off its pullback");
  return {{"src", name_of(doc.ddfs, m.src, "ddf")},
          {"tgt", name_of(doc.ddfs, m.tgt, "ddf")},
          {"carrier", name_of(doc.categories, m.carrier, "category")},
          {"over", functor_json(m.over)},
          {"leg0", functor_json(m.leg0)},
          {"leg1", functor_json(m.leg1)},
          {"left_action", tuple_functor_json(m.left_act, {l.p0, l.p1})},
          {"right_action", tuple_functor_json(m.right_act, {r.p0, r.p1})}};
}

Json multicell_json(const ProfMulticell& g, const Document& doc) {
  Json sources = Json::array();
  for (const auto& s : g.sources) sources.push_back(name_of(doc.profunctors, s, "profunctor"));
  PathCategory dom = multicell_domain(g.sources, g.left.src);
  if (!(dom.cat == g.map.src)) throw Error(ErrorKind::InvalidInput, "map off its domain");
  return {{"sources", sources},
          {"target", name_of(doc.profunctors, g.target, "profunctor")},
          {"left", name_of(doc.ddf_morphisms, g.left, "ddf morphism")},
          {"right", name_of(doc.ddf_morphisms, g.right, "ddf morphism")},
          {"map", tuple_functor_json(g.map, dom.proj)}};
}

// Indented like dump(1), but arrays of scalars stay on one line.
void pretty(const Json& j, std::size_t indent, std::string& out) {
  const std::string pad(indent, ' '), inner(indent + 1, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      out += inner + Json(k).dump() + ": ";
      pretty(v, indent + 1, out);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += inner;
      pretty(j[i], indent + 1, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

template <class T, class F>
void emit_section(Json& root, const char* section, const std::map<Id, T>& in, F&& emit) {
  if (in.empty()) return;
  Json out = Json::object();
  for (const auto& [name, v] : in) out[name] = emit(v);
  root[section] = std::move(out);
}

// Registration.

template <class T>
std::optional<Id> existing(const std::map<Id, T>& section, const T& v) {
  for (const auto& [k, x] : section) {
    if (x == v) return k;
  }
  return std::nullopt;
}

template <class T>
Id put(std::map<Id, T>& section, const Id& name, const T& v) {
  if (section.contains(name)) throw Error(ErrorKind::InvalidInput, "name " + name + " already names a different entity");
  section.emplace(name, v);
  return name;
}

}  // namespace

bool Document::empty() const {
  return sets.empty() && functions.empty() && categories.empty() && double_categories.empty() && lax_functors.empty() &&
         transformations.empty() && ddfs.empty() && ddf_morphisms.empty() && modules.empty() && multimodulations.empty() &&
         profunctors.empty() && multicells.empty();
}

Document parse_document(std::string_view text) {
  Document doc;
  if (std::all_of(text.begin(), text.end(), [](char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; })) return doc;
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    auto detail = what.find("syntax error");
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                           (detail == std::string::npos ? what : what.substr(detail)));
  }
  Node top(root, "");
  for (const auto& [k, v] : top.object()) {
    if (std::find_if(std::begin(kSections), std::end(kSections), [&](const char* s) { return k == s; }) == std::end(kSections)) {
      top.at(k).fail("unknown section");
    }
  }
  read_section(root, "sets", doc.sets, read_set);
  read_section(root, "functions", doc.functions, [&](const Node& n) {
    n.fields({"dom", "cod", "table"});
    return read_fn(n.at("table"), resolve(doc.sets, n.at("dom"), "set"), resolve(doc.sets, n.at("cod"), "set"));
  });
  read_section(root, "categories", doc.categories, [](const Node& n) {
    n.fields({"objects", "morphisms", "identities", "composites"});
    CategoryPresentation p;
    p.objects = n.at("objects").names();
    Node mor = n.at("morphisms");
    for (std::size_t i = 0; i < mor.array().size(); ++i) {
      std::vector<Id> row = mor.item(i).names();
      if (row.size() != 3) mor.item(i).fail("expected [name, dom, cod]");
      p.morphisms.push_back({row[0], row[1], row[2]});
    }
    for (const auto& [x, i] : read_table(n.at("identities"))) p.identities.emplace_back(x, i);
    Node comps = n.at("composites");
    for (std::size_t i = 0; i < comps.array().size(); ++i) {
      std::vector<Id> row = comps.item(i).names();
      if (row.size() != 3) comps.item(i).fail("expected [first, second, result]");
      p.composites.push_back({row[0], row[1], row[2]});
    }
    return guard(n, [&] { return make_category(p); });
  });
  read_section(root, "double_categories", doc.double_categories, [&](const Node& n) { return read_double(n, doc); });
  read_section(root, "lax_functors", doc.lax_functors, [&](const Node& n) { return read_lax(n, doc); });
  read_section(root, "transformations", doc.transformations, [&](const Node& n) { return read_transformation(n, doc); });
  read_section(root, "ddfs", doc.ddfs, [&](const Node& n) { return read_ddf(n, doc); });
  read_section(root, "ddf_morphisms", doc.ddf_morphisms, [&](const Node& n) { return read_ddf_morphism(n, doc); });
  read_section(root, "modules", doc.modules, [&](const Node& n) { return read_module(n, doc); });
  read_section(root, "multimodulations", doc.multimodulations, [&](const Node& n) { return read_multimodulation(n, doc); });
  read_section(root, "profunctors", doc.profunctors, [&](const Node& n) { return read_profunctor(n, doc); });
  read_section(root, "multicells", doc.multicells, [&](const Node& n) { return read_multicell(n, doc); });
  return doc;
}

std::string emit_document(const Document& doc) {
  Json root = Json::object();
  emit_section(root, "sets", doc.sets, set_json);
  emit_section(root, "functions", doc.functions, [&](const FinFn& f) {
    return Json{{"dom", name_of(doc.sets, f.dom(), "set")}, {"cod", name_of(doc.sets, f.cod(), "set")}, {"table", table_json(f)}};
  });
  emit_section(root, "categories", doc.categories, category_json);
  emit_section(root, "double_categories", doc.double_categories, [&](const auto& v) { return double_json(v, doc); });
  emit_section(root, "lax_functors", doc.lax_functors, [&](const auto& v) { return lax_json(v, doc); });
  emit_section(root, "transformations", doc.transformations, [&](const auto& v) { return transformation_json(v, doc); });
  emit_section(root, "ddfs", doc.ddfs, [&](const auto& v) { return ddf_json(v, doc); });
  emit_section(root, "ddf_morphisms", doc.ddf_morphisms, [&](const auto& v) { return ddf_morphism_json(v, doc); });
  emit_section(root, "modules", doc.modules, [&](const auto& v) { return module_json(v, doc); });
  emit_section(root, "multimodulations", doc.multimodulations, [&](const auto& v) { return multimodulation_json(v, doc); });
  emit_section(root, "profunctors", doc.profunctors, [&](const auto& v) { return profunctor_json(v, doc); });
  emit_section(root, "multicells", doc.multicells, [&](const auto& v) { return multicell_json(v, doc); });
  std::string out;
  pretty(root, 0, out);
  return out + "\n";
}

Id add_set(Document& doc, const Id& name, const FinSet& s) {
  if (auto k = existing(doc.sets, s)) return *k;
  return put(doc.sets, name, s);
}

Id add_function(Document& doc, const Id& name, const FinFn& f) {
  if (auto k = existing(doc.functions, f)) return *k;
  add_set(doc, name + ".dom", f.dom());
  add_set(doc, name + ".cod", f.cod());
  return put(doc.functions, name, f);
}

Id add_category(Document& doc, const Id& name, const FinCategory& c) {
  if (auto k = existing(doc.categories, c)) return *k;
  return put(doc.categories, name, c);
}

Id add_double_category(Document& doc, const Id& name, const DoubleCategory& b) {
  if (auto k = existing(doc.double_categories, b)) return *k;
  add_category(doc, name + ".d0", b.d0);
  add_category(doc, name + ".d1", b.d1);
  return put(doc.double_categories, name, b);
}

Id add_lax_functor(Document& doc, const Id& name, const LaxSpanFunctor& f) {
  if (auto k = existing(doc.lax_functors, f)) return *k;
  add_double_category(doc, name + ".base", f.base);
  return put(doc.lax_functors, name, f);
}

Id add_transformation(Document& doc, const Id& name, const LaxTransformation& t) {
  if (auto k = existing(doc.transformations, t)) return *k;
  add_lax_functor(doc, name + ".src", t.src);
  add_lax_functor(doc, name + ".tgt", t.tgt);
  return put(doc.transformations, name, t);
}

Id add_ddf(Document& doc, const Id& name, const DDFCandidate& p) {
  if (auto k = existing(doc.ddfs, p)) return *k;
  add_double_category(doc, name + ".base", p.base());
  add_double_category(doc, name + ".total", p.total());
  return put(doc.ddfs, name, p);
}

Id add_ddf_morphism(Document& doc, const Id& name, const DDFMorphism& h) {
  if (auto k = existing(doc.ddf_morphisms, h)) return *k;
  add_ddf(doc, name + ".src", h.src);
  add_ddf(doc, name + ".tgt", h.tgt);
  return put(doc.ddf_morphisms, name, h);
}

Id add_module(Document& doc, const Id& name, const Module& m) {
  if (auto k = existing(doc.modules, m)) return *k;
  add_lax_functor(doc, name + ".src", m.src);
  add_lax_functor(doc, name + ".tgt", m.tgt);
  return put(doc.modules, name, m);
}

Id add_multimodulation(Document& doc, const Id& name, const Multimodulation& mu) {
  if (auto k = existing(doc.multimodulations, mu)) return *k;
  for (std::size_t i = 0; i < mu.sources.size(); ++i) add_module(doc, name + ".source" + std::to_string(i), mu.sources[i]);
  add_module(doc, name + ".target", mu.target);
  add_transformation(doc, name + ".left", mu.left);
  add_transformation(doc, name + ".right", mu.right);
  return put(doc.multimodulations, name, mu);
}

Id add_profunctor(Document& doc, const Id& name, const InternalProfunctor& m) {
  if (auto k = existing(doc.profunctors, m)) return *k;
  add_ddf(doc, name + ".src", m.src);
  add_ddf(doc, name + ".tgt", m.tgt);
  add_category(doc, name + ".carrier", m.carrier);
  return put(doc.profunctors, name, m);
}

Id add_multicell(Document& doc, const Id& name, const ProfMulticell& g) {
  if (auto k = existing(doc.multicells, g)) return *k;
  for (std::size_t i = 0; i < g.sources.size(); ++i) add_profunctor(doc, name + ".source" + std::to_string(i), g.sources[i]);
  add_profunctor(doc, name + ".target", g.target);
  add_ddf_morphism(doc, name + ".left", g.left);
  add_ddf_morphism(doc, name + ".right", g.right);
  return put(doc.multicells, name, g);
}

Document document_of(const DoubleCategory& b, const Id& base_name, const EquivalenceCorpus& c) {
  Document doc;
  add_double_category(doc, base_name, b);
  auto each = [&](const auto& items, const std::string& prefix, auto add) {
    for (std::size_t i = 0; i < items.size(); ++i) add(doc, prefix + std::to_string(i), items[i]);
  };
  each(c.functors, "F", add_lax_functor);
  each(c.transformations, "T", add_transformation);
  each(c.ddfs, "P", add_ddf);
  each(c.ddf_morphisms, "H", add_ddf_morphism);
  each(c.modules, "M", add_module);
  each(c.multimodulations, "mu", add_multimodulation);
  each(c.profunctors, "N", add_profunctor);
  each(c.multicells, "g", add_multicell);
  return doc;
}

EquivalenceCorpus corpus_of(const Document& doc) {
  EquivalenceCorpus c;
  auto values = [](const auto& section, auto& out) {
    for (const auto& [name, v] : section) out.push_back(v);
  };
  values(doc.lax_functors, c.functors);
  values(doc.transformations, c.transformations);
  values(doc.ddfs, c.ddfs);
  values(doc.ddf_morphisms, c.ddf_morphisms);
  values(doc.modules, c.modules);
  values(doc.multimodulations, c.multimodulations);
  values(doc.profunctors, c.profunctors);
  values(doc.multicells, c.multicells);
  return c;
}

Report validate_document(const Document& doc, const CheckOptions& opts) {
  Report r;
  auto run = [&](const std::string& context, const std::function<Report()>& check) {
    try {
      r.merge(check(), context);
    } catch (const Error& e) {
      Report fault;
      fault.add("document." + std::string(to_string(e.kind())), e.what());
      r.merge(fault, context);
    }
  };
  for (const auto& [n, c] : doc.categories) run("categories/" + n, [&] { return check_category(c); });
  for (const auto& [n, b] : doc.double_categories) run("double_categories/" + n, [&] { return check_double_category(b); });
  for (const auto& [n, f] : doc.lax_functors) run("lax_functors/" + n, [&] { return check_lax_functor(f, opts); });
  for (const auto& [n, t] : doc.transformations) run("transformations/" + n, [&] { return check_transformation(t); });
  for (const auto& [n, p] : doc.ddfs) run("ddfs/" + n, [&] { return is_ddf(p); });
  for (const auto& [n, h] : doc.ddf_morphisms) run("ddf_morphisms/" + n, [&] { return check_ddf_morphism(h); });
  for (const auto& [n, m] : doc.modules) run("modules/" + n, [&] { return check_module(m, opts); });
  for (const auto& [n, mu] : doc.multimodulations) run("multimodulations/" + n, [&] { return check_multimodulation(mu, opts); });
  for (const auto& [n, m] : doc.profunctors) run("profunctors/" + n, [&] { return check_internal_profunctor(m); });
  for (const auto& [n, g] : doc.multicells) run("multicells/" + n, [&] { return check_prof_multicell(g); });
  return r;
}

}  // namespace ddf
