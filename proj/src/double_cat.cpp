#include "ddf/double_cat.hpp"

#include <map>
#include <set>

#include "ddf/error.hpp"

namespace ddf {

std::optional<std::size_t> DoubleCategory::pair_index(std::size_t m, std::size_t n) const {
  return composable().objects().find(pair_id(proarrows()[m], proarrows()[n]));
}

std::optional<std::size_t> DoubleCategory::cell_pair_index(std::size_t a, std::size_t b) const {
  return composable().morphisms().find(pair_id(cells()[a], cells()[b]));
}

std::size_t DoubleCategory::ext(std::size_t m, std::size_t n) const {
  auto i = pair_index(m, n);
  if (!i) throw Error(ErrorKind::CompositionMismatch, proarrows()[m] + " and " + proarrows()[n] + " do not compose");
  return ext_comp.on_objects.at(*i);
}

std::size_t DoubleCategory::ext_cells(std::size_t a, std::size_t b) const {
  auto i = cell_pair_index(a, b);
  if (!i) throw Error(ErrorKind::CompositionMismatch, cells()[a] + " and " + cells()[b] + " do not compose");
  return ext_comp.on_morphisms.at(*i);
}

namespace {

template <class Next>
std::vector<std::vector<std::size_t>> paths(std::size_t count, std::size_t k, Next composable) {
  std::vector<std::vector<std::size_t>> out;
  if (k == 0) return out;
  std::vector<std::size_t> cur;
  std::function<void()> extend = [&]() {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t x = 0; x < count; ++x) {
      if (!cur.empty() && !composable(cur.back(), x)) continue;
      cur.push_back(x);
      extend();
      cur.pop_back();
    }
  };
  extend();
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> DoubleCategory::proarrow_paths(std::size_t k) const {
  return paths(proarrows().size(), k, [&](std::size_t m, std::size_t n) { return pro_tgt(m) == pro_src(n); });
}

std::vector<std::vector<std::size_t>> DoubleCategory::cell_paths(std::size_t k) const {
  return paths(cells().size(), k, [&](std::size_t a, std::size_t b) { return cell_tgt(a) == cell_src(b); });
}

std::size_t DoubleCategory::path_composite(std::span<const std::size_t> path) const {
  if (path.empty()) throw Error(ErrorKind::InvalidInput, "empty proarrow path");
  std::size_t acc = path[0];
  for (std::size_t i = 1; i < path.size(); ++i) acc = ext(acc, path[i]);
  return acc;
}

std::size_t DoubleCategory::cell_path_composite(std::span<const std::size_t> path) const {
  if (path.empty()) throw Error(ErrorKind::InvalidInput, "empty cell path");
  std::size_t acc = path[0];
  for (std::size_t i = 1; i < path.size(); ++i) acc = ext_cells(acc, path[i]);
  return acc;
}

DoubleCategory make_double(FinCategory d0, FinCategory d1, FinFunctor src, FinFunctor tgt, FinFunctor unit,
                           const ExtRule& on_proarrows, const ExtRule& on_cells) {
  CategoryPullback comp = pullback_category(tgt, src);
  auto tabulate = [&](const FinSet& pairs, const FinFn& p0, const FinFn& p1, const FinSet& out, const ExtRule& rule) {
    return FinFn::tabulate(pairs, out, [&](const Id& v) {
      auto r = rule(p0(v), p1(v));
      if (!r) throw Error(ErrorKind::Shape, "no external composite for " + v);
      return *r;
    });
  };
  FinFn on_obj = tabulate(comp.cat.objects(), comp.p0.on_objects, comp.p1.on_objects, d1.objects(), on_proarrows);
  FinFn on_mor = tabulate(comp.cat.morphisms(), comp.p0.on_morphisms, comp.p1.on_morphisms, d1.morphisms(), on_cells);
  FinFunctor ext{comp.cat, d1, on_obj, on_mor};
  return {std::move(d0), std::move(d1), std::move(src), std::move(tgt), std::move(unit), std::move(ext)};
}

DoubleCategory build_double(const DoublePresentation& p) {
  // d0
  CategoryPresentation c0;
  c0.objects = p.objects;
  std::map<Id, std::pair<Id, Id>> arrow_ends;
  auto id_of = [](const Id& a) { return "id_" + a; };
  for (const auto& a : p.objects) {
    c0.morphisms.push_back({id_of(a), a, a});
    c0.identities.emplace_back(a, id_of(a));
    arrow_ends[id_of(a)] = {a, a};
  }
  for (const auto& f : p.arrows) {
    c0.morphisms.push_back({f.name, f.dom, f.cod});
    arrow_ends[f.name] = {f.dom, f.cod};
  }
  std::map<std::pair<Id, Id>, Id> arrow_comp;
  for (const auto& [f, ends] : arrow_ends) {
    arrow_comp[{id_of(ends.first), f}] = f;
    arrow_comp[{f, id_of(ends.second)}] = f;
  }
  for (const auto& e : p.arrow_composites) arrow_comp[{e.first, e.second}] = e.result;
  for (const auto& [k, v] : arrow_comp) c0.composites.push_back({k.first, k.second, v});
  FinCategory d0 = make_category(c0);

  // d1
  auto unit_of = [](const Id& a) { return "u_" + a; };
  auto unit_cell_of = [&](const Id& f) -> Id {
    for (const auto& a : p.objects) {
      if (f == id_of(a)) return "1_" + unit_of(a);
    }
    return "u_" + f;
  };
  CategoryPresentation c1;
  std::map<Id, std::pair<Id, Id>> pro_ends;
  for (const auto& a : p.objects) {
    c1.objects.push_back(unit_of(a));
    pro_ends[unit_of(a)] = {a, a};
  }
  for (const auto& m : p.proarrows) {
    c1.objects.push_back(m.name);
    pro_ends[m.name] = {m.src, m.tgt};
  }
  struct Frame {
    Id dom, cod, src, tgt;
  };
  std::map<Id, Frame> frames;
  std::vector<Id> cell_order;
  for (const auto& m : c1.objects) {
    Id name = "1_" + m;
    frames[name] = {m, m, id_of(pro_ends[m].first), id_of(pro_ends[m].second)};
    cell_order.push_back(name);
    c1.identities.emplace_back(m, name);
  }
  std::map<Id, Id> unit_cells;  // arrow -> unit cell
  for (const auto& a : p.objects) unit_cells[id_of(a)] = "1_" + unit_of(a);
  for (const auto& f : p.arrows) {
    Id name = unit_cell_of(f.name);
    frames[name] = {unit_of(f.dom), unit_of(f.cod), f.name, f.name};
    cell_order.push_back(name);
    unit_cells[f.name] = name;
  }
  for (const auto& c : p.cells) {
    frames[c.name] = {c.dom, c.cod, c.src, c.tgt};
    cell_order.push_back(c.name);
  }
  for (const auto& name : cell_order) c1.morphisms.push_back({name, frames[name].dom, frames[name].cod});
  std::map<std::pair<Id, Id>, Id> cell_comp;
  for (const auto& [name, fr] : frames) {
    cell_comp[{"1_" + fr.dom, name}] = name;
    cell_comp[{name, "1_" + fr.cod}] = name;
  }
  for (const auto& [k, v] : arrow_comp) cell_comp[{unit_cells[k.first], unit_cells[k.second]}] = unit_cells[v];
  for (const auto& e : p.cell_composites) cell_comp[{e.first, e.second}] = e.result;
  for (const auto& [k, v] : cell_comp) c1.composites.push_back({k.first, k.second, v});
  FinCategory d1 = make_category(c1);

  Table src_obj, tgt_obj, src_mor, tgt_mor, unit_obj;
  for (const auto& [m, ends] : pro_ends) src_obj[m] = ends.first, tgt_obj[m] = ends.second;
  for (const auto& [c, fr] : frames) src_mor[c] = fr.src, tgt_mor[c] = fr.tgt;
  for (const auto& a : p.objects) unit_obj[a] = unit_of(a);
  Table unit_mor(unit_cells.begin(), unit_cells.end());
  FinFunctor src{d1, d0, FinFn::from_table(d1.objects(), d0.objects(), src_obj),
                 FinFn::from_table(d1.morphisms(), d0.morphisms(), src_mor)};
  FinFunctor tgt{d1, d0, FinFn::from_table(d1.objects(), d0.objects(), tgt_obj),
                 FinFn::from_table(d1.morphisms(), d0.morphisms(), tgt_mor)};
  FinFunctor unit{d0, d1, FinFn::from_table(d0.objects(), d1.objects(), unit_obj),
                  FinFn::from_table(d0.morphisms(), d1.morphisms(), unit_mor)};

  std::set<Id> unit_pros, unit_cell_names;
  for (const auto& a : p.objects) unit_pros.insert(unit_of(a));
  for (const auto& [f, c] : unit_cells) unit_cell_names.insert(c);
  std::map<std::pair<Id, Id>, Id> pro_ext, cell_ext;
  for (const auto& e : p.proarrow_ext) pro_ext[{e.first, e.second}] = e.result;
  for (const auto& e : p.cell_ext) cell_ext[{e.first, e.second}] = e.result;

  ExtRule on_pro = [&](const Id& m, const Id& n) -> std::optional<Id> {
    if (unit_pros.count(m)) return n;
    if (unit_pros.count(n)) return m;
    auto it = pro_ext.find({m, n});
    if (it == pro_ext.end()) return std::nullopt;
    return it->second;
  };
  ExtRule on_cells = [&](const Id& a, const Id& b) -> std::optional<Id> {
    if (unit_cell_names.count(a)) return b;
    if (unit_cell_names.count(b)) return a;
    auto it = cell_ext.find({a, b});
    if (it != cell_ext.end()) return it->second;
    // Identity cells compose to the identity on the composite.
    if (a == "1_" + frames[a].dom && b == "1_" + frames[b].dom) {
      auto m = on_pro(frames[a].dom, frames[b].dom);
      if (m) return "1_" + *m;
    }
    return std::nullopt;
  };
  return make_double(d0, d1, src, tgt, unit, on_pro, on_cells);
}

Report check_double_category(const DoubleCategory& b) {
  Report r;
  if (!(b.src.src == b.d1) || !(b.src.tgt == b.d0) || !(b.tgt.src == b.d1) || !(b.tgt.tgt == b.d0) ||
      !(b.unit.src == b.d0) || !(b.unit.tgt == b.d1) || !(b.ext_comp.tgt == b.d1)) {
    r.add("double.shape", "structure functors do not match d0/d1");
    return r;
  }
  r.merge(check_category(b.d0), "d0");
  r.merge(check_category(b.d1), "d1");
  r.merge(check_functor(b.src), "src");
  r.merge(check_functor(b.tgt), "tgt");
  r.merge(check_functor(b.unit), "unit");
  if (!r.ok()) return r;
  CategoryPullback comp = pullback_category(b.tgt, b.src);
  if (!(comp.cat == b.composable())) {
    r.add("double.shape", "ext_comp is not defined on the composable pairs");
    return r;
  }
  r.merge(check_functor(b.ext_comp), "ext_comp");
  if (!r.ok()) return r;

  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    std::size_t u = b.unit_pro(a);
    if (b.pro_src(u) != a || b.pro_tgt(u) != a) r.add("double.unit_boundary", b.objects()[a]);
  }
  for (std::size_t f = 0; f < b.arrows().size(); ++f) {
    std::size_t u = b.unit_cell(f);
    if (b.cell_src(u) != f || b.cell_tgt(u) != f) r.add("double.unit_boundary", b.arrows()[f]);
  }
  const FinCategory& cp = b.composable();
  for (std::size_t i = 0; i < cp.objects().size(); ++i) {
    std::size_t m = comp.p0.on_objects.at(i), n = comp.p1.on_objects.at(i);
    std::size_t nm = b.ext_comp.on_objects.at(i);
    if (b.pro_src(nm) != b.pro_src(m) || b.pro_tgt(nm) != b.pro_tgt(n)) {
      r.add("double.composite_boundary", cp.objects()[i]);
    }
  }
  for (std::size_t i = 0; i < cp.morphisms().size(); ++i) {
    std::size_t x = comp.p0.on_morphisms.at(i), y = comp.p1.on_morphisms.at(i);
    std::size_t yx = b.ext_comp.on_morphisms.at(i);
    if (b.cell_src(yx) != b.cell_src(x) || b.cell_tgt(yx) != b.cell_tgt(y)) {
      r.add("double.composite_boundary", cp.morphisms()[i]);
    }
  }
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    if (b.ext(b.unit_pro(b.pro_src(m)), m) != m) r.add("double.unit_law", "u ⊗ " + b.proarrows()[m]);
    if (b.ext(m, b.unit_pro(b.pro_tgt(m))) != m) r.add("double.unit_law", b.proarrows()[m] + " ⊗ u");
  }
  for (std::size_t c = 0; c < b.cells().size(); ++c) {
    if (b.ext_cells(b.unit_cell(b.cell_src(c)), c) != c) r.add("double.unit_law", "u ⊗ " + b.cells()[c]);
    if (b.ext_cells(c, b.unit_cell(b.cell_tgt(c))) != c) r.add("double.unit_law", b.cells()[c] + " ⊗ u");
  }
  for (const auto& path : b.proarrow_paths(3)) {
    if (b.ext(b.ext(path[0], path[1]), path[2]) != b.ext(path[0], b.ext(path[1], path[2]))) {
      r.add("double.associativity", b.proarrows()[path[0]] + "," + b.proarrows()[path[1]] + "," + b.proarrows()[path[2]]);
    }
  }
  for (const auto& path : b.cell_paths(3)) {
    if (b.ext_cells(b.ext_cells(path[0], path[1]), path[2]) != b.ext_cells(path[0], b.ext_cells(path[1], path[2]))) {
      r.add("double.associativity", b.cells()[path[0]] + "," + b.cells()[path[1]] + "," + b.cells()[path[2]]);
    }
  }
  return r;
}

Report check_interchange(const DoubleCategory& b) {
  Report r;
  const FinCategory& d1 = b.d1;
  for (std::size_t a = 0; a < b.cells().size(); ++a) {
    for (std::size_t c = 0; c < b.cells().size(); ++c) {
      if (b.cell_tgt(a) != b.cell_src(c)) continue;
      for (const auto& a2 : d1.composites_from(a)) {
        for (const auto& c2 : d1.composites_from(c)) {
          if (b.cell_tgt(a2.second) != b.cell_src(c2.second)) continue;
          // (c2∘c) ⊗ (a2∘a) = (c2 ⊗ a2) ∘ (c ⊗ a)
          std::size_t lhs = b.ext_cells(a2.result, c2.result);
          auto rhs = d1.then(b.ext_cells(a, c), b.ext_cells(a2.second, c2.second));
          if (!rhs || *rhs != lhs) {
            r.add("double.interchange", "(" + b.cells()[a] + "," + b.cells()[c] + ") then (" +
                                            b.cells()[a2.second] + "," + b.cells()[c2.second] + ")");
          }
        }
      }
    }
  }
  return r;
}

DoubleCategory terminal_double() { return build_double({{"•"}, {}, {}, {}, {}, {}, {}, {}}); }

DoubleCategory vertical_double(const FinCategory& c) {
  FinCategory d0 = FinCategory::discrete(c.objects());
  FinCategory d1 = FinCategory::discrete(c.morphisms(), "1_");
  // Discrete identities share indices with their objects.
  auto lift = [](const FinCategory& s, const FinCategory& t, const FinFn& f) {
    return FinFunctor{s, t, FinFn(s.objects(), t.objects(), f.image()), FinFn(s.morphisms(), t.morphisms(), f.image())};
  };
  FinFunctor src = lift(d1, d0, c.dom());
  FinFunctor tgt = lift(d1, d0, c.cod());
  FinFunctor unit = lift(d0, d1, c.id());
  ExtRule on_pro = [&](const Id& f, const Id& g) -> std::optional<Id> {
    auto h = c.then(c.morphisms().index_of(f), c.morphisms().index_of(g));
    if (!h) return std::nullopt;
    return c.morphisms()[*h];
  };
  ExtRule on_cells = [&](const Id& a, const Id& b) -> std::optional<Id> {
    auto h = on_pro(a.substr(2), b.substr(2));
    if (!h) return std::nullopt;
    return "1_" + *h;
  };
  return make_double(d0, d1, src, tgt, unit, on_pro, on_cells);
}

DoubleCategory walking_proarrow() { return build_double({{"A", "B"}, {}, {}, {{"m", "A", "B"}}, {}, {}, {}, {}}); }

DoubleCategory walking_cell() {
  DoublePresentation p;
  p.objects = {"A", "B", "C", "D"};
  p.arrows = {{"f", "A", "C"}, {"g", "B", "D"}};
  p.proarrows = {{"m", "A", "B"}, {"n", "C", "D"}};
  p.cells = {{"θ", "m", "n", "f", "g"}};
  return build_double(p);
}

DoubleCategory transpose(const DoubleCategory& b) {
  std::vector<Composite> c0, c1;
  const FinCategory& cp = b.composable();
  CategoryPullback pairs = pullback_category(b.tgt, b.src);
  for (std::size_t i = 0; i < cp.objects().size(); ++i) {
    c0.push_back({pairs.p0.on_objects.at(i), pairs.p1.on_objects.at(i), b.ext_comp.on_objects.at(i)});
  }
  for (std::size_t i = 0; i < cp.morphisms().size(); ++i) {
    c1.push_back({pairs.p0.on_morphisms.at(i), pairs.p1.on_morphisms.at(i), b.ext_comp.on_morphisms.at(i)});
  }
  FinCategory d0(b.objects(), b.proarrows(), b.src.on_objects, b.tgt.on_objects, b.unit.on_objects, std::move(c0));
  FinCategory d1(b.arrows(), b.cells(), b.src.on_morphisms, b.tgt.on_morphisms, b.unit.on_morphisms, std::move(c1));
  FinFunctor src{d1, d0, b.d0.dom(), b.d1.dom()};
  FinFunctor tgt{d1, d0, b.d0.cod(), b.d1.cod()};
  FinFunctor unit{d0, d1, b.d0.id(), b.d1.id()};
  auto by_table = [](const FinCategory& c) {
    return [&c](const Id& x, const Id& y) -> std::optional<Id> {
      auto r = c.then(c.morphisms().index_of(x), c.morphisms().index_of(y));
      if (!r) return std::nullopt;
      return c.morphisms()[*r];
    };
  };
  return make_double(d0, d1, src, tgt, unit, by_table(b.d0), by_table(b.d1));
}

DoubleCategory opposite(const DoubleCategory& b) {
  FinCategory d0 = opposite_category(b.d0);
  FinCategory d1 = opposite_category(b.d1);
  FinFunctor src{d1, d0, b.src.on_objects, b.src.on_morphisms};
  FinFunctor tgt{d1, d0, b.tgt.on_objects, b.tgt.on_morphisms};
  FinFunctor unit{d0, d1, b.unit.on_objects, b.unit.on_morphisms};
  ExtRule on_pro = [&](const Id& m, const Id& n) -> std::optional<Id> {
    return b.proarrows()[b.ext(b.proarrows().index_of(m), b.proarrows().index_of(n))];
  };
  ExtRule on_cells = [&](const Id& x, const Id& y) -> std::optional<Id> {
    return b.cells()[b.ext_cells(b.cells().index_of(x), b.cells().index_of(y))];
  };
  return make_double(d0, d1, src, tgt, unit, on_pro, on_cells);
}

Report check_double_functor(const DoubleFunctor& p) {
  Report r;
  if (!(p.f0.src == p.src.d0) || !(p.f0.tgt == p.tgt.d0) || !(p.f1.src == p.src.d1) || !(p.f1.tgt == p.tgt.d1)) {
    r.add("double_functor.shape", "f0/f1 do not match the double categories");
    return r;
  }
  r.merge(check_functor(p.f0), "f0");
  r.merge(check_functor(p.f1), "f1");
  if (!r.ok()) return r;
  const DoubleCategory& s = p.src;
  const DoubleCategory& t = p.tgt;
  for (std::size_t m = 0; m < s.proarrows().size(); ++m) {
    std::size_t pm = p.f1.on_objects.at(m);
    if (t.pro_src(pm) != p.f0.on_objects.at(s.pro_src(m))) r.add("double_functor.source", s.proarrows()[m]);
    if (t.pro_tgt(pm) != p.f0.on_objects.at(s.pro_tgt(m))) r.add("double_functor.target", s.proarrows()[m]);
  }
  for (std::size_t c = 0; c < s.cells().size(); ++c) {
    std::size_t pc = p.f1.on_morphisms.at(c);
    if (t.cell_src(pc) != p.f0.on_morphisms.at(s.cell_src(c))) r.add("double_functor.source", s.cells()[c]);
    if (t.cell_tgt(pc) != p.f0.on_morphisms.at(s.cell_tgt(c))) r.add("double_functor.target", s.cells()[c]);
  }
  for (std::size_t a = 0; a < s.objects().size(); ++a) {
    if (p.f1.on_objects.at(s.unit_pro(a)) != t.unit_pro(p.f0.on_objects.at(a))) {
      r.add("double_functor.unit", s.objects()[a]);
    }
  }
  for (std::size_t f = 0; f < s.arrows().size(); ++f) {
    if (p.f1.on_morphisms.at(s.unit_cell(f)) != t.unit_cell(p.f0.on_morphisms.at(f))) {
      r.add("double_functor.unit", s.arrows()[f]);
    }
  }
  if (!r.ok()) return r;
  for (const auto& path : s.proarrow_paths(2)) {
    std::size_t lhs = p.f1.on_objects.at(s.ext(path[0], path[1]));
    std::size_t rhs = t.ext(p.f1.on_objects.at(path[0]), p.f1.on_objects.at(path[1]));
    if (lhs != rhs) r.add("double_functor.composition", s.proarrows()[path[0]] + "," + s.proarrows()[path[1]]);
  }
  for (const auto& path : s.cell_paths(2)) {
    std::size_t lhs = p.f1.on_morphisms.at(s.ext_cells(path[0], path[1]));
    std::size_t rhs = t.ext_cells(p.f1.on_morphisms.at(path[0]), p.f1.on_morphisms.at(path[1]));
    if (lhs != rhs) r.add("double_functor.composition", s.cells()[path[0]] + "," + s.cells()[path[1]]);
  }
  return r;
}

DoubleFunctor identity_double_functor(const DoubleCategory& b) {
  return {b, b, identity_functor(b.d0), identity_functor(b.d1)};
}

DoubleFunctor compose_double_functors(const DoubleFunctor& g, const DoubleFunctor& f) {
  if (!(f.tgt == g.src)) throw Error(ErrorKind::CompositionMismatch, "double functors are not composable");
  return {f.src, g.tgt, compose_functors(g.f0, f.f0), compose_functors(g.f1, f.f1)};
}

DoubleFunctor transpose_functor(const DoubleFunctor& p) {
  DoubleCategory s = transpose(p.src);
  DoubleCategory t = transpose(p.tgt);
  FinFunctor f0{s.d0, t.d0, p.f0.on_objects, p.f1.on_objects};
  FinFunctor f1{s.d1, t.d1, p.f0.on_morphisms, p.f1.on_morphisms};
  return {std::move(s), std::move(t), std::move(f0), std::move(f1)};
}

bool is_isomorphism(const DoubleFunctor& p) { return is_isomorphism(p.f0) && is_isomorphism(p.f1); }

DoubleFunctor to_terminal(const DoubleCategory& b, const DoubleCategory& t) {
  auto k = [](const FinSet& from, const FinSet& to) { return FinFn::constant(from, to, to[0]); };
  return {b, t, {b.d0, t.d0, k(b.objects(), t.objects()), k(b.arrows(), t.arrows())},
          {b.d1, t.d1, k(b.proarrows(), t.proarrows()), k(b.cells(), t.cells())}};
}

}  // namespace ddf
