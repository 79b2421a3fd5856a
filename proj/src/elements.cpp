#include "ddf/elements.hpp"

#include "ddf/error.hpp"

namespace ddf {

namespace {

// Elements of one level of El(F), grouped by base element in base order.
struct Level {
  std::vector<std::size_t> offset;  // first index over base element i
  std::vector<std::size_t> over;    // base element of each index
  std::vector<std::size_t> elem;    // element index within its fiber
  std::vector<Id> names;

  Level(const FinSet& base, const std::function<const FinSet&(std::size_t)>& fiber) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      offset.push_back(over.size());
      const FinSet& s = fiber(i);
      for (std::size_t x = 0; x < s.size(); ++x) {
        over.push_back(i);
        elem.push_back(x);
        names.push_back(pair_id(base[i], s[x]));
      }
    }
  }
  std::size_t at(std::size_t i, std::size_t x) const { return offset[i] + x; }
  std::size_t size() const { return over.size(); }
};

struct Layout {
  Level obj, arr, pro, cell;
  explicit Layout(const LaxSpanFunctor& f)
      : obj(f.base.objects(), [&](std::size_t b) -> const FinSet& { return f.on_object[b]; }),
        arr(f.base.arrows(), [&](std::size_t a) -> const FinSet& { return f.on_object[f.base.d0.cod().at(a)]; }),
        pro(f.base.proarrows(), [&](std::size_t m) -> const FinSet& { return f.vertex(m); }),
        cell(f.base.cells(), [&](std::size_t c) -> const FinSet& { return f.vertex(f.base.cell_cod(c)); }) {}
};

FinFn over_fn(const Level& l, const FinSet& dom, const FinSet& base) { return FinFn(dom, base, l.over); }

}  // namespace

DDFCandidate el_functor(const LaxSpanFunctor& f) {
  Report r = check_lax_functor(f);
  if (!r.ok()) throw Error(ErrorKind::InvalidFunctor, "not a lax functor: " + r.str());
  const DoubleCategory& b = f.base;
  Layout l(f);
  FinSet objects(l.obj.names), arrows(l.arr.names), proarrows(l.pro.names), cells(l.cell.names);

  std::vector<std::size_t> dom0, cod0, id0, dom1, cod1, id1;
  for (std::size_t i = 0; i < l.arr.size(); ++i) {
    std::size_t a = l.arr.over[i], y = l.arr.elem[i];
    dom0.push_back(l.obj.at(b.d0.dom().at(a), f.on_arrow[a].at(y)));
    cod0.push_back(l.obj.at(b.d0.cod().at(a), y));
  }
  for (std::size_t i = 0; i < l.obj.size(); ++i) id0.push_back(l.arr.at(b.d0.identity(l.obj.over[i]), l.obj.elem[i]));
  std::vector<Composite> comp0;
  for (const auto& c : b.d0.composites()) {
    const FinFn& gstar = f.on_arrow[c.second];
    for (std::size_t z = 0; z < gstar.dom().size(); ++z) {
      comp0.push_back({l.arr.at(c.first, gstar.at(z)), l.arr.at(c.second, z), l.arr.at(c.result, z)});
    }
  }
  FinCategory d0(objects, arrows, FinFn(arrows, objects, dom0), FinFn(arrows, objects, cod0), FinFn(objects, arrows, id0),
                 std::move(comp0));

  for (std::size_t i = 0; i < l.cell.size(); ++i) {
    std::size_t c = l.cell.over[i], t = l.cell.elem[i];
    dom1.push_back(l.pro.at(b.cell_dom(c), f.on_cell[c].vertex.at(t)));
    cod1.push_back(l.pro.at(b.cell_cod(c), t));
  }
  for (std::size_t i = 0; i < l.pro.size(); ++i) id1.push_back(l.cell.at(b.d1.identity(l.pro.over[i]), l.pro.elem[i]));
  std::vector<Composite> comp1;
  for (const auto& c : b.d1.composites()) {
    const FinFn& bstar = f.on_cell[c.second].vertex;
    for (std::size_t t = 0; t < bstar.dom().size(); ++t) {
      comp1.push_back({l.cell.at(c.first, bstar.at(t)), l.cell.at(c.second, t), l.cell.at(c.result, t)});
    }
  }
  FinCategory d1(proarrows, cells, FinFn(cells, proarrows, dom1), FinFn(cells, proarrows, cod1),
                 FinFn(proarrows, cells, id1), std::move(comp1));

  std::vector<std::size_t> src_o, tgt_o, src_m, tgt_m, unit_o, unit_m;
  for (std::size_t i = 0; i < l.pro.size(); ++i) {
    std::size_t m = l.pro.over[i], s = l.pro.elem[i];
    src_o.push_back(l.obj.at(b.pro_src(m), f.on_proarrow[m].leg0().at(s)));
    tgt_o.push_back(l.obj.at(b.pro_tgt(m), f.on_proarrow[m].leg1().at(s)));
  }
  for (std::size_t i = 0; i < l.cell.size(); ++i) {
    std::size_t c = l.cell.over[i], t = l.cell.elem[i];
    const Span& fn = f.on_proarrow[b.cell_cod(c)];
    src_m.push_back(l.arr.at(b.cell_src(c), fn.leg0().at(t)));
    tgt_m.push_back(l.arr.at(b.cell_tgt(c), fn.leg1().at(t)));
  }
  for (std::size_t i = 0; i < l.obj.size(); ++i) {
    std::size_t a = l.obj.over[i];
    unit_o.push_back(l.pro.at(b.unit_pro(a), f.unit_lax[a].at(l.obj.elem[i])));
  }
  for (std::size_t i = 0; i < l.arr.size(); ++i) {
    std::size_t a = l.arr.over[i];
    unit_m.push_back(l.cell.at(b.unit_cell(a), f.unit_lax[b.d0.cod().at(a)].at(l.arr.elem[i])));
  }
  FinFunctor src{d1, d0, FinFn(proarrows, objects, src_o), FinFn(cells, arrows, src_m)};
  FinFunctor tgt{d1, d0, FinFn(proarrows, objects, tgt_o), FinFn(cells, arrows, tgt_m)};
  FinFunctor unit{d0, d1, FinFn(objects, proarrows, unit_o), FinFn(arrows, cells, unit_m)};

  CategoryPullback comp = pullback_category(tgt, src);
  std::vector<std::size_t> ext_o, ext_m;
  for (std::size_t i = 0; i < comp.cat.objects().size(); ++i) {
    std::size_t u = comp.p0.on_objects.at(i), v = comp.p1.on_objects.at(i);
    std::size_t m = l.pro.over[u], n = l.pro.over[v];
    ext_o.push_back(l.pro.at(b.ext(m, n), f.compose(m, n, l.pro.elem[u], l.pro.elem[v])));
  }
  for (std::size_t i = 0; i < comp.cat.morphisms().size(); ++i) {
    std::size_t u = comp.p0.on_morphisms.at(i), v = comp.p1.on_morphisms.at(i);
    std::size_t alpha = l.cell.over[u], beta = l.cell.over[v];
    ext_m.push_back(l.cell.at(b.ext_cells(alpha, beta),
                              f.compose(b.cell_cod(alpha), b.cell_cod(beta), l.cell.elem[u], l.cell.elem[v])));
  }
  FinFunctor ext{comp.cat, d1, FinFn(comp.cat.objects(), proarrows, ext_o), FinFn(comp.cat.morphisms(), cells, ext_m)};
  DoubleCategory e{d0, d1, src, tgt, unit, ext};

  FinFunctor p0{d0, b.d0, over_fn(l.obj, objects, b.objects()), over_fn(l.arr, arrows, b.arrows())};
  FinFunctor p1{d1, b.d1, over_fn(l.pro, proarrows, b.proarrows()), over_fn(l.cell, cells, b.cells())};
  return {DoubleFunctor{e, b, p0, p1}};
}

DDFMorphism el_transformation(const LaxTransformation& t) {
  Report r = check_transformation(t);
  if (!r.ok()) throw Error(ErrorKind::InvalidTransformation, "not a transformation: " + r.str());
  const LaxSpanFunctor& f = t.src;
  const LaxSpanFunctor& g = t.tgt;
  const DoubleCategory& b = f.base;
  DDFCandidate ef = el_functor(f), eg = el_functor(g);
  Layout lf(f), lg(g);
  std::vector<std::size_t> obj, arr, pro, cell;
  for (std::size_t i = 0; i < lf.obj.size(); ++i) {
    std::size_t a = lf.obj.over[i];
    obj.push_back(lg.obj.at(a, t.obj_comp[a].at(lf.obj.elem[i])));
  }
  for (std::size_t i = 0; i < lf.arr.size(); ++i) {
    std::size_t a = lf.arr.over[i], c = b.d0.cod().at(a);
    arr.push_back(lg.arr.at(a, t.obj_comp[c].at(lf.arr.elem[i])));
  }
  for (std::size_t i = 0; i < lf.pro.size(); ++i) {
    std::size_t m = lf.pro.over[i];
    pro.push_back(lg.pro.at(m, t.pro_comp[m].at(lf.pro.elem[i])));
  }
  for (std::size_t i = 0; i < lf.cell.size(); ++i) {
    std::size_t c = lf.cell.over[i], n = b.cell_cod(c);
    cell.push_back(lg.cell.at(c, t.pro_comp[n].at(lf.cell.elem[i])));
  }
  const DoubleCategory& e = ef.total();
  const DoubleCategory& h = eg.total();
  DoubleFunctor map{e, h, {e.d0, h.d0, FinFn(e.objects(), h.objects(), obj), FinFn(e.arrows(), h.arrows(), arr)},
                    {e.d1, h.d1, FinFn(e.proarrows(), h.proarrows(), pro), FinFn(e.cells(), h.cells(), cell)}};
  return {std::move(ef), std::move(eg), std::move(map)};
}

Report is_ddf(const DDFCandidate& p) {
  Report r;
  r.merge(is_discrete_fibration(p.proj.f0), "P0");
  r.merge(is_discrete_fibration(p.proj.f1), "P1");
  return r;
}

Report is_ddf_via_transpose(const DDFCandidate& p) {
  Report r;
  DoubleFunctor pt = transpose_functor(p.proj);
  const DoubleCategory& et = pt.src;
  const DoubleCategory& bt = pt.tgt;
  // E†1 -> B†1 ×_{B†0} E†0, a |-> (P a, cod a), must be bijective on both levels.
  CategoryPullback pb = pullback_category(bt.tgt, pt.f0);
  auto count = [&](const FinSet& from, const FinFn& base, const FinFn& cod, const FinSet& base_names,
                   const FinSet& cod_names, const FinSet& into, const char* level) {
    std::vector<std::size_t> hits(into.size(), 0);
    for (std::size_t a = 0; a < from.size(); ++a) {
      auto k = into.find(pair_id(base_names[base.at(a)], cod_names[cod.at(a)]));
      if (!k) {
        r.add("fibration.pullback", std::string(level) + " " + from[a] + " misses the pullback");
        continue;
      }
      ++hits[*k];
    }
    for (std::size_t k = 0; k < into.size(); ++k) {
      if (hits[k] != 1) r.add("fibration.pullback", std::string(level) + " (" + into[k] + ", " + std::to_string(hits[k]) + ")");
    }
  };
  count(et.d1.objects(), pt.f1.on_objects, et.tgt.on_objects, bt.d1.objects(), et.d0.objects(), pb.cat.objects(), "arrows");
  count(et.d1.morphisms(), pt.f1.on_morphisms, et.tgt.on_morphisms, bt.d1.morphisms(), et.d0.morphisms(),
        pb.cat.morphisms(), "cells");
  return r;
}

Report check_ddf_morphism(const DDFMorphism& h) {
  Report r;
  if (!(h.src.base() == h.tgt.base())) {
    r.add("ddf_morphism.shape", "different bases");
    return r;
  }
  if (!(h.map.src == h.src.total()) || !(h.map.tgt == h.tgt.total())) {
    r.add("ddf_morphism.shape", "map does not go between the totals");
    return r;
  }
  r.merge(check_double_functor(h.map), "map");
  if (!r.ok()) return r;
  DoubleFunctor qh = compose_double_functors(h.tgt.proj, h.map);
  if (auto d = first_difference(qh.f0.on_objects, h.src.proj.f0.on_objects)) r.add("ddf_morphism.over_base", *d);
  if (auto d = first_difference(qh.f0.on_morphisms, h.src.proj.f0.on_morphisms)) r.add("ddf_morphism.over_base", *d);
  if (auto d = first_difference(qh.f1.on_objects, h.src.proj.f1.on_objects)) r.add("ddf_morphism.over_base", *d);
  if (auto d = first_difference(qh.f1.on_morphisms, h.src.proj.f1.on_morphisms)) r.add("ddf_morphism.over_base", *d);
  return r;
}

DDFMorphism identity_ddf_morphism(const DDFCandidate& p) { return {p, p, identity_double_functor(p.total())}; }

DDFMorphism compose_ddf_morphisms(const DDFMorphism& g, const DDFMorphism& h) {
  if (!(h.tgt == g.src)) throw Error(ErrorKind::CompositionMismatch, "morphisms of fibrations are not composable");
  return {h.src, g.tgt, compose_double_functors(g.map, h.map)};
}

DDFCandidate identity_ddf(const DoubleCategory& b) { return {identity_double_functor(b)}; }

}  // namespace ddf
