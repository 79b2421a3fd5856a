#include "ddf/equivalence.hpp"

#include "ddf/error.hpp"

namespace ddf {

namespace {

// Elements indexed by base element then fiber position, as el_functor lays them out.
struct Fibered {
  std::vector<std::size_t> offset;
  std::vector<std::size_t> over;
  std::vector<std::size_t> elem;

  template <class FiberOf>
  Fibered(std::size_t base_size, FiberOf fiber) {
    for (std::size_t i = 0; i < base_size; ++i) {
      offset.push_back(over.size());
      for (std::size_t x = 0; x < fiber(i).size(); ++x) {
        over.push_back(i);
        elem.push_back(x);
      }
    }
  }
  std::size_t at(std::size_t i, std::size_t x) const { return offset[i] + x; }
  std::size_t size() const { return over.size(); }
};

Fibered objects_of(const LaxSpanFunctor& f) {
  return Fibered(f.base.objects().size(), [&](std::size_t a) -> const FinSet& { return f.on_object[a]; });
}
Fibered arrows_of(const LaxSpanFunctor& f) {
  return Fibered(f.base.arrows().size(), [&](std::size_t a) -> const FinSet& { return f.on_object[f.base.d0.cod().at(a)]; });
}
Fibered proarrows_of(const LaxSpanFunctor& f) {
  return Fibered(f.base.proarrows().size(), [&](std::size_t m) -> const FinSet& { return f.vertex(m); });
}
Fibered cells_of(const LaxSpanFunctor& f) {
  return Fibered(f.base.cells().size(), [&](std::size_t c) -> const FinSet& { return f.vertex(f.base.cell_cod(c)); });
}
Fibered module_objects(const Module& mod) {
  return Fibered(mod.base().proarrows().size(), [&](std::size_t m) -> const FinSet& { return mod.vertex(m); });
}
Fibered module_morphisms(const Module& mod) {
  const DoubleCategory& b = mod.base();
  return Fibered(b.cells().size(), [&](std::size_t c) -> const FinSet& { return mod.vertex(b.cell_cod(c)); });
}

std::vector<Id> fibered_names(const Fibered& l, const FinSet& base, const std::function<const FinSet&(std::size_t)>& fiber) {
  std::vector<Id> out;
  for (std::size_t i = 0; i < l.size(); ++i) out.push_back(pair_id(base[l.over[i]], fiber(l.over[i])[l.elem[i]]));
  return out;
}

// Fibers of over in the order of its domain.
std::vector<FinSet> fibers(const FinFn& over, const FinSet& base) {
  std::vector<std::vector<Id>> out(base.size());
  for (std::size_t x = 0; x < over.dom().size(); ++x) out[over.at(x)].push_back(over.dom()[x]);
  std::vector<FinSet> sets;
  for (auto& o : out) sets.emplace_back(std::move(o));
  return sets;
}

void require(const Report& r, ErrorKind kind, const std::string& what) {
  if (!r.ok()) throw Error(kind, what + ": " + r.str());
}

Report ddf_report(const DDFCandidate& p) {
  Report r = check_double_functor(p.proj);
  if (r.ok()) r.merge(is_ddf(p));
  return r;
}

}  // namespace

InternalProfunctor el_module(const Module& mod) {
  require(check_module(mod), ErrorKind::InvalidModule, "not a module");
  const DoubleCategory& b = mod.base();
  const LaxSpanFunctor& f = mod.src;
  const LaxSpanFunctor& g = mod.tgt;
  DDFCandidate ef = el_functor(f), eg = el_functor(g);
  const DoubleCategory& e = ef.total();
  const DoubleCategory& h = eg.total();
  Fibered ob = module_objects(mod), mo = module_morphisms(mod);
  Fibered fo = objects_of(f), fa = arrows_of(f), fp = proarrows_of(f), fc = cells_of(f);
  Fibered go = objects_of(g), ga = arrows_of(g), gp = proarrows_of(g), gc = cells_of(g);

  FinSet objects(fibered_names(ob, b.proarrows(), [&](std::size_t m) -> const FinSet& { return mod.vertex(m); }));
  FinSet morphisms(fibered_names(mo, b.cells(), [&](std::size_t c) -> const FinSet& { return mod.vertex(b.cell_cod(c)); }));
  std::vector<std::size_t> dom, cod, id;
  for (std::size_t i = 0; i < mo.size(); ++i) {
    std::size_t c = mo.over[i], t = mo.elem[i];
    dom.push_back(ob.at(b.cell_dom(c), mod.on_cell[c].vertex.at(t)));
    cod.push_back(ob.at(b.cell_cod(c), t));
  }
  for (std::size_t i = 0; i < ob.size(); ++i) id.push_back(mo.at(b.d1.identity(ob.over[i]), ob.elem[i]));
  std::vector<Composite> comps;
  for (const auto& c : b.d1.composites()) {
    const FinFn& bstar = mod.on_cell[c.second].vertex;
    for (std::size_t t = 0; t < bstar.dom().size(); ++t) {
      comps.push_back({mo.at(c.first, bstar.at(t)), mo.at(c.second, t), mo.at(c.result, t)});
    }
  }
  FinCategory carrier(objects, morphisms, FinFn(morphisms, objects, dom), FinFn(morphisms, objects, cod),
                      FinFn(objects, morphisms, id), std::move(comps));

  std::vector<std::size_t> l0o, l1o, l0m, l1m;
  for (std::size_t i = 0; i < ob.size(); ++i) {
    std::size_t m = ob.over[i], s = ob.elem[i];
    l0o.push_back(fo.at(b.pro_src(m), mod.on_proarrow[m].leg0().at(s)));
    l1o.push_back(go.at(b.pro_tgt(m), mod.on_proarrow[m].leg1().at(s)));
  }
  for (std::size_t i = 0; i < mo.size(); ++i) {
    std::size_t c = mo.over[i], t = mo.elem[i];
    const Span& sp = mod.on_proarrow[b.cell_cod(c)];
    l0m.push_back(fa.at(b.cell_src(c), sp.leg0().at(t)));
    l1m.push_back(ga.at(b.cell_tgt(c), sp.leg1().at(t)));
  }
  FinFunctor over{carrier, b.d1, FinFn(objects, b.proarrows(), ob.over), FinFn(morphisms, b.cells(), mo.over)};
  FinFunctor leg0{carrier, e.d0, FinFn(objects, e.objects(), l0o), FinFn(morphisms, e.arrows(), l0m)};
  FinFunctor leg1{carrier, h.d0, FinFn(objects, h.objects(), l1o), FinFn(morphisms, h.arrows(), l1m)};

  // Actions: outer element from el, inner from the carrier, result by λ or ρ.
  CategoryPullback dl = pullback_category(e.tgt, leg0);
  std::vector<std::size_t> lo, lm;
  for (std::size_t i = 0; i < dl.cat.objects().size(); ++i) {
    std::size_t a = dl.p0.on_objects.at(i), s = dl.p1.on_objects.at(i);
    std::size_t m = fp.over[a], n = ob.over[s];
    lo.push_back(ob.at(b.ext(m, n), mod.act_left(m, n, fp.elem[a], ob.elem[s])));
  }
  for (std::size_t i = 0; i < dl.cat.morphisms().size(); ++i) {
    std::size_t a = dl.p0.on_morphisms.at(i), s = dl.p1.on_morphisms.at(i);
    std::size_t alpha = fc.over[a], beta = mo.over[s];
    lm.push_back(mo.at(b.ext_cells(alpha, beta), mod.act_left(b.cell_cod(alpha), b.cell_cod(beta), fc.elem[a], mo.elem[s])));
  }
  CategoryPullback dr = pullback_category(leg1, h.src);
  std::vector<std::size_t> ro, rm;
  for (std::size_t i = 0; i < dr.cat.objects().size(); ++i) {
    std::size_t s = dr.p0.on_objects.at(i), c = dr.p1.on_objects.at(i);
    std::size_t m = ob.over[s], n = gp.over[c];
    ro.push_back(ob.at(b.ext(m, n), mod.act_right(m, n, ob.elem[s], gp.elem[c])));
  }
  for (std::size_t i = 0; i < dr.cat.morphisms().size(); ++i) {
    std::size_t s = dr.p0.on_morphisms.at(i), c = dr.p1.on_morphisms.at(i);
    std::size_t alpha = mo.over[s], beta = gc.over[c];
    rm.push_back(mo.at(b.ext_cells(alpha, beta), mod.act_right(b.cell_cod(alpha), b.cell_cod(beta), mo.elem[s], gc.elem[c])));
  }
  FinFunctor left{dl.cat, carrier, FinFn(dl.cat.objects(), objects, lo), FinFn(dl.cat.morphisms(), morphisms, lm)};
  FinFunctor right{dr.cat, carrier, FinFn(dr.cat.objects(), objects, ro), FinFn(dr.cat.morphisms(), morphisms, rm)};
  return {std::move(ef), std::move(eg), carrier, over, leg0, leg1, left, right};
}

ProfMulticell el_multimodulation(const Multimodulation& mu) {
  require(check_multimodulation(mu), ErrorKind::InvalidMultimodulation, "not a multimodulation");
  const DoubleCategory& b = mu.base();
  const std::size_t k = mu.arity();
  std::vector<InternalProfunctor> sources;
  std::vector<Fibered> sob, smo;
  for (const auto& m : mu.sources) {
    sources.push_back(el_module(m));
    sob.push_back(module_objects(m));
    smo.push_back(module_morphisms(m));
  }
  InternalProfunctor target = el_module(mu.target);
  Fibered nob = module_objects(mu.target), nmo = module_morphisms(mu.target);
  DDFMorphism left = el_transformation(mu.left), right = el_transformation(mu.right);
  PathCategory dom = multicell_domain(sources, left.src);

  std::vector<std::size_t> objs, mors;
  if (k == 0) {
    Fibered fo = objects_of(mu.left.src), fa = arrows_of(mu.left.src);
    for (std::size_t i = 0; i < fo.size(); ++i) {
      std::size_t a = fo.over[i];
      std::size_t x = fo.elem[i];
      objs.push_back(nob.at(b.unit_pro(a), mu.apply({a}, std::vector<std::size_t>{x})));
    }
    for (std::size_t i = 0; i < fa.size(); ++i) {
      std::size_t f = fa.over[i], c = b.d0.cod().at(f);
      std::size_t y = fa.elem[i];
      mors.push_back(nmo.at(b.unit_cell(f), mu.apply({c}, std::vector<std::size_t>{y})));
    }
  } else {
    for (std::size_t d = 0; d < dom.cat.objects().size(); ++d) {
      std::vector<std::size_t> path, parts;
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t s = dom.proj[i].on_objects.at(d);
        path.push_back(sob[i].over[s]);
        parts.push_back(sob[i].elem[s]);
      }
      objs.push_back(nob.at(b.path_composite(path), mu.apply(path, parts)));
    }
    for (std::size_t d = 0; d < dom.cat.morphisms().size(); ++d) {
      std::vector<std::size_t> cells, path, parts;
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t t = dom.proj[i].on_morphisms.at(d);
        cells.push_back(smo[i].over[t]);
        path.push_back(b.cell_cod(smo[i].over[t]));
        parts.push_back(smo[i].elem[t]);
      }
      mors.push_back(nmo.at(b.cell_path_composite(cells), mu.apply(path, parts)));
    }
  }
  const FinCategory& c = target.carrier;
  FinFunctor map{dom.cat, c, FinFn(dom.cat.objects(), c.objects(), objs), FinFn(dom.cat.morphisms(), c.morphisms(), mors)};
  return {std::move(sources), std::move(target), std::move(left), std::move(right), std::move(map)};
}

Module f_of_profunctor(const InternalProfunctor& m) {
  require(check_internal_profunctor(m), ErrorKind::InvalidProfunctor, "not an internal profunctor");
  const DoubleCategory& b = m.base();
  const DoubleCategory& e = m.src.total();
  const DoubleCategory& g = m.tgt.total();
  const FinSet& ms = m.carrier.objects();
  Module mod{f_of_ddf(m.src), f_of_ddf(m.tgt), {}, {}, {}, {}};
  std::vector<FinSet> over = fibers(m.over.on_objects, b.proarrows());
  for (std::size_t x = 0; x < b.proarrows().size(); ++x) {
    const FinSet& v = over[x];
    FinFn l0 = FinFn::tabulate(v, mod.src.on_object[b.pro_src(x)], [&](const Id& s) { return e.objects()[m.leg0.on_objects.at(ms.index_of(s))]; });
    FinFn l1 = FinFn::tabulate(v, mod.tgt.on_object[b.pro_tgt(x)], [&](const Id& s) { return g.objects()[m.leg1.on_objects.at(ms.index_of(s))]; });
    mod.on_proarrow.emplace_back(l0, l1);
  }
  auto act = [&](const FinFunctor& a, const Id& x, const Id& y) { return ms[a.on_objects.at(a.src.objects().index_of(pair_id(x, y)))]; };
  fill_module(
      mod, [&](std::size_t c, const Id& t) { return ms[m.carrier.dom().at(unique_lift(m.over, ms.index_of(t), c))]; },
      [&](std::size_t, std::size_t, const Id& a, const Id& s) { return act(m.left_act, a, s); },
      [&](std::size_t, std::size_t, const Id& s, const Id& c) { return act(m.right_act, s, c); });
  return mod;
}

Multimodulation f_of_multicell(const ProfMulticell& g) {
  require(check_prof_multicell(g), ErrorKind::InvalidMulticell, "not a multicell");
  std::vector<Module> sources;
  for (const auto& m : g.sources) sources.push_back(f_of_profunctor(m));
  const FinFn& map = g.map.on_objects;
  return make_multimodulation(std::move(sources), f_of_profunctor(g.target), f_of_morphism(g.left), f_of_morphism(g.right),
                              [&](const std::vector<std::size_t>&, const std::vector<Id>& parts) { return map(path_id(parts)); });
}

LaxTransformation eta(const LaxSpanFunctor& h) {
  require(check_lax_functor(h), ErrorKind::InvalidInput, "not a lax functor");
  const DoubleCategory& b = h.base;
  LaxSpanFunctor fe = f_of_ddf(el_functor(h));
  LaxTransformation t{h, fe, {}, {}};
  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    t.obj_comp.push_back(FinFn::tabulate(h.on_object[a], fe.on_object[a], [&](const Id& x) { return pair_id(b.objects()[a], x); }));
  }
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    t.pro_comp.push_back(FinFn::tabulate(h.vertex(m), fe.vertex(m), [&](const Id& s) { return pair_id(b.proarrows()[m], s); }));
  }
  return t;
}

Multimodulation eta_module(const Module& mod) {
  require(check_module(mod), ErrorKind::InvalidInput, "not a module");
  const DoubleCategory& b = mod.base();
  return make_multimodulation({mod}, f_of_profunctor(el_module(mod)), eta(mod.src), eta(mod.tgt),
                              [&](const std::vector<std::size_t>& path, const std::vector<Id>& parts) {
                                return pair_id(b.proarrows()[path[0]], parts[0]);
                              });
}

DoubleFunctor epsilon(const DDFCandidate& p) {
  require(ddf_report(p), ErrorKind::InvalidInput, "not a discrete double fibration");
  const DoubleCategory& e = p.total();
  const DoubleCategory& b = p.base();
  LaxSpanFunctor f = f_of_ddf(p);
  DDFCandidate ef = el_functor(f);
  const DoubleCategory& el = ef.total();
  std::vector<std::size_t> obj, arr, pro, cell;
  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    for (const auto& x : f.on_object[a]) obj.push_back(e.objects().index_of(x));
  }
  for (std::size_t g = 0; g < b.arrows().size(); ++g) {
    for (const auto& y : f.on_object[b.d0.cod().at(g)]) arr.push_back(unique_lift(p.proj.f0, e.objects().index_of(y), g));
  }
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    for (const auto& s : f.vertex(m)) pro.push_back(e.proarrows().index_of(s));
  }
  for (std::size_t c = 0; c < b.cells().size(); ++c) {
    for (const auto& t : f.vertex(b.cell_cod(c))) cell.push_back(unique_lift(p.proj.f1, e.proarrows().index_of(t), c));
  }
  return {el, e, {el.d0, e.d0, FinFn(el.objects(), e.objects(), obj), FinFn(el.arrows(), e.arrows(), arr)},
          {el.d1, e.d1, FinFn(el.proarrows(), e.proarrows(), pro), FinFn(el.cells(), e.cells(), cell)}};
}

DDFMorphism epsilon_morphism(const DDFCandidate& p) {
  DoubleFunctor map = epsilon(p);
  return {el_functor(f_of_ddf(p)), p, std::move(map)};
}

ProfMulticell epsilon_module(const InternalProfunctor& m) {
  require(check_internal_profunctor(m), ErrorKind::InvalidInput, "not an internal profunctor");
  const DoubleCategory& b = m.base();
  const FinSet& ms = m.carrier.objects();
  Module fm = f_of_profunctor(m);
  InternalProfunctor em = el_module(fm);
  std::vector<std::size_t> obj, mor;
  for (std::size_t x = 0; x < b.proarrows().size(); ++x) {
    for (const auto& s : fm.vertex(x)) obj.push_back(ms.index_of(s));
  }
  for (std::size_t c = 0; c < b.cells().size(); ++c) {
    for (const auto& t : fm.vertex(b.cell_cod(c))) mor.push_back(unique_lift(m.over, ms.index_of(t), c));
  }
  const FinCategory& from = em.carrier;
  FinFunctor map{from, m.carrier, FinFn(from.objects(), ms, obj), FinFn(from.morphisms(), m.carrier.morphisms(), mor)};
  return {{em}, m, epsilon_morphism(m.src), epsilon_morphism(m.tgt), std::move(map)};
}

LaxTransformation inverse_transformation(const LaxTransformation& t) {
  LaxTransformation out{t.tgt, t.src, {}, {}};
  for (const auto& c : t.obj_comp) out.obj_comp.push_back(c.inverse());
  for (const auto& c : t.pro_comp) out.pro_comp.push_back(c.inverse());
  return out;
}

DDFMorphism inverse_ddf_morphism(const DDFMorphism& h) {
  if (!is_isomorphism(h.map)) throw Error(ErrorKind::InvalidInput, "morphism of fibrations is not invertible");
  const DoubleFunctor& f = h.map;
  return {h.tgt, h.src, DoubleFunctor{f.tgt, f.src, inverse_functor(f.f0), inverse_functor(f.f1)}};
}

Multimodulation inverse_multimodulation(const Multimodulation& mu) {
  if (mu.arity() != 1) throw Error(ErrorKind::InvalidInput, "only 1-ary cells are inverted");
  Multimodulation out{{mu.target}, mu.sources[0], inverse_transformation(mu.left), inverse_transformation(mu.right), {}};
  for (const auto& [key, fn] : mu.components) out.components.emplace(key, fn.inverse());
  return out;
}

ProfMulticell inverse_prof_multicell(const ProfMulticell& g) {
  if (g.arity() != 1) throw Error(ErrorKind::InvalidInput, "only 1-ary cells are inverted");
  if (!is_isomorphism(g.map)) throw Error(ErrorKind::InvalidInput, "mediating functor is not invertible");
  return {{g.target}, g.sources[0], inverse_ddf_morphism(g.left), inverse_ddf_morphism(g.right), inverse_functor(g.map)};
}

Report verify_equivalence(const DoubleCategory& b, const EquivalenceCorpus& corpus) {
  Report r;
  // One obligation per instance; a construction that throws is a violation too.
  auto step = [&](const std::string& context, const std::function<void(Report&)>& body) {
    Report local;
    try {
      body(local);
    } catch (const Error& e) {
      local.add("equivalence.error", std::string(to_string(e.kind())) + ": " + e.what());
    }
    r.merge(local, context);
  };
  auto expect = [](Report& rr, bool ok, const char* axiom, const std::string& what) {
    if (!ok) rr.add(axiom, what);
  };
  auto label = [](const char* kind, std::size_t i) { return std::string(kind) + " " + std::to_string(i); };

  for (std::size_t i = 0; i < corpus.functors.size(); ++i) {
    const LaxSpanFunctor& f = corpus.functors[i];
    if (!(f.base == b)) continue;
    step(label("functor", i), [&](Report& rr) {
      DDFCandidate e = el_functor(f);
      Report direct = ddf_report(e), via = is_ddf_via_transpose(e);
      rr.merge(direct, "el");
      expect(rr, direct.ok() == via.ok(), "equivalence.ddf_characterizations", "is_ddf and the transpose test disagree");
      std::size_t objects = 0, proarrows = 0;
      for (const auto& s : f.on_object) objects += s.size();
      for (std::size_t m = 0; m < b.proarrows().size(); ++m) proarrows += f.vertex(m).size();
      expect(rr, e.total().objects().size() == objects && e.total().proarrows().size() == proarrows, "equivalence.counts",
             "elements do not match the fibers");
      LaxSpanFunctor fe = f_of_ddf(e);
      rr.merge(check_lax_functor(fe), "f_of_ddf");
      LaxTransformation et = eta(f);
      rr.merge(check_transformation(et), "eta");
      LaxTransformation inv = inverse_transformation(et);
      expect(rr, compose_transformations(inv, et) == identity_transformation(f) &&
                     compose_transformations(et, inv) == identity_transformation(fe),
             "equivalence.eta_invertible", "eta");
      DDFMorphism el_eta = el_transformation(et);
      expect(rr, compose_double_functors(epsilon(e), el_eta.map) == identity_double_functor(e.total()), "equivalence.triangle",
             "epsilon after el(eta)");
      expect(rr, el_transformation(identity_transformation(f)) == identity_ddf_morphism(e), "equivalence.functoriality",
             "el of the identity");
      expect(rr, el_module(unit_module(f)) == unit_profunctor(e), "equivalence.unit_preservation", "el of the unit module");
    });
  }

  for (std::size_t i = 0; i < corpus.transformations.size(); ++i) {
    const LaxTransformation& t = corpus.transformations[i];
    if (!(t.src.base == b)) continue;
    step(label("transformation", i), [&](Report& rr) {
      DDFMorphism et = el_transformation(t);
      rr.merge(check_ddf_morphism(et), "el");
      expect(rr, compose_transformations(f_of_morphism(et), eta(t.src)) == compose_transformations(eta(t.tgt), t),
             "equivalence.eta_naturality", "f(el τ) ∘ η = η ∘ τ");
      for (std::size_t j = 0; j < corpus.transformations.size(); ++j) {
        const LaxTransformation& s = corpus.transformations[j];
        if (!(s.src == t.tgt)) continue;
        expect(rr, el_transformation(compose_transformations(s, t)) == compose_ddf_morphisms(el_transformation(s), et),
               "equivalence.functoriality", "el of the composite with transformation " + std::to_string(j));
      }
    });
  }

  for (std::size_t i = 0; i < corpus.ddfs.size(); ++i) {
    const DDFCandidate& p = corpus.ddfs[i];
    if (!(p.base() == b)) continue;
    step(label("ddf", i), [&](Report& rr) {
      rr.merge(ddf_report(p), "input");
      DDFMorphism eps = epsilon_morphism(p);
      rr.merge(check_ddf_morphism(eps), "epsilon");
      expect(rr, is_isomorphism(eps.map), "equivalence.epsilon_invertible", "epsilon");
      LaxSpanFunctor f = f_of_ddf(p);
      rr.merge(check_lax_functor(f), "f_of_ddf");
      expect(rr, compose_transformations(f_of_morphism(eps), eta(f)) == identity_transformation(f), "equivalence.triangle",
             "f(epsilon) after eta");
      expect(rr, f_of_morphism(identity_ddf_morphism(p)) == identity_transformation(f), "equivalence.functoriality",
             "f of the identity");
      expect(rr, f_of_profunctor(unit_profunctor(p)) == unit_module(f), "equivalence.unit_preservation",
             "f of the unit profunctor");
    });
  }

  for (std::size_t i = 0; i < corpus.ddf_morphisms.size(); ++i) {
    const DDFMorphism& h = corpus.ddf_morphisms[i];
    if (!(h.src.base() == b)) continue;
    step(label("ddf morphism", i), [&](Report& rr) {
      LaxTransformation fh = f_of_morphism(h);
      rr.merge(check_transformation(fh), "f_of_morphism");
      expect(rr, compose_double_functors(h.map, epsilon(h.src)) == compose_double_functors(epsilon(h.tgt), el_transformation(fh).map),
             "equivalence.epsilon_naturality", "h ∘ ε = ε ∘ el(f h)");
      for (std::size_t j = 0; j < corpus.ddf_morphisms.size(); ++j) {
        const DDFMorphism& k = corpus.ddf_morphisms[j];
        if (!(k.src == h.tgt)) continue;
        expect(rr, f_of_morphism(compose_ddf_morphisms(k, h)) == compose_transformations(f_of_morphism(k), fh),
               "equivalence.functoriality", "f of the composite with morphism " + std::to_string(j));
      }
    });
  }

  for (std::size_t i = 0; i < corpus.modules.size(); ++i) {
    const Module& mod = corpus.modules[i];
    if (!(mod.base() == b)) continue;
    step(label("module", i), [&](Report& rr) {
      InternalProfunctor em = el_module(mod);
      rr.merge(check_internal_profunctor(em), "el_module");
      std::size_t count = 0;
      for (std::size_t m = 0; m < b.proarrows().size(); ++m) count += mod.vertex(m).size();
      expect(rr, em.carrier.objects().size() == count, "equivalence.counts", "carrier does not match the fibers");
      Module fm = f_of_profunctor(em);
      rr.merge(check_module(fm), "f_of_profunctor");
      Multimodulation et = eta_module(mod);
      rr.merge(check_multimodulation(et), "eta_module");
      Multimodulation inv = inverse_multimodulation(et);
      expect(rr, compose_multimodulations(inv, {et}) == identity_multimodulation(mod) &&
                     compose_multimodulations(et, {inv}) == identity_multimodulation(fm),
             "equivalence.eta_invertible", "eta_module");
      expect(rr, el_multimodulation(identity_multimodulation(mod)) == identity_prof_multicell(em), "equivalence.functoriality",
             "el of the identity cell");
    });
  }

  for (std::size_t i = 0; i < corpus.multimodulations.size(); ++i) {
    const Multimodulation& mu = corpus.multimodulations[i];
    if (!(mu.base() == b)) continue;
    step(label("multimodulation", i), [&](Report& rr) {
      ProfMulticell g = el_multimodulation(mu);
      rr.merge(check_prof_multicell(g), "el_multimodulation");
      Multimodulation fg = f_of_multicell(g);
      rr.merge(check_multimodulation(fg), "f_of_multicell");
      Multimodulation en = eta_module(mu.target);
      if (mu.arity() > 0) {
        std::vector<Multimodulation> etas;
        for (const auto& m : mu.sources) etas.push_back(eta_module(m));
        expect(rr, compose_multimodulations(fg, etas) == compose_multimodulations(en, {mu}), "equivalence.eta_cell_naturality",
               "f(el μ) ∘ (η, ..., η) = η ∘ μ");
      } else {
        LaxTransformation ef = eta(mu.left.src);
        for (std::size_t a = 0; a < b.objects().size(); ++a) {
          for (std::size_t x = 0; x < ef.obj_comp[a].dom().size(); ++x) {
            std::size_t lhs = fg.apply({a}, std::vector<std::size_t>{ef.obj_comp[a].at(x)});
            std::size_t rhs = en.components.at({b.unit_pro(a)}).at(mu.apply({a}, std::vector<std::size_t>{x}));
            expect(rr, lhs == rhs, "equivalence.eta_cell_naturality", join_names({b.objects()[a], ef.obj_comp[a].dom()[x]}));
          }
        }
      }
      // Substituting corpus cells with identity legs, one position at a time.
      for (std::size_t j = 0; j < mu.arity(); ++j) {
        for (std::size_t n = 0; n < corpus.multimodulations.size(); ++n) {
          const Multimodulation& nu = corpus.multimodulations[n];
          const Module& sj = mu.sources[j];
          if (!(nu.target == sj) || !(nu.left == identity_transformation(sj.src)) || !(nu.right == identity_transformation(sj.tgt))) {
            continue;
          }
          std::vector<Multimodulation> nus;
          std::vector<ProfMulticell> els;
          for (const auto& m : mu.sources) nus.push_back(identity_multimodulation(m));
          nus[j] = nu;
          for (const auto& x : nus) els.push_back(el_multimodulation(x));
          expect(rr, el_multimodulation(compose_multimodulations(mu, nus)) == compose_prof_multicells(g, els),
                 "equivalence.functoriality", "el of the composite with multimodulation " + std::to_string(n));
        }
      }
    });
  }

  for (std::size_t i = 0; i < corpus.profunctors.size(); ++i) {
    const InternalProfunctor& m = corpus.profunctors[i];
    if (!(m.base() == b)) continue;
    step(label("profunctor", i), [&](Report& rr) {
      Module fm = f_of_profunctor(m);
      rr.merge(check_module(fm), "f_of_profunctor");
      std::size_t count = 0;
      for (std::size_t x = 0; x < b.proarrows().size(); ++x) count += fm.vertex(x).size();
      expect(rr, m.carrier.objects().size() == count, "equivalence.counts", "fibers do not cover the carrier");
      InternalProfunctor em = el_module(fm);
      rr.merge(check_internal_profunctor(em), "el_module");
      ProfMulticell eps = epsilon_module(m);
      rr.merge(check_prof_multicell(eps), "epsilon_module");
      ProfMulticell inv = inverse_prof_multicell(eps);
      expect(rr, compose_prof_multicells(inv, {eps}) == identity_prof_multicell(em) &&
                     compose_prof_multicells(eps, {inv}) == identity_prof_multicell(m),
             "equivalence.epsilon_invertible", "epsilon_module");
      expect(rr, f_of_multicell(identity_prof_multicell(m)) == identity_multimodulation(fm), "equivalence.functoriality",
             "f of the identity cell");
    });
  }

  for (std::size_t i = 0; i < corpus.multicells.size(); ++i) {
    const ProfMulticell& u = corpus.multicells[i];
    if (!(u.base() == b)) continue;
    step(label("multicell", i), [&](Report& rr) {
      Multimodulation fu = f_of_multicell(u);
      rr.merge(check_multimodulation(fu), "f_of_multicell");
      ProfMulticell eu = el_multimodulation(fu);
      rr.merge(check_prof_multicell(eu), "el_multimodulation");
      ProfMulticell en = epsilon_module(u.target);
      if (u.arity() > 0) {
        std::vector<ProfMulticell> eps;
        for (const auto& m : u.sources) eps.push_back(epsilon_module(m));
        expect(rr, compose_prof_multicells(u, eps) == compose_prof_multicells(en, {eu}), "equivalence.epsilon_cell_naturality",
               "U ∘ (ε, ..., ε) = ε ∘ el(f U)");
      } else {
        DoubleFunctor ep = epsilon(u.left.src);
        expect(rr, compose_functors(u.map, ep.f0) == compose_functors(en.map, eu.map), "equivalence.epsilon_cell_naturality",
               "U ∘ ε = ε ∘ el(f U)");
      }
      for (std::size_t j = 0; j < u.arity(); ++j) {
        for (std::size_t n = 0; n < corpus.multicells.size(); ++n) {
          const ProfMulticell& d = corpus.multicells[n];
          const InternalProfunctor& sj = u.sources[j];
          if (!(d.target == sj) || !(d.left == identity_ddf_morphism(sj.src)) || !(d.right == identity_ddf_morphism(sj.tgt))) continue;
          std::vector<ProfMulticell> ds;
          std::vector<Multimodulation> fs;
          for (const auto& m : u.sources) ds.push_back(identity_prof_multicell(m));
          ds[j] = d;
          for (const auto& x : ds) fs.push_back(f_of_multicell(x));
          expect(rr, f_of_multicell(compose_prof_multicells(u, ds)) == compose_multimodulations(fu, fs),
                 "equivalence.functoriality", "f of the composite with multicell " + std::to_string(n));
        }
      }
    });
  }
  return r;
}

}  // namespace ddf
