#include "ddf/lax_span.hpp"

#include "ddf/error.hpp"

namespace ddf {

std::size_t LaxSpanFunctor::compose(std::size_t m, std::size_t n, std::size_t s, std::size_t t) const {
  auto i = base.pair_index(m, n);
  if (!i) throw Error(ErrorKind::CompositionMismatch, base.proarrows()[m] + " and " + base.proarrows()[n] + " do not compose");
  const FinFn& phi = comp_lax[*i];
  auto j = phi.dom().find(pair_id(vertex(m)[s], vertex(n)[t]));
  if (!j) throw Error(ErrorKind::CompositionMismatch, "elements " + vertex(m)[s] + " and " + vertex(n)[t] + " do not compose");
  return phi.at(*j);
}

namespace {

Report check_shape(const LaxSpanFunctor& f) {
  Report r;
  const DoubleCategory& b = f.base;
  if (f.on_object.size() != b.objects().size() || f.on_arrow.size() != b.arrows().size() ||
      f.on_proarrow.size() != b.proarrows().size() || f.on_cell.size() != b.cells().size() ||
      f.unit_lax.size() != b.objects().size() || f.comp_lax.size() != b.composable().objects().size()) {
    r.add("lax.shape", "assignment counts do not match the base");
    return r;
  }
  for (std::size_t a = 0; a < b.arrows().size(); ++a) {
    const FinFn& fa = f.on_arrow[a];
    if (!(fa.dom() == f.on_object[b.d0.cod().at(a)]) || !(fa.cod() == f.on_object[b.d0.dom().at(a)])) {
      r.add("lax.shape", "transition of " + b.arrows()[a]);
    }
  }
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    const Span& s = f.on_proarrow[m];
    if (!(s.left() == f.on_object[b.pro_src(m)]) || !(s.right() == f.on_object[b.pro_tgt(m)])) {
      r.add("lax.shape", "span of " + b.proarrows()[m]);
    }
  }
  if (!r.ok()) return r;
  for (std::size_t c = 0; c < b.cells().size(); ++c) {
    const SpanMorphism& sm = f.on_cell[c];
    if (!(sm.src == f.on_proarrow[b.cell_cod(c)]) || !(sm.tgt == f.on_proarrow[b.cell_dom(c)]) ||
        !(sm.left == f.on_arrow[b.cell_src(c)]) || !(sm.right == f.on_arrow[b.cell_tgt(c)])) {
      r.add("lax.shape", "span morphism of " + b.cells()[c]);
    }
  }
  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    const FinFn& phi = f.unit_lax[a];
    if (!(phi.dom() == f.on_object[a]) || !(phi.cod() == f.vertex(b.unit_pro(a)))) {
      r.add("lax.shape", "unit laxity at " + b.objects()[a]);
    }
  }
  CategoryPullback comp = pullback_category(b.tgt, b.src);
  for (std::size_t i = 0; i < f.comp_lax.size(); ++i) {
    std::size_t m = comp.p0.on_objects.at(i), n = comp.p1.on_objects.at(i);
    const FinFn& phi = f.comp_lax[i];
    Pullback pb = pullback(f.on_proarrow[m].leg1(), f.on_proarrow[n].leg0());
    if (!(phi.dom() == pb.vertex) || !(phi.cod() == f.vertex(b.ext_comp.on_objects.at(i)))) {
      r.add("lax.shape", "composition laxity at " + b.composable().objects()[i]);
    }
  }
  return r;
}

}  // namespace

Report check_lax_functor(const LaxSpanFunctor& f, const CheckOptions& opts) {
  Report r = check_shape(f);
  if (!r.ok()) return r;
  const DoubleCategory& b = f.base;

  // Internal functoriality, contravariant on both levels.
  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    if (!(f.on_arrow[b.d0.identity(a)] == FinFn::identity(f.on_object[a]))) {
      r.add("lax.internal_functoriality", "identity at " + b.objects()[a]);
    }
  }
  for (const auto& c : b.d0.composites()) {
    if (!(f.on_arrow[c.result] == compose_fn(f.on_arrow[c.first], f.on_arrow[c.second]))) {
      r.add("lax.internal_functoriality", join_names({b.arrows()[c.first], b.arrows()[c.second]}));
    }
  }
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    if (!(f.on_cell[b.d1.identity(m)].vertex == FinFn::identity(f.vertex(m)))) {
      r.add("lax.internal_functoriality", "identity cell at " + b.proarrows()[m]);
    }
  }
  for (const auto& c : b.d1.composites()) {
    if (!(f.on_cell[c.result].vertex == compose_fn(f.on_cell[c.first].vertex, f.on_cell[c.second].vertex))) {
      r.add("lax.internal_functoriality", join_names({b.cells()[c.first], b.cells()[c.second]}));
    }
  }
  for (std::size_t c = 0; c < b.cells().size(); ++c) r.merge(check_span_morphism(f.on_cell[c]), b.cells()[c]);

  // Laxity maps are maps of spans.
  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    const Span& u = f.on_proarrow[b.unit_pro(a)];
    for (std::size_t x = 0; x < f.on_object[a].size(); ++x) {
      std::size_t v = f.unit_lax[a].at(x);
      if (u.leg0().at(v) != x || u.leg1().at(v) != x) {
        r.add("lax.laxity_boundary", join_names({b.objects()[a], f.on_object[a][x]}));
      }
    }
  }
  CategoryPullback comp = pullback_category(b.tgt, b.src);
  for (std::size_t i = 0; i < f.comp_lax.size(); ++i) {
    std::size_t m = comp.p0.on_objects.at(i), n = comp.p1.on_objects.at(i);
    const Span& fm = f.on_proarrow[m];
    const Span& fn = f.on_proarrow[n];
    const Span& fnm = f.on_proarrow[b.ext_comp.on_objects.at(i)];
    Pullback pb = pullback(fm.leg1(), fn.leg0());
    for (std::size_t e = 0; e < pb.vertex.size(); ++e) {
      std::size_t v = f.comp_lax[i].at(e);
      if (fnm.leg0().at(v) != fm.leg0().at(pb.p0.at(e)) || fnm.leg1().at(v) != fn.leg1().at(pb.p1.at(e))) {
        r.add("lax.laxity_boundary", join_names({b.composable().objects()[i], pb.vertex[e]}));
      }
    }
  }
  if (!r.ok()) return r;

  // Naturality of the unit laxity: φ_A ∘ f* = (u_f)* ∘ φ_B.
  for (std::size_t a = 0; a < b.arrows().size(); ++a) {
    std::size_t dom = b.d0.dom().at(a), cod = b.d0.cod().at(a);
    const FinFn& uf = f.on_cell[b.unit_cell(a)].vertex;
    for (std::size_t y = 0; y < f.on_object[cod].size(); ++y) {
      if (f.unit_lax[dom].at(f.on_arrow[a].at(y)) != uf.at(f.unit_lax[cod].at(y))) {
        r.add("lax.naturality", join_names({"unit", b.arrows()[a], f.on_object[cod][y]}));
      }
    }
  }
  // Naturality of the composition laxity: (β⊗α)* ∘ φ_{p,q} = φ_{m,n} ∘ (α* × β*).
  const FinCategory& cp = b.composable();
  for (std::size_t j = 0; j < cp.morphisms().size(); ++j) {
    std::size_t alpha = comp.p0.on_morphisms.at(j), beta = comp.p1.on_morphisms.at(j);
    std::size_t p = b.cell_cod(alpha), q = b.cell_cod(beta);
    std::size_t m = b.cell_dom(alpha), n = b.cell_dom(beta);
    const FinFn& ba = f.on_cell[b.ext_comp.on_morphisms.at(j)].vertex;
    const FinFn& as = f.on_cell[alpha].vertex;
    const FinFn& bs = f.on_cell[beta].vertex;
    Pullback pb = pullback(f.on_proarrow[p].leg1(), f.on_proarrow[q].leg0());
    for (std::size_t e = 0; e < pb.vertex.size(); ++e) {
      std::size_t s = pb.p0.at(e), t = pb.p1.at(e);
      std::size_t lhs = ba.at(f.compose(p, q, s, t));
      std::size_t rhs = f.compose(m, n, as.at(s), bs.at(t));
      if (lhs != rhs) r.add("lax.naturality", join_names({cp.morphisms()[j], pb.vertex[e]}));
    }
  }

  // Unit laws: φ(φ_A(s_0), s) = s = φ(s, φ_B(s_1)).
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    std::size_t a = b.pro_src(m), c = b.pro_tgt(m);
    const Span& fm = f.on_proarrow[m];
    for (std::size_t s = 0; s < fm.vertex().size(); ++s) {
      if (f.compose(b.unit_pro(a), m, f.unit_lax[a].at(fm.leg0().at(s)), s) != s) {
        r.add("lax.unit", join_names({"left", b.proarrows()[m], fm.vertex()[s]}));
      }
      if (f.compose(m, b.unit_pro(c), s, f.unit_lax[c].at(fm.leg1().at(s))) != s) {
        r.add("lax.unit", join_names({"right", b.proarrows()[m], fm.vertex()[s]}));
      }
    }
  }

  // Associativity over composable triples of elements.
  if (!opts.allows(3)) {
    r.note("lax.associativity skipped: needs paths of length 3");
    return r;
  }
  for (const auto& path : b.proarrow_paths(3)) {
    std::size_t m = path[0], n = path[1], p = path[2];
    const Span& fm = f.on_proarrow[m];
    const Span& fn = f.on_proarrow[n];
    const Span& fp = f.on_proarrow[p];
    std::size_t nm = b.ext(m, n), pn = b.ext(n, p);
    for (std::size_t s = 0; s < fm.vertex().size(); ++s) {
      for (std::size_t t = 0; t < fn.vertex().size(); ++t) {
        if (fm.leg1().at(s) != fn.leg0().at(t)) continue;
        for (std::size_t u = 0; u < fp.vertex().size(); ++u) {
          if (fn.leg1().at(t) != fp.leg0().at(u)) continue;
          std::size_t lhs = f.compose(nm, p, f.compose(m, n, s, t), u);
          std::size_t rhs = f.compose(m, pn, s, f.compose(n, p, t, u));
          if (lhs != rhs) {
            r.add("lax.associativity", join_names({b.proarrows()[m], b.proarrows()[n], b.proarrows()[p], fm.vertex()[s],
                                              fn.vertex()[t], fp.vertex()[u]}));
          }
        }
      }
    }
  }
  return r;
}

Report check_transformation(const LaxTransformation& t) {
  Report r;
  const LaxSpanFunctor& f = t.src;
  const LaxSpanFunctor& g = t.tgt;
  if (!(f.base == g.base)) throw Error(ErrorKind::BaseMismatch, "transformation between functors on different bases");
  const DoubleCategory& b = f.base;
  if (t.obj_comp.size() != b.objects().size() || t.pro_comp.size() != b.proarrows().size()) {
    r.add("transformation.shape", "component counts do not match the base");
    return r;
  }
  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    if (!(t.obj_comp[a].dom() == f.on_object[a]) || !(t.obj_comp[a].cod() == g.on_object[a])) {
      r.add("transformation.shape", "component at " + b.objects()[a]);
    }
  }
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    if (!(t.pro_comp[m].dom() == f.vertex(m)) || !(t.pro_comp[m].cod() == g.vertex(m))) {
      r.add("transformation.shape", "component at " + b.proarrows()[m]);
    }
  }
  if (!r.ok()) return r;
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    SpanMorphism sm{f.on_proarrow[m], g.on_proarrow[m], t.obj_comp[b.pro_src(m)], t.pro_comp[m],
                    t.obj_comp[b.pro_tgt(m)]};
    r.merge(check_span_morphism(sm), b.proarrows()[m]);
  }
  if (!r.ok()) return r;
  for (std::size_t a = 0; a < b.arrows().size(); ++a) {
    std::size_t dom = b.d0.dom().at(a), cod = b.d0.cod().at(a);
    if (!(compose_fn(t.obj_comp[dom], f.on_arrow[a]) == compose_fn(g.on_arrow[a], t.obj_comp[cod]))) {
      r.add("transformation.naturality", b.arrows()[a]);
    }
  }
  for (std::size_t c = 0; c < b.cells().size(); ++c) {
    std::size_t m = b.cell_dom(c), n = b.cell_cod(c);
    if (!(compose_fn(t.pro_comp[m], f.on_cell[c].vertex) == compose_fn(g.on_cell[c].vertex, t.pro_comp[n]))) {
      r.add("transformation.naturality", b.cells()[c]);
    }
  }
  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    std::size_t u = b.unit_pro(a);
    if (!(compose_fn(t.pro_comp[u], f.unit_lax[a]) == compose_fn(g.unit_lax[a], t.obj_comp[a]))) {
      r.add("transformation.unit", b.objects()[a]);
    }
  }
  for (const auto& path : b.proarrow_paths(2)) {
    std::size_t m = path[0], n = path[1], nm = b.ext(m, n);
    Pullback pb = pullback(f.on_proarrow[m].leg1(), f.on_proarrow[n].leg0());
    for (std::size_t e = 0; e < pb.vertex.size(); ++e) {
      std::size_t s = pb.p0.at(e), u = pb.p1.at(e);
      std::size_t lhs = t.pro_comp[nm].at(f.compose(m, n, s, u));
      std::size_t rhs = g.compose(m, n, t.pro_comp[m].at(s), t.pro_comp[n].at(u));
      if (lhs != rhs) r.add("transformation.composition", join_names({b.proarrows()[m], b.proarrows()[n], pb.vertex[e]}));
    }
  }
  return r;
}

LaxTransformation identity_transformation(const LaxSpanFunctor& f) {
  LaxTransformation t{f, f, {}, {}};
  for (const auto& s : f.on_object) t.obj_comp.push_back(FinFn::identity(s));
  for (const auto& s : f.on_proarrow) t.pro_comp.push_back(FinFn::identity(s.vertex()));
  return t;
}

LaxTransformation compose_transformations(const LaxTransformation& sigma, const LaxTransformation& tau) {
  if (!(sigma.src.base == tau.src.base)) throw Error(ErrorKind::BaseMismatch, "transformations over different bases");
  if (!(tau.tgt == sigma.src)) throw Error(ErrorKind::CompositionMismatch, "transformations are not composable");
  LaxTransformation t{tau.src, sigma.tgt, {}, {}};
  for (std::size_t a = 0; a < tau.obj_comp.size(); ++a) t.obj_comp.push_back(compose_fn(sigma.obj_comp[a], tau.obj_comp[a]));
  for (std::size_t m = 0; m < tau.pro_comp.size(); ++m) t.pro_comp.push_back(compose_fn(sigma.pro_comp[m], tau.pro_comp[m]));
  return t;
}

namespace {

const Id& name_then(const FinCategory& c, const Id& first, const Id& second) {
  auto r = c.then(c.morphisms().index_of(first), c.morphisms().index_of(second));
  if (!r) throw Error(ErrorKind::Shape, "no composite for (" + first + "," + second + ")");
  return c.morphisms()[*r];
}

}  // namespace

void fill_structure(LaxSpanFunctor& f, const CellRule& cell_rule, const UnitRule& unit_rule, const CompRule& comp_rule) {
  const DoubleCategory& b = f.base;
  for (std::size_t c = 0; c < b.cells().size(); ++c) {
    const Span& src = f.on_proarrow[b.cell_cod(c)];
    const Span& tgt = f.on_proarrow[b.cell_dom(c)];
    FinFn v = FinFn::tabulate(src.vertex(), tgt.vertex(), [&](const Id& t) { return cell_rule(c, t); });
    f.on_cell.push_back({src, tgt, f.on_arrow[b.cell_src(c)], v, f.on_arrow[b.cell_tgt(c)]});
  }
  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    f.unit_lax.push_back(FinFn::tabulate(f.on_object[a], f.vertex(b.unit_pro(a)), [&](const Id& x) { return unit_rule(a, x); }));
  }
  CategoryPullback comp = pullback_category(b.tgt, b.src);
  for (std::size_t i = 0; i < comp.cat.objects().size(); ++i) {
    std::size_t m = comp.p0.on_objects.at(i), n = comp.p1.on_objects.at(i);
    Pullback pb = pullback(f.on_proarrow[m].leg1(), f.on_proarrow[n].leg0());
    std::vector<std::size_t> image;
    for (std::size_t e = 0; e < pb.vertex.size(); ++e) {
      image.push_back(f.vertex(b.ext_comp.on_objects.at(i)).index_of(comp_rule(m, n, f.vertex(m)[pb.p0.at(e)], f.vertex(n)[pb.p1.at(e)])));
    }
    f.comp_lax.push_back(FinFn(pb.vertex, f.vertex(b.ext_comp.on_objects.at(i)), std::move(image)));
  }
}

LaxSpanFunctor terminal_lax(const DoubleCategory& b) {
  FinSet point{"*"};
  LaxSpanFunctor f{b, {}, {}, {}, {}, {}, {}};
  f.on_object.assign(b.objects().size(), point);
  f.on_arrow.assign(b.arrows().size(), FinFn::identity(point));
  f.on_proarrow.assign(b.proarrows().size(), identity_span(point));
  auto star = [](auto&&...) { return Id("*"); };
  fill_structure(f, star, star, star);
  return f;
}

LaxTransformation to_terminal(const LaxSpanFunctor& f) {
  LaxSpanFunctor t = terminal_lax(f.base);
  LaxTransformation out{f, t, {}, {}};
  for (const auto& s : f.on_object) out.obj_comp.push_back(FinFn::constant(s, t.on_object[0], "*"));
  for (const auto& s : f.on_proarrow) out.pro_comp.push_back(FinFn::constant(s.vertex(), t.on_object[0], "*"));
  return out;
}

LaxSpanFunctor representable(const DoubleCategory& b, std::string_view x_name) {
  auto xi = b.objects().find(x_name);
  if (!xi) throw Error(ErrorKind::InvalidObject, "no object " + std::string(x_name));
  std::size_t x = *xi;
  std::size_t ux = b.unit_pro(x);
  LaxSpanFunctor f{b, {}, {}, {}, {}, {}, {}};
  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    std::vector<Id> hom;
    for (std::size_t g = 0; g < b.arrows().size(); ++g) {
      if (b.d0.dom().at(g) == a && b.d0.cod().at(g) == x) hom.push_back(b.arrows()[g]);
    }
    f.on_object.emplace_back(std::move(hom));
  }
  for (std::size_t g = 0; g < b.arrows().size(); ++g) {
    const FinSet& from = f.on_object[b.d0.cod().at(g)];
    const FinSet& to = f.on_object[b.d0.dom().at(g)];
    f.on_arrow.push_back(FinFn::tabulate(from, to, [&](const Id& h) { return name_then(b.d0, b.arrows()[g], h); }));
  }
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    std::vector<Id> cells;
    for (std::size_t c = 0; c < b.cells().size(); ++c) {
      if (b.cell_dom(c) == m && b.cell_cod(c) == ux) cells.push_back(b.cells()[c]);
    }
    FinSet v(std::move(cells));
    f.on_proarrow.emplace_back(
        FinFn::tabulate(v, f.on_object[b.pro_src(m)], [&](const Id& c) { return b.arrows()[b.cell_src(b.cells().index_of(c))]; }),
        FinFn::tabulate(v, f.on_object[b.pro_tgt(m)], [&](const Id& c) { return b.arrows()[b.cell_tgt(b.cells().index_of(c))]; }));
  }
  fill_structure(
      f, [&](std::size_t c, const Id& theta) { return name_then(b.d1, b.cells()[c], theta); },
      [&](std::size_t, const Id& h) { return b.cells()[b.unit_cell(b.arrows().index_of(h))]; },
      [&](std::size_t, std::size_t, const Id& s, const Id& t) {
        return b.cells()[b.ext_cells(b.cells().index_of(s), b.cells().index_of(t))];
      });
  return f;
}

LaxTransformation representable_map(const DoubleCategory& b, std::string_view k_name) {
  std::size_t k = b.arrows().index_of(k_name);
  LaxSpanFunctor f = representable(b, b.objects()[b.d0.dom().at(k)]);
  LaxSpanFunctor g = representable(b, b.objects()[b.d0.cod().at(k)]);
  LaxTransformation t{f, g, {}, {}};
  for (std::size_t a = 0; a < b.objects().size(); ++a) {
    t.obj_comp.push_back(FinFn::tabulate(f.on_object[a], g.on_object[a], [&](const Id& h) { return name_then(b.d0, h, b.arrows()[k]); }));
  }
  const Id& uk = b.cells()[b.unit_cell(k)];
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    t.pro_comp.push_back(FinFn::tabulate(f.vertex(m), g.vertex(m), [&](const Id& c) { return name_then(b.d1, c, uk); }));
  }
  return t;
}

LaxSpanFunctor presheaf_lax(const DoubleCategory& b, std::vector<FinSet> sets, std::vector<FinFn> transitions) {
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    if (b.unit_pro(b.pro_src(m)) != m) throw Error(ErrorKind::Shape, b.proarrows()[m] + " is not a unit proarrow");
  }
  if (sets.size() != b.objects().size() || transitions.size() != b.arrows().size()) {
    throw Error(ErrorKind::Shape, "presheaf does not match the base");
  }
  LaxSpanFunctor f{b, std::move(sets), std::move(transitions), {}, {}, {}, {}};
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) f.on_proarrow.push_back(identity_span(f.on_object[b.pro_src(m)]));
  // Every cell is a unit cell u_g, and (u_g)* = g*.
  fill_structure(
      f, [&](std::size_t c, const Id& x) { return f.on_arrow[b.cell_src(c)](x); },
      [](std::size_t, const Id& x) { return x; }, [](std::size_t, std::size_t, const Id& x, const Id&) { return x; });
  return f;
}

LaxSpanFunctor encode_category(const FinCategory& c) {
  LaxSpanFunctor f{terminal_double(), {c.objects()}, {FinFn::identity(c.objects())}, {Span(c.dom(), c.cod())}, {}, {}, {}};
  fill_structure(
      f, [](std::size_t, const Id& s) { return s; }, 
      [&](std::size_t, const Id& x) { return c.id()(x); },
      [&](std::size_t, std::size_t, const Id& s, const Id& t) { return name_then(c, s, t); });
  return f;
}

FinCategory decode_category(const LaxSpanFunctor& f) {
  if (!(f.base == terminal_double())) throw Error(ErrorKind::Shape, "base is not the terminal double category");
  const Span& s = f.on_proarrow[0];
  const FinFn& phi = f.comp_lax[0];
  Pullback pb = pullback(s.leg1(), s.leg0());
  std::vector<Composite> comps;
  for (std::size_t e = 0; e < pb.vertex.size(); ++e) comps.push_back({pb.p0.at(e), pb.p1.at(e), phi.at(e)});
  return FinCategory(f.on_object[0], s.vertex(), s.leg0(), s.leg1(), f.unit_lax[0], std::move(comps));
}

LaxTransformation encode_functor(const FinFunctor& g) {
  return {encode_category(g.src), encode_category(g.tgt), {g.on_objects}, {g.on_morphisms}};
}

FinFunctor decode_functor(const LaxTransformation& t) {
  return {decode_category(t.src), decode_category(t.tgt), t.obj_comp.at(0), t.pro_comp.at(0)};
}

LaxSpanFunctor encode_functor_over(const FinFunctor& p) {
  const FinCategory& d = p.src;
  const FinCategory& c = p.tgt;
  LaxSpanFunctor f{vertical_double(c), {}, {}, {}, {}, {}, {}};
  for (const auto& x : c.objects()) f.on_object.push_back(fiber_objects(p, x));
  for (const auto& s : f.on_object) f.on_arrow.push_back(FinFn::identity(s));
  for (std::size_t g = 0; g < c.morphisms().size(); ++g) {
    std::vector<Id> over;
    for (std::size_t e = 0; e < d.morphisms().size(); ++e) {
      if (p.on_morphisms.at(e) == g) over.push_back(d.morphisms()[e]);
    }
    FinSet v(std::move(over));
    f.on_proarrow.emplace_back(FinFn::tabulate(v, f.on_object[c.dom().at(g)], [&](const Id& e) { return d.dom()(e); }),
                               FinFn::tabulate(v, f.on_object[c.cod().at(g)], [&](const Id& e) { return d.cod()(e); }));
  }
  fill_structure(
      f, [](std::size_t, const Id& s) { return s; },
      [&](std::size_t, const Id& x) { return d.morphisms()[d.identity(d.objects().index_of(x))]; },
      [&](std::size_t, std::size_t, const Id& s, const Id& t) { return name_then(d, s, t); });
  return f;
}

FinFunctor decode_functor_over(const LaxSpanFunctor& f, const FinCategory& c) {
  if (!(f.base == vertical_double(c))) throw Error(ErrorKind::Shape, "base is not the vertical double category of c");
  std::vector<Id> objects, morphisms;
  Table dom, cod, id, over_obj, over_mor;
  for (std::size_t x = 0; x < c.objects().size(); ++x) {
    for (std::size_t e = 0; e < f.on_object[x].size(); ++e) {
      const Id& name = f.on_object[x][e];
      objects.push_back(name);
      over_obj[name] = c.objects()[x];
      id[name] = f.vertex(c.identity(x))[f.unit_lax[x].at(e)];
    }
  }
  for (std::size_t g = 0; g < c.morphisms().size(); ++g) {
    const Span& s = f.on_proarrow[g];
    for (std::size_t e = 0; e < s.vertex().size(); ++e) {
      const Id& name = s.vertex()[e];
      morphisms.push_back(name);
      over_mor[name] = c.morphisms()[g];
      dom[name] = s.left()[s.leg0().at(e)];
      cod[name] = s.right()[s.leg1().at(e)];
    }
  }
  FinSet obj(std::move(objects)), mor(std::move(morphisms));
  std::vector<Composite> comps;
  const DoubleCategory& b = f.base;
  CategoryPullback pairs = pullback_category(b.tgt, b.src);
  for (std::size_t i = 0; i < f.comp_lax.size(); ++i) {
    std::size_t m = pairs.p0.on_objects.at(i), n = pairs.p1.on_objects.at(i);
    const FinFn& phi = f.comp_lax[i];
    Pullback pb = pullback(f.on_proarrow[m].leg1(), f.on_proarrow[n].leg0());
    for (std::size_t e = 0; e < pb.vertex.size(); ++e) {
      comps.push_back({mor.index_of(f.vertex(m)[pb.p0.at(e)]), mor.index_of(f.vertex(n)[pb.p1.at(e)]),
                       mor.index_of(phi.cod()[phi.at(e)])});
    }
  }
  FinCategory d(obj, mor, FinFn::from_table(mor, obj, dom), FinFn::from_table(mor, obj, cod), FinFn::from_table(obj, mor, id),
                std::move(comps));
  return {d, c, FinFn::from_table(obj, c.objects(), over_obj), FinFn::from_table(mor, c.morphisms(), over_mor)};
}

}  // namespace ddf
