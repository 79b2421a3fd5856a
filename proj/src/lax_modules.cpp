#include "ddf/lax_modules.hpp"

#include "ddf/error.hpp"

namespace ddf {

namespace {

std::size_t act(const DoubleCategory& b, const std::vector<FinFn>& acts, const FinSet& xs, const FinSet& ys,
                std::size_t m, std::size_t n, std::size_t x, std::size_t y) {
  auto i = b.pair_index(m, n);
  if (!i) throw Error(ErrorKind::CompositionMismatch, b.proarrows()[m] + " and " + b.proarrows()[n] + " do not compose");
  auto j = acts[*i].dom().find(pair_id(xs[x], ys[y]));
  if (!j) throw Error(ErrorKind::CompositionMismatch, "elements " + xs[x] + " and " + ys[y] + " do not compose");
  return acts[*i].at(*j);
}

// Composable pair (m, n) at each index of b.composable().
std::pair<std::size_t, std::size_t> pair_at(const CategoryPullback& comp, std::size_t i) {
  return {comp.p0.on_objects.at(i), comp.p1.on_objects.at(i)};
}

}  // namespace

std::size_t Module::act_left(std::size_t m, std::size_t n, std::size_t a, std::size_t s) const {
  return act(base(), left_act, src.vertex(m), vertex(n), m, n, a, s);
}

std::size_t Module::act_right(std::size_t m, std::size_t n, std::size_t s, std::size_t b) const {
  return act(base(), right_act, vertex(m), tgt.vertex(n), m, n, s, b);
}

void fill_module(Module& mod, const ModuleCellRule& cell_rule, const ActRule& left_rule, const ActRule& right_rule) {
  const DoubleCategory& b = mod.base();
  mod.on_cell.clear();
  mod.left_act.clear();
  mod.right_act.clear();
  for (std::size_t c = 0; c < b.cells().size(); ++c) {
    const Span& src = mod.on_proarrow[b.cell_cod(c)];
    const Span& tgt = mod.on_proarrow[b.cell_dom(c)];
    FinFn v = FinFn::tabulate(src.vertex(), tgt.vertex(), [&](const Id& t) { return cell_rule(c, t); });
    mod.on_cell.push_back({src, tgt, mod.src.on_arrow[b.cell_src(c)], v, mod.tgt.on_arrow[b.cell_tgt(c)]});
  }
  CategoryPullback comp = pullback_category(b.tgt, b.src);
  for (std::size_t i = 0; i < comp.cat.objects().size(); ++i) {
    auto [m, n] = pair_at(comp, i);
    const FinSet& out = mod.vertex(b.ext_comp.on_objects.at(i));
    Pullback pl = pullback(mod.src.on_proarrow[m].leg1(), mod.on_proarrow[n].leg0());
    mod.left_act.push_back(FinFn::tabulate(pl.vertex, out, [&](const Id& e) { return left_rule(m, n, pl.p0(e), pl.p1(e)); }));
    Pullback pr = pullback(mod.on_proarrow[m].leg1(), mod.tgt.on_proarrow[n].leg0());
    mod.right_act.push_back(FinFn::tabulate(pr.vertex, out, [&](const Id& e) { return right_rule(m, n, pr.p0(e), pr.p1(e)); }));
  }
}

namespace {

Report check_module_shape(const Module& mod) {
  Report r;
  const DoubleCategory& b = mod.base();
  const LaxSpanFunctor& f = mod.src;
  const LaxSpanFunctor& g = mod.tgt;
  if (mod.on_proarrow.size() != b.proarrows().size() || mod.on_cell.size() != b.cells().size() ||
      mod.left_act.size() != b.composable().objects().size() || mod.right_act.size() != b.composable().objects().size()) {
    r.add("module.shape", "assignment counts do not match the base");
    return r;
  }
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    const Span& s = mod.on_proarrow[m];
    if (!(s.left() == f.on_object[b.pro_src(m)]) || !(s.right() == g.on_object[b.pro_tgt(m)])) {
      r.add("module.shape", "span of " + b.proarrows()[m]);
    }
  }
  if (!r.ok()) return r;
  for (std::size_t c = 0; c < b.cells().size(); ++c) {
    const SpanMorphism& sm = mod.on_cell[c];
    if (!(sm.src == mod.on_proarrow[b.cell_cod(c)]) || !(sm.tgt == mod.on_proarrow[b.cell_dom(c)]) ||
        !(sm.left == f.on_arrow[b.cell_src(c)]) || !(sm.right == g.on_arrow[b.cell_tgt(c)])) {
      r.add("module.shape", "span morphism of " + b.cells()[c]);
    }
  }
  CategoryPullback comp = pullback_category(b.tgt, b.src);
  for (std::size_t i = 0; i < comp.cat.objects().size(); ++i) {
    auto [m, n] = pair_at(comp, i);
    const FinSet& out = mod.vertex(b.ext_comp.on_objects.at(i));
    Pullback pl = pullback(f.on_proarrow[m].leg1(), mod.on_proarrow[n].leg0());
    Pullback pr = pullback(mod.on_proarrow[m].leg1(), g.on_proarrow[n].leg0());
    if (!(mod.left_act[i].dom() == pl.vertex) || !(mod.left_act[i].cod() == out)) {
      r.add("module.shape", "left action at " + b.composable().objects()[i]);
    }
    if (!(mod.right_act[i].dom() == pr.vertex) || !(mod.right_act[i].cod() == out)) {
      r.add("module.shape", "right action at " + b.composable().objects()[i]);
    }
  }
  return r;
}

}  // namespace

Report check_module(const Module& mod, const CheckOptions& opts) {
  const LaxSpanFunctor& f = mod.src;
  const LaxSpanFunctor& g = mod.tgt;
  if (!(f.base == g.base)) throw Error(ErrorKind::BaseMismatch, "module between functors on different bases");
  const DoubleCategory& b = f.base;
  Report r;
  r.merge(check_lax_functor(f, opts), "src");
  r.merge(check_lax_functor(g, opts), "tgt");
  if (!r.ok()) return r;
  r = check_module_shape(mod);
  if (!r.ok()) return r;

  // Functoriality on cells, contravariant.
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    if (!(mod.on_cell[b.d1.identity(m)].vertex == FinFn::identity(mod.vertex(m)))) {
      r.add("module.functoriality", "identity cell at " + b.proarrows()[m]);
    }
  }
  for (const auto& c : b.d1.composites()) {
    if (!(mod.on_cell[c.result].vertex == compose_fn(mod.on_cell[c.first].vertex, mod.on_cell[c.second].vertex))) {
      r.add("module.functoriality", join_names({b.cells()[c.first], b.cells()[c.second]}));
    }
  }
  for (std::size_t c = 0; c < b.cells().size(); ++c) r.merge(check_span_morphism(mod.on_cell[c]), b.cells()[c]);

  // Actions are maps of spans.
  CategoryPullback comp = pullback_category(b.tgt, b.src);
  for (std::size_t i = 0; i < comp.cat.objects().size(); ++i) {
    auto [m, n] = pair_at(comp, i);
    const Span& out = mod.on_proarrow[b.ext_comp.on_objects.at(i)];
    const Span& fm = f.on_proarrow[m];
    const Span& mn = mod.on_proarrow[n];
    Pullback pl = pullback(fm.leg1(), mn.leg0());
    for (std::size_t e = 0; e < pl.vertex.size(); ++e) {
      std::size_t v = mod.left_act[i].at(e);
      if (out.leg0().at(v) != fm.leg0().at(pl.p0.at(e)) || out.leg1().at(v) != mn.leg1().at(pl.p1.at(e))) {
        r.add("module.action_boundary", join_names({"left", b.composable().objects()[i], pl.vertex[e]}));
      }
    }
    const Span& mm = mod.on_proarrow[m];
    const Span& gn = g.on_proarrow[n];
    Pullback pr = pullback(mm.leg1(), gn.leg0());
    for (std::size_t e = 0; e < pr.vertex.size(); ++e) {
      std::size_t v = mod.right_act[i].at(e);
      if (out.leg0().at(v) != mm.leg0().at(pr.p0.at(e)) || out.leg1().at(v) != gn.leg1().at(pr.p1.at(e))) {
        r.add("module.action_boundary", join_names({"right", b.composable().objects()[i], pr.vertex[e]}));
      }
    }
  }
  if (!r.ok()) return r;

  // Naturality: M(β⊗α) ∘ λ_{p,q} = λ_{m,n} ∘ (Fα × Mβ), and likewise for ρ.
  const FinCategory& cp = b.composable();
  for (std::size_t j = 0; j < cp.morphisms().size(); ++j) {
    std::size_t alpha = comp.p0.on_morphisms.at(j), beta = comp.p1.on_morphisms.at(j);
    std::size_t p = b.cell_cod(alpha), q = b.cell_cod(beta);
    std::size_t m = b.cell_dom(alpha), n = b.cell_dom(beta);
    const FinFn& ba = mod.on_cell[b.ext_comp.on_morphisms.at(j)].vertex;
    Pullback pl = pullback(f.on_proarrow[p].leg1(), mod.on_proarrow[q].leg0());
    for (std::size_t e = 0; e < pl.vertex.size(); ++e) {
      std::size_t a = pl.p0.at(e), s = pl.p1.at(e);
      std::size_t lhs = ba.at(mod.act_left(p, q, a, s));
      std::size_t rhs = mod.act_left(m, n, f.on_cell[alpha].vertex.at(a), mod.on_cell[beta].vertex.at(s));
      if (lhs != rhs) r.add("module.naturality", join_names({"left", cp.morphisms()[j], pl.vertex[e]}));
    }
    Pullback pr = pullback(mod.on_proarrow[p].leg1(), g.on_proarrow[q].leg0());
    for (std::size_t e = 0; e < pr.vertex.size(); ++e) {
      std::size_t s = pr.p0.at(e), c = pr.p1.at(e);
      std::size_t lhs = ba.at(mod.act_right(p, q, s, c));
      std::size_t rhs = mod.act_right(m, n, mod.on_cell[alpha].vertex.at(s), g.on_cell[beta].vertex.at(c));
      if (lhs != rhs) r.add("module.naturality", join_names({"right", cp.morphisms()[j], pr.vertex[e]}));
    }
  }

  // Unit: λ(φ_A(s_0), s) = s = ρ(s, φ_B(s_1)).
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    std::size_t a = b.pro_src(m), c = b.pro_tgt(m);
    const Span& mm = mod.on_proarrow[m];
    for (std::size_t s = 0; s < mm.vertex().size(); ++s) {
      if (mod.act_left(b.unit_pro(a), m, f.unit_lax[a].at(mm.leg0().at(s)), s) != s) {
        r.add("module.unit", join_names({"left", b.proarrows()[m], mm.vertex()[s]}));
      }
      if (mod.act_right(m, b.unit_pro(c), s, g.unit_lax[c].at(mm.leg1().at(s))) != s) {
        r.add("module.unit", join_names({"right", b.proarrows()[m], mm.vertex()[s]}));
      }
    }
  }

  if (!opts.allows(3)) {
    r.note("module.associativity and module.compatibility skipped: need paths of length 3");
    return r;
  }
  for (const auto& path : b.proarrow_paths(3)) {
    std::size_t m = path[0], n = path[1], p = path[2];
    std::size_t nm = b.ext(m, n), pn = b.ext(n, p);
    std::string where = join_names({b.proarrows()[m], b.proarrows()[n], b.proarrows()[p]});
    auto triples = [&](const Span& x, const Span& y, const Span& z, auto check) {
      std::vector<Span> spans{x, y, z};
      PathVertex pv = path_vertex(spans);
      for (std::size_t v = 0; v < pv.span.vertex().size(); ++v) {
        if (!check(pv.proj[0].at(v), pv.proj[1].at(v), pv.proj[2].at(v))) return pv.span.vertex()[v];
      }
      return Id();
    };
    Id bad = triples(f.on_proarrow[m], f.on_proarrow[n], mod.on_proarrow[p], [&](auto a, auto c, auto s) {
      return mod.act_left(nm, p, f.compose(m, n, a, c), s) == mod.act_left(m, pn, a, mod.act_left(n, p, c, s));
    });
    if (!bad.empty()) r.add("module.associativity", join_names({"left", where, bad}));
    bad = triples(mod.on_proarrow[m], g.on_proarrow[n], g.on_proarrow[p], [&](auto s, auto c, auto d) {
      return mod.act_right(nm, p, mod.act_right(m, n, s, c), d) == mod.act_right(m, pn, s, g.compose(n, p, c, d));
    });
    if (!bad.empty()) r.add("module.associativity", join_names({"right", where, bad}));
    bad = triples(f.on_proarrow[m], mod.on_proarrow[n], g.on_proarrow[p], [&](auto a, auto s, auto d) {
      return mod.act_right(nm, p, mod.act_left(m, n, a, s), d) == mod.act_left(m, pn, a, mod.act_right(n, p, s, d));
    });
    if (!bad.empty()) r.add("module.compatibility", join_names({where, bad}));
  }
  return r;
}

Module unit_module(const LaxSpanFunctor& f) {
  return {f, f, f.on_proarrow, f.on_cell, f.comp_lax, f.comp_lax};
}

Module product_module(const LaxSpanFunctor& f, const LaxSpanFunctor& g) {
  if (!(f.base == g.base)) throw Error(ErrorKind::BaseMismatch, "module between functors on different bases");
  const DoubleCategory& b = f.base;
  Module mod{f, g, {}, {}, {}, {}};
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    const FinSet& x = f.on_object[b.pro_src(m)];
    const FinSet& y = g.on_object[b.pro_tgt(m)];
    std::vector<Id> names;
    std::vector<std::size_t> p0, p1;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < y.size(); ++j) {
        names.push_back(pair_id(x[i], y[j]));
        p0.push_back(i);
        p1.push_back(j);
      }
    }
    FinSet v(std::move(names));
    mod.on_proarrow.emplace_back(FinFn(v, x, std::move(p0)), FinFn(v, y, std::move(p1)));
  }
  fill_module(
      mod,
      [&](std::size_t c, const Id& t) {
        const Span& s = mod.on_proarrow[b.cell_cod(c)];
        return pair_id(f.on_arrow[b.cell_src(c)](s.leg0()(t)), g.on_arrow[b.cell_tgt(c)](s.leg1()(t)));
      },
      [&](std::size_t m, std::size_t n, const Id& a, const Id& s) {
        return pair_id(f.on_proarrow[m].leg0()(a), mod.on_proarrow[n].leg1()(s));
      },
      [&](std::size_t m, std::size_t n, const Id& s, const Id& c) {
        return pair_id(mod.on_proarrow[m].leg0()(s), g.on_proarrow[n].leg1()(c));
      });
  return mod;
}

namespace {

std::vector<Span> source_spans(const Multimodulation& mu, const std::vector<std::size_t>& path) {
  std::vector<Span> spans;
  for (std::size_t i = 0; i < path.size(); ++i) spans.push_back(mu.sources[i].on_proarrow[path[i]]);
  return spans;
}

FinSet component_codomain(const Multimodulation& mu, const std::vector<std::size_t>& path) {
  const DoubleCategory& b = mu.base();
  return mu.target.vertex(mu.arity() == 0 ? b.unit_pro(path[0]) : b.path_composite(path));
}

std::string path_names(const DoubleCategory& b, const std::vector<std::size_t>& path, bool objects) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ",";
    out += objects ? b.objects()[path[i]] : b.proarrows()[path[i]];
  }
  return out + "]";
}

// Sources chain, legs start at the chain's ends and land on the target's ends.
void check_frame(const std::vector<Module>& sources, const Module& target, const LaxTransformation& left,
                 const LaxTransformation& right) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::FrameMismatch, what); };
  for (const auto& m : sources) {
    if (!(m.base() == target.base())) fail("source module on a different base");
  }
  if (sources.empty()) {
    if (!(left.src == right.src)) fail("legs of a nullary cell start at different functors");
  } else {
    if (!(left.src == sources.front().src)) fail("left leg does not start at the first source");
    if (!(right.src == sources.back().tgt)) fail("right leg does not start at the last source");
    for (std::size_t i = 0; i + 1 < sources.size(); ++i) {
      if (!(sources[i].tgt == sources[i + 1].src)) fail("sources " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not chain");
    }
  }
  if (!(left.tgt == target.src)) fail("left leg does not end at the target's source");
  if (!(right.tgt == target.tgt)) fail("right leg does not end at the target's target");
}

}  // namespace

std::size_t Multimodulation::apply(const std::vector<std::size_t>& path, std::span<const std::size_t> parts) const {
  auto it = components.find(path);
  if (it == components.end()) throw Error(ErrorKind::CompositionMismatch, "no component at " + path_names(base(), path, arity() == 0));
  std::vector<Id> names;
  if (arity() == 0) {
    names.push_back(left.src.on_object[path[0]][parts[0]]);
  } else {
    for (std::size_t i = 0; i < path.size(); ++i) names.push_back(sources[i].vertex(path[i])[parts[i]]);
  }
  Id id = path_id(names);
  auto j = it->second.dom().find(id);
  if (!j) throw Error(ErrorKind::CompositionMismatch, "elements " + id + " do not compose");
  return it->second.at(*j);
}

FinSet component_domain(const Multimodulation& mu, const std::vector<std::size_t>& path) {
  if (mu.arity() == 0) return mu.left.src.on_object[path[0]];
  return path_vertex(source_spans(mu, path)).span.vertex();
}

std::vector<std::vector<std::size_t>> component_keys(const DoubleCategory& b, std::size_t arity) {
  if (arity > 0) return b.proarrow_paths(arity);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t a = 0; a < b.objects().size(); ++a) out.push_back({a});
  return out;
}

Report check_multimodulation(const Multimodulation& mu, const CheckOptions& opts) {
  check_frame(mu.sources, mu.target, mu.left, mu.right);
  const DoubleCategory& b = mu.base();
  const Module& nt = mu.target;
  const std::size_t k = mu.arity();
  Report r;
  for (std::size_t i = 0; i < k; ++i) r.merge(check_module(mu.sources[i], opts), "source " + std::to_string(i));
  r.merge(check_module(nt, opts), "target");
  r.merge(check_transformation(mu.left), "left");
  r.merge(check_transformation(mu.right), "right");
  if (!r.ok()) return r;

  auto keys = component_keys(b, k);
  if (mu.components.size() != keys.size()) r.add("multimodulation.shape", "component count does not match the base");
  for (const auto& key : keys) {
    auto it = mu.components.find(key);
    if (it == mu.components.end()) {
      r.add("multimodulation.shape", "missing component at " + path_names(b, key, k == 0));
    } else if (!(it->second.dom() == component_domain(mu, key)) || !(it->second.cod() == component_codomain(mu, key))) {
      r.add("multimodulation.shape", "component at " + path_names(b, key, k == 0));
    }
  }
  if (!r.ok()) return r;

  // Boundary: the outer legs of μ(s) are τ and σ of the outer legs of s.
  for (const auto& [key, fn] : mu.components) {
    std::size_t a = k == 0 ? key[0] : b.pro_src(key.front());
    std::size_t c = k == 0 ? key[0] : b.pro_tgt(key.back());
    const Span& out = nt.on_proarrow[k == 0 ? b.unit_pro(a) : b.path_composite(key)];
    std::vector<std::size_t> lo, hi;
    if (k == 0) {
      for (std::size_t x = 0; x < fn.dom().size(); ++x) lo.push_back(x);
      hi = lo;
    } else {
      PathVertex pv = path_vertex(source_spans(mu, key));
      lo = pv.span.leg0().image();
      hi = pv.span.leg1().image();
    }
    for (std::size_t v = 0; v < fn.dom().size(); ++v) {
      if (out.leg0().at(fn.at(v)) != mu.left.obj_comp[a].at(lo[v]) || out.leg1().at(fn.at(v)) != mu.right.obj_comp[c].at(hi[v])) {
        r.add("multimodulation.boundary", join_names({path_names(b, key, k == 0), fn.dom()[v]}));
      }
    }
  }
  if (!r.ok()) return r;

  // Naturality: N[θ] ∘ μ_n = μ_m ∘ (M_1θ_1 × ... × M_kθ_k); nullary: N(u_f) ∘ μ_C = μ_A ∘ f*.
  if (k == 0) {
    for (std::size_t f = 0; f < b.arrows().size(); ++f) {
      std::size_t a = b.d0.dom().at(f), c = b.d0.cod().at(f);
      const FinFn& uf = nt.on_cell[b.unit_cell(f)].vertex;
      const FinFn& fs = mu.left.src.on_arrow[f];
      for (std::size_t x = 0; x < fs.dom().size(); ++x) {
        if (uf.at(mu.components.at({c}).at(x)) != mu.components.at({a}).at(fs.at(x))) {
          r.add("multimodulation.naturality", join_names({b.arrows()[f], fs.dom()[x]}));
        }
      }
    }
  } else {
    for (const auto& theta : b.cell_paths(k)) {
      std::vector<std::size_t> m, n;
      for (auto t : theta) {
        m.push_back(b.cell_dom(t));
        n.push_back(b.cell_cod(t));
      }
      const FinFn& nth = nt.on_cell[b.cell_path_composite(theta)].vertex;
      PathVertex pv = path_vertex(source_spans(mu, n));
      for (std::size_t v = 0; v < pv.span.vertex().size(); ++v) {
        std::vector<std::size_t> parts;
        for (std::size_t i = 0; i < k; ++i) parts.push_back(mu.sources[i].on_cell[theta[i]].vertex.at(pv.proj[i].at(v)));
        if (nth.at(mu.components.at(n).at(v)) != mu.apply(m, parts)) {
          std::string cells;
          for (auto t : theta) cells += (cells.empty() ? "" : ",") + b.cells()[t];
          r.add("multimodulation.naturality", join_names({"[" + cells + "]", pv.span.vertex()[v]}));
        }
      }
    }
  }

  if (!opts.allows(k + 1)) {
    r.note("multimodulation equivariance skipped: needs paths of length " + std::to_string(k + 1));
    return r;
  }
  const LaxTransformation& tau = mu.left;
  const LaxTransformation& sigma = mu.right;
  if (k == 0) {
    // λ(τ_x(a), μ_B(a_1)) = ρ(μ_A(a_0), σ_x(a)).
    const LaxSpanFunctor& f = tau.src;
    for (std::size_t x = 0; x < b.proarrows().size(); ++x) {
      std::size_t a = b.pro_src(x), c = b.pro_tgt(x);
      const Span& fx = f.on_proarrow[x];
      for (std::size_t e = 0; e < fx.vertex().size(); ++e) {
        std::size_t lhs = nt.act_left(x, b.unit_pro(c), tau.pro_comp[x].at(e), mu.components.at({c}).at(fx.leg1().at(e)));
        std::size_t rhs = nt.act_right(b.unit_pro(a), x, mu.components.at({a}).at(fx.leg0().at(e)), sigma.pro_comp[x].at(e));
        if (lhs != rhs) r.add("multimodulation.nullary_equivariance", join_names({b.proarrows()[x], fx.vertex()[e]}));
      }
    }
    return r;
  }

  auto sub = [](const std::vector<std::size_t>& v, std::size_t from, std::size_t to) {
    return std::vector<std::size_t>(v.begin() + from, v.begin() + to);
  };
  for (const auto& path : b.proarrow_paths(k + 1)) {
    // Left: path = (x, m_1, ..., m_k).
    {
      std::size_t x = path[0];
      std::vector<std::size_t> m = sub(path, 1, k + 1);
      std::vector<Span> spans{tau.src.on_proarrow[x]};
      for (const auto& s : source_spans(mu, m)) spans.push_back(s);
      PathVertex pv = path_vertex(spans);
      for (std::size_t v = 0; v < pv.span.vertex().size(); ++v) {
        std::vector<std::size_t> parts;
        for (const auto& p : pv.proj) parts.push_back(p.at(v));
        std::vector<std::size_t> s = sub(parts, 1, k + 1);
        std::size_t lhs = nt.act_left(x, b.path_composite(m), tau.pro_comp[x].at(parts[0]), mu.apply(m, s));
        std::vector<std::size_t> m2 = m, s2 = s;
        m2[0] = b.ext(x, m[0]);
        s2[0] = mu.sources[0].act_left(x, m[0], parts[0], s[0]);
        if (lhs != mu.apply(m2, s2)) {
          r.add("multimodulation.left_equivariance", join_names({path_names(b, path, false), pv.span.vertex()[v]}));
        }
      }
    }
    // Right: path = (m_1, ..., m_k, y).
    {
      std::size_t y = path[k];
      std::vector<std::size_t> m = sub(path, 0, k);
      std::vector<Span> spans = source_spans(mu, m);
      spans.push_back(sigma.src.on_proarrow[y]);
      PathVertex pv = path_vertex(spans);
      for (std::size_t v = 0; v < pv.span.vertex().size(); ++v) {
        std::vector<std::size_t> parts;
        for (const auto& p : pv.proj) parts.push_back(p.at(v));
        std::vector<std::size_t> s = sub(parts, 0, k);
        std::size_t lhs = nt.act_right(b.path_composite(m), y, mu.apply(m, s), sigma.pro_comp[y].at(parts[k]));
        std::vector<std::size_t> m2 = m, s2 = s;
        m2[k - 1] = b.ext(m[k - 1], y);
        s2[k - 1] = mu.sources[k - 1].act_right(m[k - 1], y, s[k - 1], parts[k]);
        if (lhs != mu.apply(m2, s2)) {
          r.add("multimodulation.right_equivariance", join_names({path_names(b, path, false), pv.span.vertex()[v]}));
        }
      }
    }
    // Inner: x sits between m_{i+1} and m_{i+2} (0-based i).
    for (std::size_t i = 0; i + 1 < k; ++i) {
      std::size_t x = path[i + 1];
      std::vector<std::size_t> m = sub(path, 0, i + 1);
      for (std::size_t j = i + 2; j < k + 1; ++j) m.push_back(path[j]);
      std::vector<Span> spans;
      for (std::size_t j = 0; j <= k; ++j) {
        spans.push_back(j == i + 1 ? mu.sources[i].tgt.on_proarrow[x] : mu.sources[j < i + 1 ? j : j - 1].on_proarrow[path[j]]);
      }
      PathVertex pv = path_vertex(spans);
      for (std::size_t v = 0; v < pv.span.vertex().size(); ++v) {
        std::vector<std::size_t> parts;
        for (const auto& p : pv.proj) parts.push_back(p.at(v));
        std::size_t a = parts[i + 1];
        std::vector<std::size_t> s = sub(parts, 0, i + 1);
        for (std::size_t j = i + 2; j < k + 1; ++j) s.push_back(parts[j]);
        std::vector<std::size_t> ml = m, sl = s, mr = m, sr = s;
        ml[i] = b.ext(m[i], x);
        sl[i] = mu.sources[i].act_right(m[i], x, s[i], a);
        mr[i + 1] = b.ext(x, m[i + 1]);
        sr[i + 1] = mu.sources[i + 1].act_left(x, m[i + 1], a, s[i + 1]);
        if (mu.apply(ml, sl) != mu.apply(mr, sr)) {
          r.add("multimodulation.inner_equivariance",
                join_names({std::to_string(i), path_names(b, path, false), pv.span.vertex()[v]}));
        }
      }
    }
  }
  return r;
}

Multimodulation make_multimodulation(std::vector<Module> sources, Module target, LaxTransformation left,
                                     LaxTransformation right, const ComponentRule& rule) {
  check_frame(sources, target, left, right);
  Multimodulation mu{std::move(sources), std::move(target), std::move(left), std::move(right), {}};
  for (const auto& key : component_keys(mu.base(), mu.arity())) {
    FinSet cod = component_codomain(mu, key);
    std::vector<std::size_t> image;
    if (mu.arity() == 0) {
      const FinSet& dom = mu.left.src.on_object[key[0]];
      for (const auto& x : dom) image.push_back(cod.index_of(rule(key, {x})));
      mu.components.emplace(key, FinFn(dom, cod, std::move(image)));
    } else {
      PathVertex pv = path_vertex(source_spans(mu, key));
      for (std::size_t v = 0; v < pv.span.vertex().size(); ++v) image.push_back(cod.index_of(rule(key, pv.parts(v))));
      mu.components.emplace(key, FinFn(pv.span.vertex(), cod, std::move(image)));
    }
  }
  return mu;
}

Multimodulation identity_multimodulation(const Module& mod) {
  return make_multimodulation({mod}, mod, identity_transformation(mod.src), identity_transformation(mod.tgt),
                              [](const auto&, const std::vector<Id>& parts) { return parts[0]; });
}

Multimodulation composition_multimodulation(const LaxSpanFunctor& f) {
  Module u = unit_module(f);
  LaxTransformation id = identity_transformation(f);
  return make_multimodulation({u, u}, u, id, id, [&](const std::vector<std::size_t>& path, const std::vector<Id>& parts) {
    std::size_t m = path[0], n = path[1];
    std::size_t v = f.compose(m, n, f.vertex(m).index_of(parts[0]), f.vertex(n).index_of(parts[1]));
    return f.vertex(f.base.ext(m, n))[v];
  });
}

Multimodulation unit_multimodulation(const LaxSpanFunctor& f) {
  LaxTransformation id = identity_transformation(f);
  return make_multimodulation({}, unit_module(f), id, id, [&](const std::vector<std::size_t>& key, const std::vector<Id>& parts) {
    return f.unit_lax[key[0]](parts[0]);
  });
}

Multimodulation to_product(std::vector<Module> sources, LaxTransformation left, LaxTransformation right) {
  Module target = product_module(left.tgt, right.tgt);
  DoubleCategory b = target.base();
  std::vector<Module> copy = sources;
  return make_multimodulation(
      std::move(sources), std::move(target), left, right, [&](const std::vector<std::size_t>& key, const std::vector<Id>& parts) {
        if (copy.empty()) return pair_id(left.obj_comp[key[0]](parts[0]), right.obj_comp[key[0]](parts[0]));
        const Id& lo = copy.front().on_proarrow[key.front()].leg0()(parts.front());
        const Id& hi = copy.back().on_proarrow[key.back()].leg1()(parts.back());
        return pair_id(left.obj_comp[b.pro_src(key.front())](lo), right.obj_comp[b.pro_tgt(key.back())](hi));
      });
}

Multimodulation compose_multimodulations(const Multimodulation& mu, const std::vector<Multimodulation>& nus) {
  const std::size_t k = mu.arity();
  if (nus.size() != k) throw Error(ErrorKind::FrameMismatch, "expected " + std::to_string(k) + " cells to substitute");
  if (k == 0) return mu;
  for (std::size_t j = 0; j < k; ++j) {
    if (!(nus[j].target == mu.sources[j])) throw Error(ErrorKind::FrameMismatch, "cell " + std::to_string(j) + " does not land on source " + std::to_string(j));
    if (j + 1 < k && !(nus[j].right == nus[j + 1].left)) {
      throw Error(ErrorKind::FrameMismatch, "cells " + std::to_string(j) + " and " + std::to_string(j + 1) + " do not share a leg");
    }
  }
  const DoubleCategory& b = mu.base();
  std::vector<Module> sources;
  std::vector<std::size_t> offset;
  for (const auto& nu : nus) {
    offset.push_back(sources.size());
    sources.insert(sources.end(), nu.sources.begin(), nu.sources.end());
  }
  offset.push_back(sources.size());
  const std::size_t r = sources.size();
  Multimodulation out{sources, mu.target, compose_transformations(mu.left, nus.front().left),
                      compose_transformations(mu.right, nus.back().right), {}};

  // Substitutes one input tuple; empty chunks read their element off the nearest nonempty neighbour.
  auto substitute = [&](const std::vector<std::size_t>& path, const std::vector<std::size_t>& parts) {
    std::vector<std::size_t> outer, inner;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t from = offset[j], to = offset[j + 1];
      if (from < to) {
        std::vector<std::size_t> p(path.begin() + from, path.begin() + to);
        std::vector<std::size_t> s(parts.begin() + from, parts.begin() + to);
        outer.push_back(b.path_composite(p));
        inner.push_back(nus[j].apply(p, s));
        continue;
      }
      std::size_t a, x;
      if (r == 0) {
        a = path[0];
        x = parts[0];
      } else if (from > 0) {
        a = b.pro_tgt(path[from - 1]);
        x = sources[from - 1].on_proarrow[path[from - 1]].leg1().at(parts[from - 1]);
      } else {
        a = b.pro_src(path[0]);
        x = sources[0].on_proarrow[path[0]].leg0().at(parts[0]);
      }
      std::vector<std::size_t> key{a}, s{x};
      outer.push_back(b.unit_pro(a));
      inner.push_back(nus[j].apply(key, s));
    }
    return mu.apply(outer, inner);
  };

  for (const auto& key : component_keys(b, r)) {
    FinSet cod = component_codomain(out, key);
    std::vector<std::size_t> image;
    if (r == 0) {
      const FinSet& dom = out.left.src.on_object[key[0]];
      for (std::size_t x = 0; x < dom.size(); ++x) image.push_back(substitute(key, {x}));
      out.components.emplace(key, FinFn(dom, cod, std::move(image)));
    } else {
      PathVertex pv = path_vertex(source_spans(out, key));
      for (std::size_t v = 0; v < pv.span.vertex().size(); ++v) {
        std::vector<std::size_t> parts;
        for (const auto& p : pv.proj) parts.push_back(p.at(v));
        image.push_back(substitute(key, parts));
      }
      out.components.emplace(key, FinFn(pv.span.vertex(), cod, std::move(image)));
    }
  }
  return out;
}

}  // namespace ddf
