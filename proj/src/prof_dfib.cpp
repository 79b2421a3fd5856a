#include "ddf/prof_dfib.hpp"

#include <optional>

#include "ddf/error.hpp"

namespace ddf {

namespace {

// Objects or morphisms of every category involved, chosen once per pass.
struct Level {
  bool mor;
  const FinSet& of(const FinCategory& c) const { return mor ? c.morphisms() : c.objects(); }
  const FinFn& of(const FinFunctor& f) const { return mor ? f.on_morphisms : f.on_objects; }
  std::size_t operator()(const FinFunctor& f, std::size_t x) const { return of(f).at(x); }
  const Id& name(const FinFunctor& f, std::size_t x) const { return of(f.tgt)[of(f).at(x)]; }
  std::string label() const { return mor ? "morphisms" : "objects"; }
};
constexpr Level kLevels[] = {Level{false}, Level{true}};

// f at the pair (x, y) of its pullback domain, if the pair lies in it.
std::optional<std::size_t> at_pair(const FinFunctor& f, Level lv, const Id& x, const Id& y) {
  auto i = lv.of(f.src).find(pair_id(x, y));
  if (!i) return std::nullopt;
  return lv(f, *i);
}

Report ddf_report(const DDFCandidate& p) {
  Report r = check_double_functor(p.proj);
  if (r.ok()) r.merge(is_ddf(p));
  return r;
}

// Violations of an inner check renamed to one axiom of the caller.
void absorb(Report& r, const Report& inner, const std::string& axiom, const std::string& context) {
  for (const auto& v : inner.violations()) r.add(axiom, join_names({context, v.axiom, v.witness}));
}

Report profunctor_shape(const InternalProfunctor& m, const CategoryPullback& dl, const CategoryPullback& dr) {
  Report r;
  const DoubleCategory& e = m.src.total();
  const DoubleCategory& g = m.tgt.total();
  auto expect = [&](const FinFunctor& f, const FinCategory& src, const FinCategory& tgt, const char* what) {
    if (!(f.src == src) || !(f.tgt == tgt)) r.add("profunctor.shape", what);
  };
  expect(m.over, m.carrier, m.base().d1, "over");
  expect(m.leg0, m.carrier, e.d0, "leg0");
  expect(m.leg1, m.carrier, g.d0, "leg1");
  expect(m.left_act, dl.cat, m.carrier, "left action");
  expect(m.right_act, dr.cat, m.carrier, "right action");
  return r;
}

}  // namespace

Report check_internal_profunctor(const InternalProfunctor& m) {
  const DoubleCategory& b = m.src.base();
  if (!(b == m.tgt.base())) throw Error(ErrorKind::BaseMismatch, "profunctor between fibrations over different bases");
  const DoubleCategory& e = m.src.total();
  const DoubleCategory& g = m.tgt.total();
  Report r;
  r.merge(ddf_report(m.src), "src");
  r.merge(ddf_report(m.tgt), "tgt");
  if (!r.ok()) return r;
  if (!(m.leg0.tgt == e.d0) || !(m.leg1.tgt == g.d0)) {
    r.add("profunctor.shape", "legs do not land on the endpoints");
    return r;
  }
  CategoryPullback dl = pullback_category(e.tgt, m.leg0);
  CategoryPullback dr = pullback_category(m.leg1, g.src);
  r = profunctor_shape(m, dl, dr);
  if (!r.ok()) return r;
  r.merge(check_functor(m.over), "over");
  r.merge(check_functor(m.leg0), "leg0");
  r.merge(check_functor(m.leg1), "leg1");
  r.merge(check_functor(m.left_act), "left action");
  r.merge(check_functor(m.right_act), "right action");
  if (!r.ok()) return r;
  absorb(r, is_discrete_fibration(m.over), "profunctor.fibration", "over");

  const FinFunctor& p0 = m.src.proj.f0;
  const FinFunctor& p1 = m.src.proj.f1;
  const FinFunctor& q0 = m.tgt.proj.f0;
  const FinFunctor& q1 = m.tgt.proj.f1;
  for (Level lv : kLevels) {
    const FinSet& ms = lv.of(m.carrier);
    for (std::size_t s = 0; s < ms.size(); ++s) {
      std::size_t o = lv(m.over, s);
      if (lv(p0, lv(m.leg0, s)) != lv(b.src, o)) r.add("profunctor.span", join_names({lv.label(), "leg0", ms[s]}));
      if (lv(q0, lv(m.leg1, s)) != lv(b.tgt, o)) r.add("profunctor.span", join_names({lv.label(), "leg1", ms[s]}));
    }
    // Actions lie over external composites in B and keep the outer boundary.
    const FinSet& ls = lv.of(dl.cat);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      std::size_t a = lv(dl.p0, i), s = lv(dl.p1, i), out = lv(m.left_act, i);
      auto want = at_pair(b.ext_comp, lv, lv.name(p1, a), lv.name(m.over, s));
      if (!want || *want != lv(m.over, out)) r.add("profunctor.action_square", join_names({lv.label(), "left", ls[i]}));
      if (lv(m.leg0, out) != lv(e.src, a) || lv(m.leg1, out) != lv(m.leg1, s)) {
        r.add("profunctor.action_boundary", join_names({lv.label(), "left", ls[i]}));
      }
    }
    const FinSet& rs = lv.of(dr.cat);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      std::size_t s = lv(dr.p0, i), c = lv(dr.p1, i), out = lv(m.right_act, i);
      auto want = at_pair(b.ext_comp, lv, lv.name(m.over, s), lv.name(q1, c));
      if (!want || *want != lv(m.over, out)) r.add("profunctor.action_square", join_names({lv.label(), "right", rs[i]}));
      if (lv(m.leg0, out) != lv(m.leg0, s) || lv(m.leg1, out) != lv(g.tgt, c)) {
        r.add("profunctor.action_boundary", join_names({lv.label(), "right", rs[i]}));
      }
    }
  }
  if (r.has("profunctor.action_boundary")) return r;

  const FinFunctor& la = m.left_act;
  const FinFunctor& ra = m.right_act;
  for (Level lv : kLevels) {
    const FinSet& ms = lv.of(m.carrier);
    const FinSet& e1 = lv.of(e.d1);
    const FinSet& g1 = lv.of(g.d1);
    auto agree = [&](std::optional<std::size_t> x, std::optional<std::size_t> y, const std::string& axiom, const std::string& w) {
      if (!x || !y || *x != *y) r.add(axiom, join_names({lv.label(), w}));
    };
    for (std::size_t s = 0; s < ms.size(); ++s) {
      agree(at_pair(la, lv, e1[lv(e.unit, lv(m.leg0, s))], ms[s]), s, "profunctor.unit", "left " + ms[s]);
      agree(at_pair(ra, lv, ms[s], g1[lv(g.unit, lv(m.leg1, s))]), s, "profunctor.unit", "right " + ms[s]);
    }
    // Action domain elements indexed by their carrier component.
    const FinSet& ls = lv.of(la.src);
    const FinSet& rs = lv.of(ra.src);
    std::vector<std::vector<std::size_t>> left_at(ms.size()), right_at(ms.size());
    for (std::size_t i = 0; i < ls.size(); ++i) left_at[lv(dl.p1, i)].push_back(i);
    for (std::size_t i = 0; i < rs.size(); ++i) right_at[lv(dr.p0, i)].push_back(i);

    for (std::size_t i = 0; i < ls.size(); ++i) {
      std::size_t a2 = lv(dl.p0, i), s = lv(dl.p1, i), t = lv(la, i);
      // L(a ⊗ a2, s) = L(a, L(a2, s)).
      for (std::size_t j : left_at[t]) {
        std::size_t a = lv(dl.p0, j);
        auto aa = at_pair(e.ext_comp, lv, e1[a], e1[a2]);
        auto rhs = aa ? at_pair(la, lv, e1[*aa], ms[s]) : std::nullopt;
        agree(lv(la, j), rhs, "profunctor.associativity", join_names({"left", e1[a], e1[a2], ms[s]}));
      }
      // R(L(a, s), c) = L(a, R(s, c)).
      for (std::size_t j : right_at[t]) {
        std::size_t c = lv(dr.p1, j);
        auto sc = at_pair(ra, lv, ms[s], g1[c]);
        auto rhs = sc ? at_pair(la, lv, e1[a2], ms[*sc]) : std::nullopt;
        agree(lv(ra, j), rhs, "profunctor.compatibility", join_names({e1[a2], ms[s], g1[c]}));
      }
    }
    for (std::size_t i = 0; i < rs.size(); ++i) {
      std::size_t s = lv(dr.p0, i), c = lv(dr.p1, i), t = lv(ra, i);
      // R(R(s, c), c2) = R(s, c ⊗ c2).
      for (std::size_t j : right_at[t]) {
        std::size_t c2 = lv(dr.p1, j);
        auto cc = at_pair(g.ext_comp, lv, g1[c], g1[c2]);
        auto rhs = cc ? at_pair(ra, lv, ms[s], g1[*cc]) : std::nullopt;
        agree(lv(ra, j), rhs, "profunctor.associativity", join_names({"right", ms[s], g1[c], g1[c2]}));
      }
    }
  }
  return r;
}

InternalProfunctor unit_profunctor(const DDFCandidate& p) {
  Report r = ddf_report(p);
  if (!r.ok()) throw Error(ErrorKind::NotADDF, "not a discrete double fibration: " + r.str());
  const DoubleCategory& e = p.total();
  return {p, p, e.d1, p.proj.f1, e.src, e.tgt, e.ext_comp, e.ext_comp};
}

namespace {

// One factor of an iterated pullback with its outer legs.
struct Factor {
  FinCategory cat;
  FinFunctor leg0;
  FinFunctor leg1;
};

Factor carrier_factor(const InternalProfunctor& m) { return {m.carrier, m.leg0, m.leg1}; }
Factor proarrow_factor(const DoubleCategory& e) { return {e.d1, e.src, e.tgt}; }

PathCategory factor_path(const std::vector<Factor>& fs) {
  std::vector<FinCategory> cats;
  std::vector<FinFunctor> rights, lefts;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    cats.push_back(fs[i].cat);
    if (i + 1 < fs.size()) rights.push_back(fs[i].leg1);
    if (i > 0) lefts.push_back(fs[i].leg0);
  }
  return path_category(cats, rights, lefts);
}

std::vector<std::size_t> parts_of(const PathCategory& pc, Level lv, std::size_t d) {
  std::vector<std::size_t> parts;
  for (const auto& p : pc.proj) parts.push_back(lv(p, d));
  return parts;
}

// The mediating functor at a tuple of carrier elements, if the tuple composes.
std::optional<std::size_t> apply_map(const ProfMulticell& g, const PathCategory& dom, Level lv,
                                     const std::vector<std::size_t>& parts) {
  std::vector<Id> names;
  for (std::size_t i = 0; i < parts.size(); ++i) names.push_back(lv.of(g.sources[i].carrier)[parts[i]]);
  auto d = lv.of(dom.cat).find(path_id(names));
  if (!d) return std::nullopt;
  return lv(g.map, *d);
}

void check_frame(const std::vector<InternalProfunctor>& sources, const InternalProfunctor& target, const DDFMorphism& left,
                 const DDFMorphism& right) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::FrameMismatch, what); };
  for (const auto& m : sources) {
    if (!(m.base() == target.base())) fail("source profunctor over a different base");
  }
  if (sources.empty()) {
    if (!(left.src == right.src)) fail("legs of a nullary cell start at different fibrations");
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

PathCategory multicell_domain(const std::vector<InternalProfunctor>& sources, const DDFCandidate& nullary_src) {
  if (sources.empty()) return {nullary_src.total().d0, {}};
  std::vector<Factor> fs;
  for (const auto& m : sources) fs.push_back(carrier_factor(m));
  return factor_path(fs);
}

Report check_prof_multicell(const ProfMulticell& g) {
  check_frame(g.sources, g.target, g.left, g.right);
  const DoubleCategory& b = g.base();
  const InternalProfunctor& n = g.target;
  const std::size_t k = g.arity();
  Report r;
  for (std::size_t i = 0; i < k; ++i) r.merge(check_internal_profunctor(g.sources[i]), "source " + std::to_string(i));
  r.merge(check_internal_profunctor(n), "target");
  r.merge(check_ddf_morphism(g.left), "left");
  r.merge(check_ddf_morphism(g.right), "right");
  if (!r.ok()) return r;

  PathCategory dom = multicell_domain(g.sources, g.left.src);
  if (!(g.map.src == dom.cat) || !(g.map.tgt == n.carrier)) {
    r.add("prof_multicell.functor", "map does not go from the iterated pullback to the target carrier");
    return r;
  }
  absorb(r, check_functor(g.map), "prof_multicell.functor", "map");
  if (!r.ok()) return r;

  const DDFCandidate& p0 = g.left.src;
  for (Level lv : kLevels) {
    const FinSet& ds = lv.of(dom.cat);
    for (std::size_t d = 0; d < ds.size(); ++d) {
      std::size_t out = lv(g.map, d);
      std::vector<std::size_t> parts = parts_of(dom, lv, d);
      std::size_t lo = k ? lv(g.sources.front().leg0, parts.front()) : d;
      std::size_t hi = k ? lv(g.sources.back().leg1, parts.back()) : d;
      if (lv(n.leg0, out) != lv(g.left.map.f0, lo) || lv(n.leg1, out) != lv(g.right.map.f0, hi)) {
        r.add("prof_multicell.boundary", join_names({lv.label(), ds[d]}));
      }
      std::size_t want;
      if (k == 0) {
        want = lv(b.unit, lv(p0.proj.f0, d));
      } else {
        std::vector<std::size_t> path;
        for (std::size_t i = 0; i < k; ++i) path.push_back(lv(g.sources[i].over, parts[i]));
        want = lv.mor ? b.cell_path_composite(path) : b.path_composite(path);
      }
      if (lv(n.over, out) != want) r.add("prof_multicell.over_base", join_names({lv.label(), ds[d]}));
    }
  }
  if (!r.ok()) return r;

  const FinFunctor& h1 = g.left.map.f1;
  const FinFunctor& k1 = g.right.map.f1;
  for (Level lv : kLevels) {
    const FinSet& nm = lv.of(n.carrier);
    auto agree = [&](std::optional<std::size_t> x, std::optional<std::size_t> y, const char* axiom, const std::string& w) {
      if (!x || !y || *x != *y) r.add(axiom, join_names({lv.label(), w}));
    };
    if (k == 0) {
      // L(H x, γ(tgt x)) = R(γ(src x), K x).
      const DoubleCategory& e = p0.total();
      const FinSet& xs = lv.of(e.d1);
      for (std::size_t x = 0; x < xs.size(); ++x) {
        auto lhs = at_pair(n.left_act, lv, lv.name(h1, x), nm[lv(g.map, lv(e.tgt, x))]);
        auto rhs = at_pair(n.right_act, lv, nm[lv(g.map, lv(e.src, x))], lv.name(k1, x));
        agree(lhs, rhs, "prof_multicell.nullary_equivariance", xs[x]);
      }
      continue;
    }
    std::vector<Factor> carriers;
    for (const auto& m : g.sources) carriers.push_back(carrier_factor(m));

    // Left: γ(L_1(x, s_1), s_2, ...) = L_N(H x, γ(s)).
    {
      const DoubleCategory& e = g.sources.front().src.total();
      std::vector<Factor> fs{proarrow_factor(e)};
      fs.insert(fs.end(), carriers.begin(), carriers.end());
      PathCategory pc = factor_path(fs);
      const FinSet& ts = lv.of(pc.cat);
      for (std::size_t t = 0; t < ts.size(); ++t) {
        std::vector<std::size_t> parts = parts_of(pc, lv, t);
        std::size_t x = parts[0];
        std::vector<std::size_t> s(parts.begin() + 1, parts.end());
        auto gs = apply_map(g, dom, lv, s);
        auto lhs = gs ? at_pair(n.left_act, lv, lv.name(h1, x), nm[*gs]) : std::nullopt;
        const InternalProfunctor& m = g.sources.front();
        auto moved = at_pair(m.left_act, lv, lv.of(e.d1)[x], lv.of(m.carrier)[s[0]]);
        std::optional<std::size_t> rhs;
        if (moved) {
          s[0] = *moved;
          rhs = apply_map(g, dom, lv, s);
        }
        agree(lhs, rhs, "prof_multicell.left_equivariance", ts[t]);
      }
    }
    // Right: γ(..., R_k(s_k, y)) = R_N(γ(s), K y).
    {
      const DoubleCategory& e = g.sources.back().tgt.total();
      std::vector<Factor> fs = carriers;
      fs.push_back(proarrow_factor(e));
      PathCategory pc = factor_path(fs);
      const FinSet& ts = lv.of(pc.cat);
      for (std::size_t t = 0; t < ts.size(); ++t) {
        std::vector<std::size_t> parts = parts_of(pc, lv, t);
        std::size_t y = parts[k];
        std::vector<std::size_t> s(parts.begin(), parts.begin() + k);
        auto gs = apply_map(g, dom, lv, s);
        auto lhs = gs ? at_pair(n.right_act, lv, nm[*gs], lv.name(k1, y)) : std::nullopt;
        const InternalProfunctor& m = g.sources.back();
        auto moved = at_pair(m.right_act, lv, lv.of(m.carrier)[s[k - 1]], lv.of(e.d1)[y]);
        std::optional<std::size_t> rhs;
        if (moved) {
          s[k - 1] = *moved;
          rhs = apply_map(g, dom, lv, s);
        }
        agree(lhs, rhs, "prof_multicell.right_equivariance", ts[t]);
      }
    }
    // Inner: γ(..., R_i(s_i, x), s_{i+1}, ...) = γ(..., s_i, L_{i+1}(x, s_{i+1}), ...).
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const DoubleCategory& e = g.sources[i].tgt.total();
      std::vector<Factor> fs(carriers.begin(), carriers.begin() + i + 1);
      fs.push_back(proarrow_factor(e));
      fs.insert(fs.end(), carriers.begin() + i + 1, carriers.end());
      PathCategory pc = factor_path(fs);
      const FinSet& ts = lv.of(pc.cat);
      const InternalProfunctor& mi = g.sources[i];
      const InternalProfunctor& mj = g.sources[i + 1];
      for (std::size_t t = 0; t < ts.size(); ++t) {
        std::vector<std::size_t> parts = parts_of(pc, lv, t);
        std::size_t x = parts[i + 1];
        std::vector<std::size_t> s(parts.begin(), parts.begin() + i + 1);
        s.insert(s.end(), parts.begin() + i + 2, parts.end());
        const Id& xn = lv.of(e.d1)[x];
        std::optional<std::size_t> lhs, rhs;
        if (auto sr = at_pair(mi.right_act, lv, lv.of(mi.carrier)[s[i]], xn)) {
          std::vector<std::size_t> sl = s;
          sl[i] = *sr;
          lhs = apply_map(g, dom, lv, sl);
        }
        if (auto sl = at_pair(mj.left_act, lv, xn, lv.of(mj.carrier)[s[i + 1]])) {
          std::vector<std::size_t> s2 = s;
          s2[i + 1] = *sl;
          rhs = apply_map(g, dom, lv, s2);
        }
        agree(lhs, rhs, "prof_multicell.inner_equivariance", join_names({std::to_string(i), ts[t]}));
      }
    }
  }
  return r;
}

ProfMulticell identity_prof_multicell(const InternalProfunctor& m) {
  return {{m}, m, identity_ddf_morphism(m.src), identity_ddf_morphism(m.tgt), identity_functor(m.carrier)};
}

ProfMulticell composition_prof_multicell(const DDFCandidate& p) {
  InternalProfunctor u = unit_profunctor(p);
  DDFMorphism id = identity_ddf_morphism(p);
  PathCategory dom = multicell_domain({u, u}, p);
  const FinFunctor& ext = p.total().ext_comp;
  return {{u, u}, u, id, id, FinFunctor{dom.cat, ext.tgt, ext.on_objects, ext.on_morphisms}};
}

ProfMulticell unit_prof_multicell(const DDFCandidate& p) {
  InternalProfunctor u = unit_profunctor(p);
  DDFMorphism id = identity_ddf_morphism(p);
  return {{}, u, id, id, p.total().unit};
}

ProfMulticell compose_prof_multicells(const ProfMulticell& g, const std::vector<ProfMulticell>& deltas) {
  const std::size_t k = g.arity();
  if (deltas.size() != k) throw Error(ErrorKind::FrameMismatch, "expected " + std::to_string(k) + " cells to substitute");
  if (k == 0) return g;
  for (std::size_t j = 0; j < k; ++j) {
    if (!(deltas[j].target == g.sources[j])) throw Error(ErrorKind::FrameMismatch, "cell " + std::to_string(j) + " does not land on source " + std::to_string(j));
    if (j + 1 < k && !(deltas[j].right == deltas[j + 1].left)) {
      throw Error(ErrorKind::FrameMismatch, "cells " + std::to_string(j) + " and " + std::to_string(j + 1) + " do not share a leg");
    }
  }
  std::vector<InternalProfunctor> sources;
  std::vector<std::size_t> offset;
  for (const auto& d : deltas) {
    offset.push_back(sources.size());
    sources.insert(sources.end(), d.sources.begin(), d.sources.end());
  }
  offset.push_back(sources.size());
  const std::size_t r = sources.size();
  ProfMulticell out{sources, g.target, compose_ddf_morphisms(g.left, deltas.front().left),
                    compose_ddf_morphisms(g.right, deltas.back().right), {}};
  PathCategory dom = multicell_domain(out.sources, out.left.src);
  PathCategory gdom = multicell_domain(g.sources, g.left.src);
  std::vector<PathCategory> ddoms;
  for (const auto& d : deltas) ddoms.push_back(multicell_domain(d.sources, d.left.src));

  std::vector<std::size_t> image[2];
  for (Level lv : kLevels) {
    const FinSet& ds = lv.of(dom.cat);
    for (std::size_t d = 0; d < ds.size(); ++d) {
      std::vector<std::size_t> parts = parts_of(dom, lv, d);
      std::vector<std::size_t> inner;
      for (std::size_t j = 0; j < k; ++j) {
        std::size_t from = offset[j], to = offset[j + 1];
        if (from < to) {
          std::vector<std::size_t> chunk(parts.begin() + from, parts.begin() + to);
          inner.push_back(*apply_map(deltas[j], ddoms[j], lv, chunk));
          continue;
        }
        // Empty chunk: the boundary element shared with the neighbours.
        std::size_t x;
        if (r == 0) {
          x = d;
        } else if (from > 0) {
          x = lv(sources[from - 1].leg1, parts[from - 1]);
        } else {
          x = lv(sources[0].leg0, parts[0]);
        }
        inner.push_back(lv(deltas[j].map, x));
      }
      image[lv.mor].push_back(*apply_map(g, gdom, lv, inner));
    }
  }
  const FinCategory& c = g.target.carrier;
  out.map = FinFunctor{dom.cat, c, FinFn(dom.cat.objects(), c.objects(), std::move(image[0])),
                       FinFn(dom.cat.morphisms(), c.morphisms(), std::move(image[1]))};
  return out;
}

}  // namespace ddf
