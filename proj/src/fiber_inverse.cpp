#include "ddf/fiber_inverse.hpp"

#include "ddf/error.hpp"

namespace ddf {

namespace {

std::vector<FinSet> fibers(const FinFn& over, const FinSet& base) {
  std::vector<std::vector<Id>> out(base.size());
  for (std::size_t x = 0; x < over.dom().size(); ++x) out[over.at(x)].push_back(over.dom()[x]);
  std::vector<FinSet> sets;
  for (auto& o : out) sets.emplace_back(std::move(o));
  return sets;
}

void require_ddf(const DDFCandidate& p) {
  Report r = check_double_functor(p.proj);
  if (r.ok()) r.merge(is_ddf(p));
  if (!r.ok()) throw Error(ErrorKind::NotADDF, "not a discrete double fibration: " + r.str());
}

}  // namespace

LaxSpanFunctor f_of_ddf(const DDFCandidate& p) {
  require_ddf(p);
  const DoubleCategory& e = p.total();
  const DoubleCategory& b = p.base();
  const FinFunctor& p0 = p.proj.f0;
  const FinFunctor& p1 = p.proj.f1;
  LaxSpanFunctor f{b, fibers(p0.on_objects, b.objects()), {}, {}, {}, {}, {}};
  std::vector<FinSet> over_pro = fibers(p1.on_objects, b.proarrows());

  for (std::size_t g = 0; g < b.arrows().size(); ++g) {
    const FinSet& to = f.on_object[b.d0.cod().at(g)];
    f.on_arrow.push_back(FinFn::tabulate(to, f.on_object[b.d0.dom().at(g)], [&](const Id& y) {
      return e.objects()[e.d0.dom().at(unique_lift(p0, e.objects().index_of(y), g))];
    }));
  }
  for (std::size_t m = 0; m < b.proarrows().size(); ++m) {
    const FinSet& v = over_pro[m];
    auto leg = [&](const FinFunctor& side, std::size_t end) {
      return FinFn::tabulate(v, f.on_object[end], [&](const Id& s) {
        return e.objects()[side.on_objects.at(e.proarrows().index_of(s))];
      });
    };
    f.on_proarrow.emplace_back(leg(e.src, b.pro_src(m)), leg(e.tgt, b.pro_tgt(m)));
  }
  fill_structure(
      f,
      [&](std::size_t c, const Id& t) { return e.proarrows()[e.cell_dom(unique_lift(p1, e.proarrows().index_of(t), c))]; },
      [&](std::size_t, const Id& x) { return e.proarrows()[e.unit_pro(e.objects().index_of(x))]; },
      [&](std::size_t, std::size_t, const Id& s, const Id& t) {
        return e.proarrows()[e.ext(e.proarrows().index_of(s), e.proarrows().index_of(t))];
      });
  return f;
}

LaxTransformation f_of_morphism(const DDFMorphism& h) {
  Report r = check_ddf_morphism(h);
  if (!r.ok()) throw Error(ErrorKind::NotOverBase, "not a morphism over the base: " + r.str());
  LaxSpanFunctor fp = f_of_ddf(h.src), fq = f_of_ddf(h.tgt);
  LaxTransformation t{fp, fq, {}, {}};
  for (std::size_t a = 0; a < fp.on_object.size(); ++a) {
    t.obj_comp.push_back(h.map.f0.on_objects.restrict_to(fp.on_object[a], fq.on_object[a]));
  }
  for (std::size_t m = 0; m < fp.on_proarrow.size(); ++m) {
    t.pro_comp.push_back(h.map.f1.on_objects.restrict_to(fp.vertex(m), fq.vertex(m)));
  }
  return t;
}

}  // namespace ddf
