#include "ddf/finset.hpp"

#include <algorithm>

#include "ddf/error.hpp"

namespace ddf {

Id pair_id(std::string_view a, std::string_view b) {
  Id out;
  out.reserve(a.size() + b.size() + 3);
  out += '(';
  out += a;
  out += ',';
  out += b;
  out += ')';
  return out;
}

Id path_id(std::span<const Id> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidInput, "empty path");
  Id out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = pair_id(out, parts[i]);
  return out;
}

FinSet::FinSet() : FinSet(std::vector<Id>{}) {}

FinSet::FinSet(std::initializer_list<Id> elements) : FinSet(std::vector<Id>(elements)) {}

FinSet::FinSet(std::vector<Id> elements) {
  auto data = std::make_shared<Data>();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!data->index.emplace(elements[i], i).second) {
      throw Error(ErrorKind::DuplicateElement, "duplicate element " + elements[i]);
    }
  }
  data->elements = std::move(elements);
  data_ = std::move(data);
}

std::optional<std::size_t> FinSet::find(std::string_view x) const {
  auto it = data_->index.find(x);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FinSet::index_of(std::string_view x) const {
  auto i = find(x);
  if (!i) throw Error(ErrorKind::InvalidElement, "no element " + std::string(x));
  return *i;
}

bool operator==(const FinSet& a, const FinSet& b) {
  return a.data_ == b.data_ || a.data_->elements == b.data_->elements;
}

FinFn::FinFn(FinSet dom, FinSet cod, std::vector<std::size_t> image)
    : dom_(std::move(dom)), cod_(std::move(cod)), image_(std::move(image)) {
  if (image_.size() != dom_.size()) throw Error(ErrorKind::Shape, "function table size differs from domain");
  for (auto i : image_) {
    if (i >= cod_.size()) throw Error(ErrorKind::Shape, "function value outside codomain");
  }
}

FinFn FinFn::identity(const FinSet& a) {
  std::vector<std::size_t> image(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) image[i] = i;
  return FinFn(a, a, std::move(image));
}

FinFn FinFn::from_table(FinSet dom, FinSet cod, const Table& table) {
  std::vector<std::size_t> image(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    auto it = table.find(dom[i]);
    if (it == table.end()) throw Error(ErrorKind::Shape, "function undefined at " + dom[i]);
    auto j = cod.find(it->second);
    if (!j) throw Error(ErrorKind::Shape, "value " + it->second + " of " + dom[i] + " outside codomain");
    image[i] = *j;
  }
  if (table.size() != dom.size()) {
    for (const auto& [k, v] : table) {
      if (!dom.contains(k)) throw Error(ErrorKind::Shape, "function defined outside domain at " + k);
    }
  }
  return FinFn(std::move(dom), std::move(cod), std::move(image));
}

FinFn FinFn::tabulate(FinSet dom, FinSet cod, const std::function<Id(const Id&)>& f) {
  std::vector<std::size_t> image(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    Id y = f(dom[i]);
    auto j = cod.find(y);
    if (!j) throw Error(ErrorKind::Shape, "value " + y + " of " + dom[i] + " outside codomain");
    image[i] = *j;
  }
  return FinFn(std::move(dom), std::move(cod), std::move(image));
}

FinFn FinFn::constant(FinSet dom, FinSet cod, std::string_view value) {
  std::size_t j = cod.index_of(value);
  std::vector<std::size_t> image(dom.size(), j);
  return FinFn(std::move(dom), std::move(cod), std::move(image));
}

const Id& FinFn::operator()(std::string_view x) const { return cod_[image_[dom_.index_of(x)]]; }

Table FinFn::table() const {
  Table t;
  for (std::size_t i = 0; i < dom_.size(); ++i) t.emplace(dom_[i], cod_[image_[i]]);
  return t;
}

FinFn FinFn::with(std::string_view x, std::string_view y) const {
  FinFn copy = *this;
  copy.image_[dom_.index_of(x)] = cod_.index_of(y);
  return copy;
}

FinFn FinFn::restrict_to(const FinSet& sub, const FinSet& cod) const {
  return tabulate(sub, cod, [&](const Id& x) { return (*this)(x); });
}

bool FinFn::is_injective() const {
  std::vector<bool> seen(cod_.size(), false);
  for (auto j : image_) {
    if (seen[j]) return false;
    seen[j] = true;
  }
  return true;
}

bool FinFn::is_surjective() const {
  std::vector<bool> seen(cod_.size(), false);
  for (auto j : image_) seen[j] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

FinFn FinFn::inverse() const {
  if (!is_bijective()) throw Error(ErrorKind::InvalidInput, "inverse of a non-bijection");
  std::vector<std::size_t> image(cod_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) image[image_[i]] = i;
  return FinFn(cod_, dom_, std::move(image));
}

FinFn compose_fn(const FinFn& g, const FinFn& f) {
  if (!(f.cod() == g.dom())) throw Error(ErrorKind::CompositionMismatch, "codomain of f is not the domain of g");
  std::vector<std::size_t> image(f.dom().size());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = g.at(f.at(i));
  return FinFn(f.dom(), g.cod(), std::move(image));
}

std::optional<Id> first_difference(const FinFn& a, const FinFn& b) {
  for (std::size_t i = 0; i < a.dom().size() && i < b.dom().size(); ++i) {
    if (a.cod()[a.at(i)] != b.cod()[b.at(i)]) return a.dom()[i];
  }
  return std::nullopt;
}

Span::Span(FinFn leg0, FinFn leg1) : leg0_(std::move(leg0)), leg1_(std::move(leg1)) {
  if (!(leg0_.dom() == leg1_.dom())) throw Error(ErrorKind::Shape, "span legs have different domains");
}

Pullback pullback(const FinFn& f, const FinFn& g) {
  if (!(f.cod() == g.cod())) throw Error(ErrorKind::CompositionMismatch, "pullback of functions with different codomains");
  // Bucket g by value so the filter stays linear in the output.
  std::vector<std::vector<std::size_t>> over(g.cod().size());
  for (std::size_t j = 0; j < g.dom().size(); ++j) over[g.at(j)].push_back(j);
  std::vector<Id> elements;
  std::vector<std::size_t> i0, i1;
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    for (auto j : over[f.at(i)]) {
      elements.push_back(pair_id(f.dom()[i], g.dom()[j]));
      i0.push_back(i);
      i1.push_back(j);
    }
  }
  FinSet p(std::move(elements));
  return {p, FinFn(p, f.dom(), std::move(i0)), FinFn(p, g.dom(), std::move(i1))};
}

Span compose_spans(const Span& s, const Span& t) {
  if (!(s.right() == t.left())) throw Error(ErrorKind::CompositionMismatch, "spans are not composable");
  Pullback p = pullback(s.leg1(), t.leg0());
  return Span(compose_fn(s.leg0(), p.p0), compose_fn(t.leg1(), p.p1));
}

Span identity_span(const FinSet& a) { return Span(FinFn::identity(a), FinFn::identity(a)); }

SpanMorphism identity_span_morphism(const Span& s) {
  return {s, s, FinFn::identity(s.left()), FinFn::identity(s.vertex()), FinFn::identity(s.right())};
}

SpanMorphism compose_span_morphisms(const SpanMorphism& g, const SpanMorphism& f) {
  return {f.src, g.tgt, compose_fn(g.left, f.left), compose_fn(g.vertex, f.vertex), compose_fn(g.right, f.right)};
}

Report check_span_morphism(const SpanMorphism& m) {
  Report r;
  auto shape = [&](bool ok, const char* what) {
    if (!ok) r.add("span_morphism.shape", what);
    return ok;
  };
  bool ok = shape(m.vertex.dom() == m.src.vertex() && m.vertex.cod() == m.tgt.vertex(), "vertex map boundary") &&
            shape(m.left.dom() == m.src.left() && m.left.cod() == m.tgt.left(), "left map boundary") &&
            shape(m.right.dom() == m.src.right() && m.right.cod() == m.tgt.right(), "right map boundary");
  if (!ok) return r;
  const FinSet& v = m.src.vertex();
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t j = m.vertex.at(i);
    if (m.tgt.leg0().at(j) != m.left.at(m.src.leg0().at(i))) r.add("span_morphism.square", "left square at " + v[i]);
    if (m.tgt.leg1().at(j) != m.right.at(m.src.leg1().at(i))) r.add("span_morphism.square", "right square at " + v[i]);
  }
  return r;
}

FinFn mediating_map(const Pullback& p, const FinFn& q0, const FinFn& q1) {
  if (!(q0.dom() == q1.dom()) || !(q0.cod() == p.p0.cod()) || !(q1.cod() == p.p1.cod())) {
    throw Error(ErrorKind::InvalidInput, "cone does not match the pullback");
  }
  return FinFn::tabulate(q0.dom(), p.vertex, [&](const Id& t) {
    Id id = pair_id(q0(t), q1(t));
    if (!p.vertex.contains(id)) throw Error(ErrorKind::InvalidInput, "cone does not commute at " + t);
    return id;
  });
}

FinFn associator(const Span& r, const Span& s, const Span& t) {
  Pullback rs = pullback(r.leg1(), s.leg0());
  Span left_inner(compose_fn(r.leg0(), rs.p0), compose_fn(s.leg1(), rs.p1));
  Pullback outer_left = pullback(left_inner.leg1(), t.leg0());
  Pullback st = pullback(s.leg1(), t.leg0());
  Span right_inner(compose_fn(s.leg0(), st.p0), compose_fn(t.leg1(), st.p1));
  Pullback outer_right = pullback(r.leg1(), right_inner.leg0());
  return FinFn::tabulate(outer_left.vertex, outer_right.vertex, [&](const Id& v) {
    const Id& xy = outer_left.p0(v);
    const Id& z = outer_left.p1(v);
    return pair_id(rs.p0(xy), pair_id(rs.p1(xy), z));
  });
}

FinFn left_unitor(const Span& s) {
  Pullback p = pullback(FinFn::identity(s.left()), s.leg0());
  return p.p1;
}

FinFn right_unitor(const Span& s) {
  Pullback p = pullback(s.leg1(), FinFn::identity(s.right()));
  return p.p0;
}

std::vector<Id> PathVertex::parts(std::size_t v) const {
  std::vector<Id> out;
  out.reserve(proj.size());
  for (const auto& p : proj) out.push_back(p.cod()[p.at(v)]);
  return out;
}

PathVertex path_vertex(std::span<const Span> spans) {
  if (spans.empty()) throw Error(ErrorKind::InvalidInput, "empty path of spans");
  PathVertex out{spans[0], {FinFn::identity(spans[0].vertex())}};
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (!(out.span.right() == spans[i].left())) throw Error(ErrorKind::CompositionMismatch, "spans are not composable");
    Pullback p = pullback(out.span.leg1(), spans[i].leg0());
    std::vector<FinFn> proj;
    for (const auto& q : out.proj) proj.push_back(compose_fn(q, p.p0));
    proj.push_back(p.p1);
    out.span = Span(compose_fn(out.span.leg0(), p.p0), compose_fn(spans[i].leg1(), p.p1));
    out.proj = std::move(proj);
  }
  return out;
}

}  // namespace ddf
