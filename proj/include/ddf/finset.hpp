#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ddf/report.hpp"

namespace ddf {

using Id = std::string;
using Table = std::map<Id, Id, std::less<>>;

// "(a,b)"; nested pullbacks nest these.
Id pair_id(std::string_view a, std::string_view b);
// Left-nested pairs of parts; a single part is returned unchanged.
Id path_id(std::span<const Id> parts);

// Ordered set of distinct identifiers. Cheap to copy; contents are immutable.
class FinSet {
 public:
  FinSet();
  FinSet(std::initializer_list<Id> elements);
  explicit FinSet(std::vector<Id> elements);

  std::size_t size() const { return data_->elements.size(); }
  bool empty() const { return data_->elements.empty(); }
  const Id& operator[](std::size_t i) const { return data_->elements[i]; }
  const std::vector<Id>& elements() const { return data_->elements; }
  auto begin() const { return data_->elements.begin(); }
  auto end() const { return data_->elements.end(); }

  std::optional<std::size_t> find(std::string_view x) const;
  std::size_t index_of(std::string_view x) const;  // throws InvalidElement
  bool contains(std::string_view x) const { return find(x).has_value(); }

  friend bool operator==(const FinSet& a, const FinSet& b);

 private:
  struct Data {
    std::vector<Id> elements;
    std::map<Id, std::size_t, std::less<>> index;
  };
  std::shared_ptr<const Data> data_;
};

// Total function between finite sets, stored as an index table.
class FinFn {
 public:
  FinFn() = default;
  FinFn(FinSet dom, FinSet cod, std::vector<std::size_t> image);

  static FinFn identity(const FinSet& a);
  static FinFn from_table(FinSet dom, FinSet cod, const Table& table);
  static FinFn tabulate(FinSet dom, FinSet cod, const std::function<Id(const Id&)>& f);
  static FinFn constant(FinSet dom, FinSet cod, std::string_view value);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  std::size_t at(std::size_t i) const { return image_[i]; }
  const Id& operator()(std::string_view x) const;
  const std::vector<std::size_t>& image() const { return image_; }
  Table table() const;

  // Copy with one value changed.
  FinFn with(std::string_view x, std::string_view y) const;
  FinFn restrict_to(const FinSet& sub, const FinSet& cod) const;

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }
  FinFn inverse() const;  // throws InvalidInput unless bijective

  friend bool operator==(const FinFn& a, const FinFn& b) = default;

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<std::size_t> image_;
};

FinFn compose_fn(const FinFn& g, const FinFn& f);

// First difference between two functions with equal domains, if any.
std::optional<Id> first_difference(const FinFn& a, const FinFn& b);

class Span {
 public:
  Span() = default;
  Span(FinFn leg0, FinFn leg1);

  const FinSet& left() const { return leg0_.cod(); }
  const FinSet& vertex() const { return leg0_.dom(); }
  const FinSet& right() const { return leg1_.cod(); }
  const FinFn& leg0() const { return leg0_; }
  const FinFn& leg1() const { return leg1_; }

  friend bool operator==(const Span& a, const Span& b) = default;

 private:
  FinFn leg0_;
  FinFn leg1_;
};

struct SpanMorphism {
  Span src;
  Span tgt;
  FinFn left;
  FinFn vertex;
  FinFn right;
  friend bool operator==(const SpanMorphism& a, const SpanMorphism& b) = default;
};

struct Pullback {
  FinSet vertex;
  FinFn p0;
  FinFn p1;
};

Pullback pullback(const FinFn& f, const FinFn& g);
Span compose_spans(const Span& s, const Span& t);
Span identity_span(const FinSet& a);
SpanMorphism identity_span_morphism(const Span& s);
SpanMorphism compose_span_morphisms(const SpanMorphism& g, const SpanMorphism& f);
Report check_span_morphism(const SpanMorphism& m);

// Mediating map T -> P of a cone (q0, q1) over the cospan of p.
// Throws InvalidInput if the cone does not commute.
FinFn mediating_map(const Pullback& p, const FinFn& q0, const FinFn& q1);

// vertex((r;s);t) -> vertex(r;(s;t)), ((x,y),z) |-> (x,(y,z)).
FinFn associator(const Span& r, const Span& s, const Span& t);
// vertex(id;s) -> vertex(s) and vertex(s;id) -> vertex(s).
FinFn left_unitor(const Span& s);
FinFn right_unitor(const Span& s);

// Composite of a nonempty path of spans, left-nested, with projections to
// each factor's vertex.
struct PathVertex {
  Span span;
  std::vector<FinFn> proj;
  std::vector<Id> parts(std::size_t v) const;
};
PathVertex path_vertex(std::span<const Span> spans);

}  // namespace ddf
