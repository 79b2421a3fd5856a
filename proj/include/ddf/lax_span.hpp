#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ddf/cat.hpp"
#include "ddf/double_cat.hpp"
#include "ddf/finset.hpp"
#include "ddf/report.hpp"

namespace ddf {

// Lax functor B^op -> Span, stored contravariantly on B and indexed like B.
//   on_arrow[f: A->B]         F(B) -> F(A)
//   on_cell[θ: m=>n]          span morphism F(n) -> F(m) with outer maps f*, g*
//   unit_lax[A]               F(A) -> vertex F(u_A)
//   comp_lax[i], i = (m,n)    vertex Fm ×_{F(tgt m)} vertex Fn -> vertex F(n⊗m)
// comp_lax domains are the pullbacks of (Fm.leg1, Fn.leg0) with "(s,t)" ids.
struct LaxSpanFunctor {
  DoubleCategory base;
  std::vector<FinSet> on_object;
  std::vector<FinFn> on_arrow;
  std::vector<Span> on_proarrow;
  std::vector<SpanMorphism> on_cell;
  std::vector<FinFn> unit_lax;
  std::vector<FinFn> comp_lax;

  const FinSet& vertex(std::size_t m) const { return on_proarrow[m].vertex(); }
  // φ_{n,m}(s,t) for s in Fm, t in Fn; throws CompositionMismatch.
  std::size_t compose(std::size_t m, std::size_t n, std::size_t s, std::size_t t) const;

  friend bool operator==(const LaxSpanFunctor&, const LaxSpanFunctor&) = default;
};

// τ: F -> G. pro_comp[m] is the vertex map of a span morphism Fm -> Gm with
// outer maps obj_comp[src m], obj_comp[tgt m].
struct LaxTransformation {
  LaxSpanFunctor src;
  LaxSpanFunctor tgt;
  std::vector<FinFn> obj_comp;
  std::vector<FinFn> pro_comp;
  friend bool operator==(const LaxTransformation&, const LaxTransformation&) = default;
};

// Element-level rules for the structure maps, by name.
using CellRule = std::function<Id(std::size_t cell, const Id& t)>;
using UnitRule = std::function<Id(std::size_t object, const Id& x)>;
using CompRule = std::function<Id(std::size_t m, std::size_t n, const Id& s, const Id& t)>;
// Fills on_cell, unit_lax and comp_lax given base, on_object, on_arrow and on_proarrow.
void fill_structure(LaxSpanFunctor& f, const CellRule& cell_rule, const UnitRule& unit_rule, const CompRule& comp_rule);

Report check_lax_functor(const LaxSpanFunctor& f, const CheckOptions& opts = {});
Report check_transformation(const LaxTransformation& t);

LaxTransformation identity_transformation(const LaxSpanFunctor& f);
// σ ∘ τ; throws BaseMismatch or CompositionMismatch.
LaxTransformation compose_transformations(const LaxTransformation& sigma, const LaxTransformation& tau);

// Every set a point.
LaxSpanFunctor terminal_lax(const DoubleCategory& b);
LaxTransformation to_terminal(const LaxSpanFunctor& f);

// Arrows into X, cells into u_X; transitions by precomposition and laxity by
// external composition of cells. Throws InvalidObject.
LaxSpanFunctor representable(const DoubleCategory& b, std::string_view x);
// Postcomposition with k: X -> Y.
LaxTransformation representable_map(const DoubleCategory& b, std::string_view k);

// Presheaf on the arrows of a base whose proarrows are all units: identity
// spans, u_f acting as f*, identity laxity. Throws Shape otherwise.
LaxSpanFunctor presheaf_lax(const DoubleCategory& b, std::vector<FinSet> sets, std::vector<FinFn> transitions);

// A category as a lax functor on terminal_double(): objects, the span
// dom <- morphisms -> cod, identities and composition. Throws Shape if the
// composition table is not total on composable pairs.
LaxSpanFunctor encode_category(const FinCategory& c);
// Inverse of encode_category. Throws Shape unless the base is terminal_double().
FinCategory decode_category(const LaxSpanFunctor& f);
// A functor between categories as a transformation of their encodings.
LaxTransformation encode_functor(const FinFunctor& g);
FinFunctor decode_functor(const LaxTransformation& t);

// p: D -> C as a lax functor on vertical_double(C): fibers of p over objects
// and over morphisms, with identities and composition of D as laxity.
LaxSpanFunctor encode_functor_over(const FinFunctor& p);
// Inverse of encode_functor_over. Throws Shape unless the base is vertical.
FinFunctor decode_functor_over(const LaxSpanFunctor& f, const FinCategory& c);

}  // namespace ddf
