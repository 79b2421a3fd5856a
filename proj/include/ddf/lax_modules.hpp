#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "ddf/finset.hpp"
#include "ddf/lax_span.hpp"
#include "ddf/report.hpp"

namespace ddf {

// Module M: F ⇸ G between lax functors on the same base, stored like F.
//   on_proarrow[m: A⇸B]    span FA <- Mm -> GB
//   on_cell[θ: m=>n]       span morphism Mn -> Mm with outer maps Ff*, Gg*
//   left_act[i], i = (m,n)  vertex Fm ×_{FB} vertex Mn -> vertex M(n⊗m)
//   right_act[i], i = (m,n) vertex Mm ×_{GB} vertex Gn -> vertex M(n⊗m)
// Action domains are pullbacks with "(a,s)" ids, indexed by composable pair.
struct Module {
  LaxSpanFunctor src;
  LaxSpanFunctor tgt;
  std::vector<Span> on_proarrow;
  std::vector<SpanMorphism> on_cell;
  std::vector<FinFn> left_act;
  std::vector<FinFn> right_act;

  const DoubleCategory& base() const { return src.base; }
  const FinSet& vertex(std::size_t m) const { return on_proarrow[m].vertex(); }
  // λ_{m,n}(a, s) for a in Fm, s in Mn; throws CompositionMismatch.
  std::size_t act_left(std::size_t m, std::size_t n, std::size_t a, std::size_t s) const;
  // ρ_{m,n}(s, b) for s in Mm, b in Gn; throws CompositionMismatch.
  std::size_t act_right(std::size_t m, std::size_t n, std::size_t s, std::size_t b) const;

  friend bool operator==(const Module&, const Module&) = default;
};

// Element-level rules for the module structure maps, by name.
using ModuleCellRule = std::function<Id(std::size_t cell, const Id& t)>;
using ActRule = std::function<Id(std::size_t m, std::size_t n, const Id& x, const Id& y)>;
// Fills on_cell, left_act and right_act given src, tgt and on_proarrow.
void fill_module(Module& mod, const ModuleCellRule& cell_rule, const ActRule& left_rule, const ActRule& right_rule);

// Throws BaseMismatch.
Report check_module(const Module& mod, const CheckOptions& opts = {});

// Mm = Fm, Mθ = Fθ, both actions the composition laxity of F.
Module unit_module(const LaxSpanFunctor& f);
// Mm = FA × GB with actions keeping the outer ends. Throws BaseMismatch.
Module product_module(const LaxSpanFunctor& f, const LaxSpanFunctor& g);

// μ: (M_1, ..., M_k) => N with left leg τ: F^0 -> G^0 and right leg
// σ: F^k -> G^1. components[path] maps the left-nested iterated pullback of
// the M_i m_i to N[path]. A nullary one (k = 0) is keyed by {object A} and
// maps F^0 A to N u_A.
struct Multimodulation {
  std::vector<Module> sources;
  Module target;
  LaxTransformation left;
  LaxTransformation right;
  std::map<std::vector<std::size_t>, FinFn> components;

  std::size_t arity() const { return sources.size(); }
  const DoubleCategory& base() const { return target.base(); }
  // Component at path applied to one element per source; throws CompositionMismatch.
  std::size_t apply(const std::vector<std::size_t>& path, std::span<const std::size_t> parts) const;

  friend bool operator==(const Multimodulation&, const Multimodulation&) = default;
};

// Domain of the component at a path (or {object} when nullary).
FinSet component_domain(const Multimodulation& mu, const std::vector<std::size_t>& path);
// Every key a multimodulation of this arity must have, in order.
std::vector<std::vector<std::size_t>> component_keys(const DoubleCategory& b, std::size_t arity);

// Throws FrameMismatch when the sources, target and legs do not fit together.
Report check_multimodulation(const Multimodulation& mu, const CheckOptions& opts = {});

// Tabulates components from an element-level rule on name tuples.
using ComponentRule = std::function<Id(const std::vector<std::size_t>& path, const std::vector<Id>& parts)>;
Multimodulation make_multimodulation(std::vector<Module> sources, Module target, LaxTransformation left,
                                     LaxTransformation right, const ComponentRule& rule);

Multimodulation identity_multimodulation(const Module& mod);
// Composition laxity of F as a cell (U_F, U_F) => U_F.
Multimodulation composition_multimodulation(const LaxSpanFunctor& f);
// Unit laxity of F as a nullary cell () => U_F.
Multimodulation unit_multimodulation(const LaxSpanFunctor& f);
// The unique cell into product_module(left.tgt, right.tgt).
// Throws FrameMismatch.
Multimodulation to_product(std::vector<Module> sources, LaxTransformation left, LaxTransformation right);

// μ ∘ (ν_1, ..., ν_k) by substituting the ν_j components into μ.
// Throws FrameMismatch.
Multimodulation compose_multimodulations(const Multimodulation& mu, const std::vector<Multimodulation>& nus);

}  // namespace ddf
