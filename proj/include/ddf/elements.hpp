#pragma once

#include "ddf/double_cat.hpp"
#include "ddf/lax_span.hpp"
#include "ddf/report.hpp"

namespace ddf {

// A double functor P: E -> B, to be tested for being a discrete double fibration.
struct DDFCandidate {
  DoubleFunctor proj;
  const DoubleCategory& total() const { return proj.src; }
  const DoubleCategory& base() const { return proj.tgt; }
  friend bool operator==(const DDFCandidate&, const DDFCandidate&) = default;
};

// A double functor between totals commuting with the projections.
struct DDFMorphism {
  DDFCandidate src;
  DDFCandidate tgt;
  DoubleFunctor map;
  friend bool operator==(const DDFMorphism&, const DDFMorphism&) = default;
};

// Double category of elements with its projection. Ids:
//   objects (B,x), arrows (f,y) with y over cod f, proarrows (m,s),
//   cells (θ,t) with t over cod θ.
// Throws InvalidFunctor unless check_lax_functor passes.
DDFCandidate el_functor(const LaxSpanFunctor& f);
// (B,x) |-> (B,τx) and so on. Throws InvalidTransformation.
DDFMorphism el_transformation(const LaxTransformation& t);

Report is_ddf(const DDFCandidate& p);
// Compares the transpose of E's target functor with the pullback of B's along P.
Report is_ddf_via_transpose(const DDFCandidate& p);

Report check_ddf_morphism(const DDFMorphism& h);
DDFMorphism identity_ddf_morphism(const DDFCandidate& p);
// g ∘ h; throws CompositionMismatch.
DDFMorphism compose_ddf_morphisms(const DDFMorphism& g, const DDFMorphism& h);

// The identity of B as a candidate over B.
DDFCandidate identity_ddf(const DoubleCategory& b);

}  // namespace ddf
