#pragma once

#include "ddf/elements.hpp"
#include "ddf/lax_span.hpp"

namespace ddf {

// Fibers of P as a lax functor on its base: E_B over objects, E_A <- E_m -> E_B
// over proarrows, transitions and cell actions by unique lifts, unit laxity
// x |-> u_x and composition laxity (s,t) |-> t⊗s. Fibers keep E's order.
// Throws NotADDF.
LaxSpanFunctor f_of_ddf(const DDFCandidate& p);

// Restriction of H to the fibers. Throws NotADDF or NotOverBase.
LaxTransformation f_of_morphism(const DDFMorphism& h);

}  // namespace ddf
