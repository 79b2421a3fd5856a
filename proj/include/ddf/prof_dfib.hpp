#pragma once

#include <cstddef>
#include <vector>

#include "ddf/cat.hpp"
#include "ddf/elements.hpp"
#include "ddf/report.hpp"

namespace ddf {

// Internal profunctor M: P ⇸ Q between fibrations P: E -> B and Q: G -> B.
//   over        carrier -> B.d1, a discrete fibration
//   leg0, leg1  carrier -> E.d0 and carrier -> G.d0
//   left_act    pullback_category(E.tgt, leg0) -> carrier, (a,s) |-> a·s
//   right_act   pullback_category(leg1, G.src) -> carrier, (s,b) |-> s·b
struct InternalProfunctor {
  DDFCandidate src;
  DDFCandidate tgt;
  FinCategory carrier;
  FinFunctor over;
  FinFunctor leg0;
  FinFunctor leg1;
  FinFunctor left_act;
  FinFunctor right_act;

  const DoubleCategory& base() const { return src.base(); }
  friend bool operator==(const InternalProfunctor&, const InternalProfunctor&) = default;
};

// Throws BaseMismatch.
Report check_internal_profunctor(const InternalProfunctor& m);

// Carrier E.d1 over P.f1, legs src and tgt, both actions external composition.
// Throws NotADDF.
InternalProfunctor unit_profunctor(const DDFCandidate& p);

// γ: (M_1, ..., M_k) => N over DDF morphisms left: P_0 -> N.src and
// right: P_k -> N.tgt. map goes from the left-nested iterated pullback of the
// carriers (path_category) to N's carrier; a nullary cell maps E.d0 instead.
struct ProfMulticell {
  std::vector<InternalProfunctor> sources;
  InternalProfunctor target;
  DDFMorphism left;
  DDFMorphism right;
  FinFunctor map;

  std::size_t arity() const { return sources.size(); }
  const DoubleCategory& base() const { return target.base(); }
  friend bool operator==(const ProfMulticell&, const ProfMulticell&) = default;
};

// The iterated pullback of the carriers, with its projections.
PathCategory multicell_domain(const std::vector<InternalProfunctor>& sources, const DDFCandidate& nullary_src);

// Throws FrameMismatch.
Report check_prof_multicell(const ProfMulticell& g);

ProfMulticell identity_prof_multicell(const InternalProfunctor& m);
// External composition of E as a cell (U_P, U_P) => U_P.
ProfMulticell composition_prof_multicell(const DDFCandidate& p);
// Units of E as a nullary cell () => U_P.
ProfMulticell unit_prof_multicell(const DDFCandidate& p);

// γ ∘ (δ_1, ..., δ_k) by substitution. Throws FrameMismatch.
ProfMulticell compose_prof_multicells(const ProfMulticell& g, const std::vector<ProfMulticell>& deltas);

}  // namespace ddf
