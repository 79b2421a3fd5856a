#pragma once

#include <vector>

#include "ddf/elements.hpp"
#include "ddf/fiber_inverse.hpp"
#include "ddf/lax_modules.hpp"
#include "ddf/prof_dfib.hpp"
#include "ddf/report.hpp"

namespace ddf {

// Elements of a module M: F ⇸ G. Carrier objects (m,s) for s in Mm and
// morphisms (θ,t) for t in M(cod θ), laid out like el_functor; legs read off
// the span legs of M, actions off λ and ρ. Throws InvalidModule.
InternalProfunctor el_module(const Module& mod);
// ((m_1,s_1), ..., (m_k,s_k)) |-> ([m], μ_m(s)); nullary (A,x) |-> (u_A, μ_A(x)).
// Throws InvalidMultimodulation.
ProfMulticell el_multimodulation(const Multimodulation& mu);

// Fibers of the carrier over each proarrow, cells acting by unique lifts and
// actions by restriction. Throws InvalidProfunctor.
Module f_of_profunctor(const InternalProfunctor& m);
// Components are the object part of the mediating functor. Throws InvalidMulticell.
Multimodulation f_of_multicell(const ProfMulticell& g);

// H -> f_of_ddf(el_functor(H)), x |-> (A,x) and s |-> (m,s). Throws InvalidInput.
LaxTransformation eta(const LaxSpanFunctor& h);
// 1-ary cell M => f_of_profunctor(el_module(M)), s |-> (m,s). Throws InvalidInput.
Multimodulation eta_module(const Module& mod);

// el_functor(f_of_ddf(P)) -> E, dropping the index on objects and proarrows
// and taking unique lifts on arrows and cells. Throws InvalidInput.
DoubleFunctor epsilon(const DDFCandidate& p);
// epsilon(P) as a morphism of fibrations over the base.
DDFMorphism epsilon_morphism(const DDFCandidate& p);
// 1-ary cell el_module(f_of_profunctor(M)) => M. Throws InvalidInput.
ProfMulticell epsilon_module(const InternalProfunctor& m);

// Inverses of invertible data. Throw InvalidInput when a component is not a bijection.
LaxTransformation inverse_transformation(const LaxTransformation& t);
DDFMorphism inverse_ddf_morphism(const DDFMorphism& h);
// 1-ary cells only.
Multimodulation inverse_multimodulation(const Multimodulation& mu);
ProfMulticell inverse_prof_multicell(const ProfMulticell& g);

// Instances to certify; entries over other bases are skipped.
struct EquivalenceCorpus {
  std::vector<LaxSpanFunctor> functors;
  std::vector<LaxTransformation> transformations;
  std::vector<DDFCandidate> ddfs;
  std::vector<DDFMorphism> ddf_morphisms;
  std::vector<Module> modules;
  std::vector<Multimodulation> multimodulations;
  std::vector<InternalProfunctor> profunctors;
  std::vector<ProfMulticell> multicells;
};

// Validity of every construction in both directions, invertibility of η and ε,
// functoriality, unit preservation, and every naturality equation, as exact
// table equalities. Violations carry the instance as context.
Report verify_equivalence(const DoubleCategory& b, const EquivalenceCorpus& corpus);

}  // namespace ddf
