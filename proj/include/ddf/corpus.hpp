#pragma once

#include <cstdint>
#include <vector>

#include "ddf/cat.hpp"
#include "ddf/double_cat.hpp"
#include "ddf/elements.hpp"
#include "ddf/equivalence.hpp"
#include "ddf/lax_span.hpp"

namespace ddf::corpus {

// Small categories.
FinCategory one();                  // one object, one morphism
FinCategory c2();                   // X -f-> Y
FinCategory c4();                   // X -f-> Y with e: X -> X, e∘e = e, f∘e = f
FinCategory discrete2();            // two objects, identities only
FinCategory z2();                   // one object, a∘a = 1
FinCategory parallel_pair();        // f, g: X -> Y
FinCategory chain3();               // X -f-> Y -g-> Z
FinCategory skew();                 // X, Y with e: X -> X idempotent and f, g: X -> Y, f∘e = g∘e = g
FinCategory non_associative();      // total but non-associative table on one object
std::vector<FinCategory> categories();  // the valid ones above

// Bases.
DoubleCategory horizontal(const FinCategory& c);  // transpose of vertical_double(c)
std::vector<DoubleCategory> bases();

// Functor D -> C2 used as an object of Cat/C2. D has fibers {x1, x2} over X
// and {y} over Y, with f1: x1 -> y and f2: x2 -> y over f.
FinFunctor over_c2();

// Seeded random presheaf on horizontal(c2()) with at most 3 elements per set.
LaxSpanFunctor random_presheaf(std::uint32_t seed);

// Valid lax functors: terminal and representables on every base, encoded
// categories, over_c2 and the first few random presheaves.
std::vector<LaxSpanFunctor> lax_functors();

// Identities of every base, elements of lax_functors() and walking_proarrow -> terminal.
std::vector<DDFCandidate> ddfs();

// Instances over b for verify_equivalence: the five largest corpus functors
// and the terminal one, maps to the terminal and representable maps, unit
// and product modules, identity, binary composition, nullary unit and product
// cells, and their images under the elements constructions.
EquivalenceCorpus equivalence_corpus(const DoubleCategory& b);

}  // namespace ddf::corpus
