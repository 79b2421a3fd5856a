#pragma once

#include <map>
#include <string>
#include <string_view>

#include "ddf/cat.hpp"
#include "ddf/double_cat.hpp"
#include "ddf/elements.hpp"
#include "ddf/equivalence.hpp"
#include "ddf/finset.hpp"
#include "ddf/lax_modules.hpp"
#include "ddf/lax_span.hpp"
#include "ddf/prof_dfib.hpp"
#include "ddf/report.hpp"

namespace ddf {

// Named entities of one interchange file. Sections are keyed by name, so the
// canonical order of entries is name order; inside an entry everything
// follows the order of the underlying sets.
struct Document {
  std::map<Id, FinSet> sets;
  std::map<Id, FinFn> functions;
  std::map<Id, FinCategory> categories;
  std::map<Id, DoubleCategory> double_categories;
  std::map<Id, LaxSpanFunctor> lax_functors;
  std::map<Id, LaxTransformation> transformations;
  std::map<Id, DDFCandidate> ddfs;
  std::map<Id, DDFMorphism> ddf_morphisms;
  std::map<Id, Module> modules;
  std::map<Id, Multimodulation> multimodulations;
  std::map<Id, InternalProfunctor> profunctors;
  std::map<Id, ProfMulticell> multicells;

  bool empty() const;
  friend bool operator==(const Document&, const Document&) = default;
};

// Throws ParseError with a line/column or a /section/name/field location,
// and UnresolvedName naming the missing entity. Blank text is the empty document.
Document parse_document(std::string_view text);
// Canonical text. Throws UnresolvedName when a referenced entity is not in the document.
std::string emit_document(const Document& doc);

// Adds an entity under name together with everything it refers to. An equal
// entity already present is reused and its name returned; dependencies get
// the name plus a suffix such as ".base". Throws InvalidInput when the name
// is taken by a different entity.
Id add_set(Document& doc, const Id& name, const FinSet& s);
Id add_function(Document& doc, const Id& name, const FinFn& f);
Id add_category(Document& doc, const Id& name, const FinCategory& c);
Id add_double_category(Document& doc, const Id& name, const DoubleCategory& b);
Id add_lax_functor(Document& doc, const Id& name, const LaxSpanFunctor& f);
Id add_transformation(Document& doc, const Id& name, const LaxTransformation& t);
Id add_ddf(Document& doc, const Id& name, const DDFCandidate& p);
Id add_ddf_morphism(Document& doc, const Id& name, const DDFMorphism& h);
Id add_module(Document& doc, const Id& name, const Module& m);
Id add_multimodulation(Document& doc, const Id& name, const Multimodulation& mu);
Id add_profunctor(Document& doc, const Id& name, const InternalProfunctor& m);
Id add_multicell(Document& doc, const Id& name, const ProfMulticell& g);

// The instances as a document, base first under base_name, then F0.., T0..,
// P0.., H0.., M0.., mu0.., N0.., g0.. by kind.
Document document_of(const DoubleCategory& b, const Id& base_name, const EquivalenceCorpus& c);
// Every entity of the document, in name order.
EquivalenceCorpus corpus_of(const Document& doc);

// Every applicable checker on every entity, with "section/name" as context.
Report validate_document(const Document& doc, const CheckOptions& opts = {});

}  // namespace ddf
