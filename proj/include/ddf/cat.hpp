#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ddf/finset.hpp"
#include "ddf/report.hpp"

namespace ddf {

// result = second ∘ first
struct Composite {
  std::size_t first;
  std::size_t second;
  std::size_t result;
  friend bool operator==(const Composite&, const Composite&) = default;
};

// Finite category with an explicit composition table. The constructor only
// checks table shape; the category axioms are checked by check_category.
class FinCategory {
 public:
  FinCategory();
  FinCategory(FinSet objects, FinSet morphisms, FinFn dom, FinFn cod, FinFn id, std::vector<Composite> composites);

  static FinCategory discrete(const FinSet& objects, std::string_view id_prefix = "id_");

  const FinSet& objects() const { return data_->objects; }
  const FinSet& morphisms() const { return data_->morphisms; }
  const FinFn& dom() const { return data_->dom; }
  const FinFn& cod() const { return data_->cod; }
  const FinFn& id() const { return data_->id; }
  // Sorted by (first, second).
  const std::vector<Composite>& composites() const { return data_->composites; }
  std::span<const Composite> composites_from(std::size_t first) const;

  std::optional<std::size_t> then(std::size_t first, std::size_t second) const;
  // g ∘ f; throws CompositionMismatch when the table has no entry.
  std::size_t compose(std::size_t g, std::size_t f) const;
  const Id& compose(std::string_view g, std::string_view f) const;
  std::size_t identity(std::size_t object) const { return data_->id.at(object); }

  friend bool operator==(const FinCategory& a, const FinCategory& b);

 private:
  struct Data {
    FinSet objects;
    FinSet morphisms;
    FinFn dom;
    FinFn cod;
    FinFn id;
    std::vector<Composite> composites;
    std::vector<std::size_t> offsets;  // composites_from(f) = [offsets[f], offsets[f+1])
  };
  std::shared_ptr<const Data> data_;
};

// Name-level description of a FinCategory, as used by the file format.
struct CategoryPresentation {
  struct Morphism {
    Id name;
    Id dom;
    Id cod;
  };
  struct Entry {
    Id first;
    Id second;
    Id result;
  };
  std::vector<Id> objects;
  std::vector<Morphism> morphisms;
  std::vector<std::pair<Id, Id>> identities;  // object, morphism
  std::vector<Entry> composites;
};

// Throws Shape on unknown names or missing identities.
FinCategory make_category(const CategoryPresentation& p);
CategoryPresentation presentation_of(const FinCategory& c);

struct FinFunctor {
  FinCategory src;
  FinCategory tgt;
  FinFn on_objects;
  FinFn on_morphisms;
  friend bool operator==(const FinFunctor&, const FinFunctor&) = default;
};

Report check_category(const FinCategory& c);
Report check_functor(const FinFunctor& f);

FinCategory opposite_category(const FinCategory& c);
FinFunctor identity_functor(const FinCategory& c);
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);
bool is_isomorphism(const FinFunctor& f);
// Assumes f is a valid isomorphism.
FinFunctor inverse_functor(const FinFunctor& f);

// Unique lifts checked by counting candidates.
Report is_discrete_fibration(const FinFunctor& f);
// Unique lifts checked as: morphisms of src ≅ pullback of cod along f.
Report is_discrete_fibration_via_pullback(const FinFunctor& f);

// The morphism of f.src with codomain y lying over base morphism b.
std::size_t unique_lift(const FinFunctor& f, std::size_t y, std::size_t b);
const Id& unique_lift(const FinFunctor& f, std::string_view y, std::string_view b);

FinSet fiber_objects(const FinFunctor& f, std::string_view b);
FinCategory fiber_category(const FinFunctor& f, std::string_view b);

struct CategoryPullback {
  FinCategory cat;
  FinFunctor p0;
  FinFunctor p1;
};
CategoryPullback pullback_category(const FinFunctor& f, const FinFunctor& g);

// Left-nested iterated pullback of factors[0] ×_{X_0} factors[1] ×_{X_1} ...
// where right_legs[i]: factors[i] -> X_i and left_legs[i]: factors[i+1] -> X_i.
struct PathCategory {
  FinCategory cat;
  std::vector<FinFunctor> proj;
};
PathCategory path_category(std::span<const FinCategory> factors, std::span<const FinFunctor> right_legs,
                           std::span<const FinFunctor> left_legs);

}  // namespace ddf
