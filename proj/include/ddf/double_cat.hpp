#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ddf/cat.hpp"
#include "ddf/finset.hpp"
#include "ddf/report.hpp"

namespace ddf {

// Strict double category. Pairs in `composable()` are in path order: the
// object (m,n) has tgt m = src n and ext_comp sends it to n⊗m.
struct DoubleCategory {
  FinCategory d0;  // objects and arrows
  FinCategory d1;  // proarrows and cells
  FinFunctor src;
  FinFunctor tgt;
  FinFunctor unit;
  FinFunctor ext_comp;  // composable() -> d1

  const FinSet& objects() const { return d0.objects(); }
  const FinSet& arrows() const { return d0.morphisms(); }
  const FinSet& proarrows() const { return d1.objects(); }
  const FinSet& cells() const { return d1.morphisms(); }
  const FinCategory& composable() const { return ext_comp.src; }

  std::size_t pro_src(std::size_t m) const { return src.on_objects.at(m); }
  std::size_t pro_tgt(std::size_t m) const { return tgt.on_objects.at(m); }
  std::size_t cell_src(std::size_t c) const { return src.on_morphisms.at(c); }
  std::size_t cell_tgt(std::size_t c) const { return tgt.on_morphisms.at(c); }
  std::size_t cell_dom(std::size_t c) const { return d1.dom().at(c); }
  std::size_t cell_cod(std::size_t c) const { return d1.cod().at(c); }
  std::size_t unit_pro(std::size_t a) const { return unit.on_objects.at(a); }
  std::size_t unit_cell(std::size_t f) const { return unit.on_morphisms.at(f); }

  // Index of (m,n) among composable proarrow pairs, if tgt m = src n.
  std::optional<std::size_t> pair_index(std::size_t m, std::size_t n) const;
  std::optional<std::size_t> cell_pair_index(std::size_t a, std::size_t b) const;
  // n⊗m and b⊗a; throw CompositionMismatch when not composable.
  std::size_t ext(std::size_t m, std::size_t n) const;
  std::size_t ext_cells(std::size_t a, std::size_t b) const;

  // All composable paths of exactly k proarrows (k >= 1) or cells.
  std::vector<std::vector<std::size_t>> proarrow_paths(std::size_t k) const;
  std::vector<std::vector<std::size_t>> cell_paths(std::size_t k) const;
  std::size_t path_composite(std::span<const std::size_t> path) const;
  std::size_t cell_path_composite(std::span<const std::size_t> path) const;

  friend bool operator==(const DoubleCategory&, const DoubleCategory&) = default;
};

// Supplies the external composite of a composable pair, by name.
using ExtRule = std::function<std::optional<Id>(const Id& first, const Id& second)>;

// Builds the composable-pair category and ext_comp from the rules.
// Throws Shape when a rule has no value for a composable pair.
DoubleCategory make_double(FinCategory d0, FinCategory d1, FinFunctor src, FinFunctor tgt, FinFunctor unit,
                           const ExtRule& on_proarrows, const ExtRule& on_cells);

// Generators plus non-trivial composites. Identities, units, identity
// cells and unit cells are added and named id_A, u_A, 1_m, u_f; the
// identity cell of u_A is the unit cell of id_A and is named 1_u_A.
struct DoublePresentation {
  struct Arrow {
    Id name, dom, cod;
  };
  struct Proarrow {
    Id name, src, tgt;
  };
  struct Cell {
    Id name, dom, cod, src, tgt;
  };
  struct Entry {
    Id first, second, result;
  };
  std::vector<Id> objects;
  std::vector<Arrow> arrows;
  std::vector<Entry> arrow_composites;
  std::vector<Proarrow> proarrows;
  std::vector<Cell> cells;
  std::vector<Entry> cell_composites;
  std::vector<Entry> proarrow_ext;  // (m, n, n⊗m)
  std::vector<Entry> cell_ext;
};
DoubleCategory build_double(const DoublePresentation& p);

Report check_double_category(const DoubleCategory& b);
// Element-wise interchange law; implied by ext_comp being a functor.
Report check_interchange(const DoubleCategory& b);

DoubleCategory terminal_double();
DoubleCategory vertical_double(const FinCategory& c);
DoubleCategory walking_proarrow();
// Two proarrows m: A⇸B, n: C⇸D, arrows f: A→C, g: B→D and one cell θ: m⇒n.
DoubleCategory walking_cell();
DoubleCategory transpose(const DoubleCategory& b);
DoubleCategory opposite(const DoubleCategory& b);

struct DoubleFunctor {
  DoubleCategory src;
  DoubleCategory tgt;
  FinFunctor f0;
  FinFunctor f1;
  friend bool operator==(const DoubleFunctor&, const DoubleFunctor&) = default;
};

Report check_double_functor(const DoubleFunctor& p);
DoubleFunctor identity_double_functor(const DoubleCategory& b);
DoubleFunctor compose_double_functors(const DoubleFunctor& g, const DoubleFunctor& f);
DoubleFunctor transpose_functor(const DoubleFunctor& p);
bool is_isomorphism(const DoubleFunctor& p);
// Sends everything to the single object, arrow, proarrow and cell.
DoubleFunctor to_terminal(const DoubleCategory& b, const DoubleCategory& terminal);

}  // namespace ddf
