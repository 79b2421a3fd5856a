#pragma once

#include <random>
#include <string>
#include <vector>

#include "ddf/finset.hpp"

namespace gen {

inline ddf::FinSet set(std::mt19937& rng, const std::string& prefix, int max_size) {
  std::uniform_int_distribution<int> n(0, max_size);
  std::vector<ddf::Id> xs;
  int k = n(rng);
  for (int i = 0; i < k; ++i) xs.push_back(prefix + std::to_string(i));
  return ddf::FinSet(xs);
}

inline ddf::FinSet set_of(const std::string& prefix, int size) {
  std::vector<ddf::Id> xs;
  for (int i = 0; i < size; ++i) xs.push_back(prefix + std::to_string(i));
  return ddf::FinSet(xs);
}

// Requires cod nonempty when dom is nonempty.
inline ddf::FinFn fn(std::mt19937& rng, const ddf::FinSet& dom, const ddf::FinSet& cod) {
  std::vector<std::size_t> image(dom.size());
  if (!cod.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, cod.size() - 1);
    for (auto& i : image) i = pick(rng);
  }
  return ddf::FinFn(dom, cod, image);
}

inline ddf::Span span(std::mt19937& rng, const ddf::FinSet& left, const ddf::FinSet& right, const std::string& prefix,
                      int max_vertex) {
  ddf::FinSet v = (left.empty() || right.empty()) ? ddf::FinSet() : set(rng, prefix, max_vertex);
  return ddf::Span(fn(rng, v, left), fn(rng, v, right));
}

}  // namespace gen
