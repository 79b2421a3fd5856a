#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ddf {

struct Violation {
  std::string axiom;    // dotted name, e.g. "lax.associativity"
  std::string witness;  // the offending elements
  std::string context;  // instance path, filled in by Report::merge
};

// Bounds for checks that enumerate paths of base proarrows.
struct CheckOptions {
  std::size_t max_path_len = 0;  // 0 means unbounded
  bool allows(std::size_t k) const { return max_path_len == 0 || k <= max_path_len; }
};

// "a, b, c", for witnesses.
std::string join_names(std::initializer_list<std::string_view> parts);

class Report {
 public:
  void add(std::string axiom, std::string witness);
  void note(std::string text);
  // Appends other's violations and notes, prefixing their context.
  void merge(const Report& other, std::string_view context = {});

  bool ok() const { return violations_.empty(); }
  bool has(std::string_view axiom) const;
  std::size_t count(std::string_view axiom) const;
  const std::vector<Violation>& violations() const { return violations_; }
  const std::vector<std::string>& notes() const { return notes_; }

  // One line per violation.
  std::string str() const;

 private:
  std::vector<Violation> violations_;
  std::vector<std::string> notes_;
};

}  // namespace ddf
