#include "ddf/report.hpp"

#include <algorithm>

#include "ddf/error.hpp"

namespace ddf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CompositionMismatch: return "CompositionMismatch";
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::InvalidObject: return "InvalidObject";
    case ErrorKind::NotAFibration: return "NotAFibration";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::InvalidFunctor: return "InvalidFunctor";
    case ErrorKind::InvalidTransformation: return "InvalidTransformation";
    case ErrorKind::NotADDF: return "NotADDF";
    case ErrorKind::NotOverBase: return "NotOverBase";
    case ErrorKind::InvalidModule: return "InvalidModule";
    case ErrorKind::InvalidMultimodulation: return "InvalidMultimodulation";
    case ErrorKind::InvalidProfunctor: return "InvalidProfunctor";
    case ErrorKind::InvalidMulticell: return "InvalidMulticell";
    case ErrorKind::FrameMismatch: return "FrameMismatch";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Shape: return "Shape";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnresolvedName: return "UnresolvedName";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void Report::add(std::string axiom, std::string witness) {
  violations_.push_back({std::move(axiom), std::move(witness), {}});
}

void Report::note(std::string text) { notes_.push_back(std::move(text)); }

void Report::merge(const Report& other, std::string_view context) {
  for (const auto& v : other.violations_) {
    Violation copy = v;
    if (!context.empty()) {
      copy.context = copy.context.empty() ? std::string(context)
                                          : std::string(context) + "/" + copy.context;
    }
    violations_.push_back(std::move(copy));
  }
  for (const auto& n : other.notes_) {
    notes_.push_back(context.empty() ? n : std::string(context) + ": " + n);
  }
}

bool Report::has(std::string_view axiom) const { return count(axiom) > 0; }

std::size_t Report::count(std::string_view axiom) const {
  return static_cast<std::size_t>(std::count_if(violations_.begin(), violations_.end(),
                                                [&](const Violation& v) { return v.axiom == axiom; }));
}

std::string Report::str() const {
  std::string out;
  for (const auto& v : violations_) {
    if (!v.context.empty()) out += "[" + v.context + "] ";
    out += v.axiom + ": " + v.witness + "\n";
  }
  return out;
}

std::string join_names(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

}  // namespace ddf
