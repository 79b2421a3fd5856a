#include <algorithm>
#include <fstream>
#include <iterator>
#include <string>

#include "ddf/corpus.hpp"
#include "ddf/document.hpp"
#include "ddf/error.hpp"
#include "doctest.h"

using namespace ddf;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("parsed");
  return ErrorKind::InvalidInput;
}

std::string message_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

// A one-object category on a set of size two with a non-trivial function.
const char* kSmall = R"({
  "sets": {"A": ["a", "b"], "B": ["x"]},
  "functions": {"f": {"dom": "A", "cod": "B", "table": {"a": "x", "b": "x"}}}
})";

}  // namespace

TEST_CASE("empty documents") {
  CHECK(parse_document("").empty());
  CHECK(parse_document(" \n").empty());
  CHECK(parse_document("{}").empty());
  CHECK(emit_document(Document{}) == "{}\n");
}

TEST_CASE("sets and functions") {
  Document d = parse_document(kSmall);
  REQUIRE(d.sets.size() == 2);
  CHECK(d.functions.at("f").dom() == FinSet{"a", "b"});
  CHECK(d.functions.at("f")("b") == "x");
  CHECK(parse_document(emit_document(d)) == d);
}

TEST_CASE("unresolved names") {
  std::string missing = R"({"sets": {"A": ["a"]}, "functions": {"f": {"dom": "A", "cod": "Nowhere", "table": {"a": "x"}}}})";
  CHECK(kind_of(missing) == ErrorKind::UnresolvedName);
  CHECK(message_of(missing).find("Nowhere") != std::string::npos);
  CHECK(message_of(missing).find("/functions/f/cod") != std::string::npos);
  std::string lax = R"({"lax_functors": {"F": {"base": "B", "objects": {}, "arrows": {}, "proarrows": {}, "cells": {},
                        "units": {}, "composition": []}}})";
  CHECK(kind_of(lax) == ErrorKind::UnresolvedName);
  CHECK(message_of(lax).find("'B'") != std::string::npos);
}

TEST_CASE("parse errors carry a location") {
  CHECK(kind_of("{\n  \"sets\": [}") == ErrorKind::ParseError);
  CHECK(message_of("{\n  \"sets\": [}").find("line 2") != std::string::npos);
  CHECK(kind_of(R"({"widgets": {}})") == ErrorKind::ParseError);
  std::string off = R"({"sets": {"A": ["a"], "B": ["x"]}, "functions": {"f": {"dom": "A", "cod": "B", "table": {"a": "y"}}}})";
  CHECK(kind_of(off) == ErrorKind::ParseError);
  CHECK(message_of(off).find("/functions/f/table") != std::string::npos);
  std::string partial = R"({"sets": {"A": ["a", "b"], "B": ["x"]}, "functions": {"f": {"dom": "A", "cod": "B", "table": {"a": "x"}}}})";
  CHECK(kind_of(partial) == ErrorKind::ParseError);
  std::string dup = R"({"sets": {"A": ["a", "a"]}})";
  CHECK(kind_of(dup) == ErrorKind::ParseError);
  std::string extra = R"({"sets": {"A": ["a"]}, "functions": {"f": {"dom": "A", "cod": "A", "table": {"a": "a"}, "note": "x"}}})";
  CHECK(message_of(extra).find("/functions/f/note") != std::string::npos);
}

TEST_CASE("round trip over every base") {
  std::size_t i = 0;
  for (const auto& b : corpus::bases()) {
    Document d = document_of(b, "B" + std::to_string(i++), corpus::equivalence_corpus(b));
    std::string text = emit_document(d);
    Document back = parse_document(text);
    CHECK(back == d);
    CHECK(emit_document(back) == text);
    CHECK(emit_document(d) == text);
    Report r = validate_document(back);
    CHECK_MESSAGE(r.ok(), r.str());
  }
}

TEST_CASE("categories keep their tables") {
  Document d;
  for (const auto& c : corpus::categories()) add_category(d, "C" + std::to_string(d.categories.size()), c);
  add_category(d, "bad", corpus::non_associative());
  Document back = parse_document(emit_document(d));
  CHECK(back == d);
  Report r = validate_document(back);
  CHECK(r.has("category.associativity"));
  for (const auto& v : r.violations()) CHECK(v.context.find("categories/bad") != std::string::npos);
}

TEST_CASE("registration") {
  Document d;
  LaxSpanFunctor f = encode_category(corpus::c2());
  CHECK(add_lax_functor(d, "F", f) == "F");
  CHECK(add_lax_functor(d, "G", f) == "F");
  CHECK(d.double_categories.size() == 1);
  CHECK(d.double_categories.contains("F.base"));
  CHECK_THROWS_AS(add_lax_functor(d, "F", encode_category(corpus::c4())), Error);
  Document none;
  none.lax_functors.emplace("F", f);
  CHECK_THROWS_AS(emit_document(none), Error);
}

TEST_CASE("validation pinpoints entities") {
  Document d = document_of(terminal_double(), "B", corpus::equivalence_corpus(terminal_double()));
  // One left action value moved to another element.
  auto it = d.modules.begin();
  std::size_t pair = 0;
  for (; it != d.modules.end(); ++it) {
    auto& acts = it->second.left_act;
    auto j = std::find_if(acts.begin(), acts.end(), [](const FinFn& l) { return !l.dom().empty() && l.cod().size() >= 2; });
    if (j != acts.end()) {
      pair = static_cast<std::size_t>(j - acts.begin());
      break;
    }
  }
  REQUIRE(it != d.modules.end());
  Module bad = it->second;
  FinFn& l = bad.left_act[pair];
  l = l.with(l.dom()[0], l.cod()[(l.at(0) + 1) % l.cod().size()]);
  Document small;
  add_module(small, "good", it->second);
  add_module(small, "bad", bad);
  Document back = parse_document(emit_document(small));
  Report r = validate_document(back);
  CHECK_FALSE(r.ok());
  for (const auto& v : r.violations()) CHECK(v.context.rfind("modules/bad", 0) == 0);
}

TEST_CASE("corpus files are canonical") {
  for (const char* name : {"terminal", "vertical_c2", "walking_proarrow", "representable", "bad"}) {
    std::ifstream in(std::string(DDF_CORPUS_DIR) + "/" + name + ".json", std::ios::binary);
    REQUIRE(in);
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    Document d = parse_document(text);
    CHECK_MESSAGE(emit_document(d) == text, name);
    CHECK(parse_document(emit_document(d)) == d);
  }
}
