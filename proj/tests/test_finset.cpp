#include <map>
#include <random>
#include <set>

#include "ddf/error.hpp"
#include "ddf/finset.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace ddf;

namespace {

// Oracle: filter X×Y by f(x) = g(y), in lexicographic order.
std::vector<std::pair<Id, Id>> pullback_oracle(const FinFn& f, const FinFn& g) {
  std::vector<std::pair<Id, Id>> out;
  for (const auto& x : f.dom()) {
    for (const auto& y : g.dom()) {
      if (f(x) == g(y)) out.emplace_back(x, y);
    }
  }
  return out;
}

// Oracle: Σ_b |leg1⁻¹(b)|·|leg0⁻¹(b)|.
std::size_t fiberwise_count(const Span& s, const Span& t) {
  std::size_t total = 0;
  for (const auto& b : s.right()) {
    std::size_t a = 0, c = 0;
    for (const auto& v : s.vertex()) a += s.leg1()(v) == b;
    for (const auto& v : t.vertex()) c += t.leg0()(v) == b;
    total += a * c;
  }
  return total;
}

}  // namespace

TEST_CASE("FinSet rejects duplicates and keeps insertion order") {
  CHECK_THROWS_AS(FinSet({"a", "b", "a"}), Error);
  FinSet s{"z", "a", "m"};
  CHECK(s[0] == "z");
  CHECK(s.index_of("m") == 2);
  CHECK_FALSE(s.contains("q"));
  CHECK(FinSet().empty());
}

TEST_CASE("compose_fn") {
  FinSet x{"x"}, a{"a"}, p{"p"};
  FinFn f = FinFn::from_table(x, a, {{"x", "a"}});
  FinFn g = FinFn::from_table(a, p, {{"a", "p"}});
  CHECK(compose_fn(g, f)("x") == "p");
  CHECK(compose_fn(FinFn::identity(a), f) == f);
  CHECK_THROWS_AS(compose_fn(f, f), Error);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    FinSet s1 = gen::set(rng, "s", 5), s2 = gen::set_of("t", 1 + trial % 5), s3 = gen::set_of("u", 1 + trial % 3);
    FinFn h1 = gen::fn(rng, s1, s2), h2 = gen::fn(rng, s2, s3);
    FinFn c = compose_fn(h2, h1);
    for (const auto& e : s1) CHECK(c(e) == h2(h1(e)));
    FinFn h3 = gen::fn(rng, s3, s1.empty() ? s3 : s1);
    if (!s1.empty()) CHECK(compose_fn(h3, compose_fn(h2, h1)) == compose_fn(compose_fn(h3, h2), h1));
    CHECK(compose_fn(h1, FinFn::identity(s1)) == h1);
  }
}

TEST_CASE("pullback") {
  FinSet z{"z"};
  SUBCASE("identity legs give the diagonal") {
    FinSet zz{"p", "q"};
    Pullback p = pullback(FinFn::identity(zz), FinFn::identity(zz));
    CHECK(p.vertex == FinSet{"(p,p)", "(q,q)"});
    CHECK(p.p0.image() == p.p1.image());
  }
  SUBCASE("product over a point") {
    FinSet x{"a", "b"}, y{"c"};
    Pullback p = pullback(FinFn::constant(x, z, "z"), FinFn::constant(y, z, "z"));
    CHECK(p.vertex == FinSet{"(a,c)", "(b,c)"});
  }
  SUBCASE("random instances against the filter oracle") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
      FinSet zs = gen::set_of("z", 1 + trial % 4);
      FinSet xs = gen::set(rng, "x", 4), ys = gen::set(rng, "y", 4);
      FinFn f = gen::fn(rng, xs, zs), g = gen::fn(rng, ys, zs);
      Pullback p = pullback(f, g);
      auto oracle = pullback_oracle(f, g);
      REQUIRE(p.vertex.size() == oracle.size());
      for (std::size_t i = 0; i < oracle.size(); ++i) {
        CHECK(p.vertex[i] == pair_id(oracle[i].first, oracle[i].second));
        CHECK(p.p0(p.vertex[i]) == oracle[i].first);
        CHECK(p.p1(p.vertex[i]) == oracle[i].second);
      }
    }
  }
  SUBCASE("universal property by enumeration of cones") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      FinSet zs = gen::set_of("z", 2), xs = gen::set_of("x", 2 + trial % 2), ys = gen::set_of("y", 2);
      FinFn f = gen::fn(rng, xs, zs), g = gen::fn(rng, ys, zs);
      Pullback p = pullback(f, g);
      FinSet t = gen::set_of("t", 1 + trial % 3);
      // Enumerate every pair of maps T→X, T→Y; keep commuting cones.
      std::size_t nx = 1, ny = 1;
      for (std::size_t i = 0; i < t.size(); ++i) nx *= xs.size(), ny *= ys.size();
      for (std::size_t cx = 0; cx < nx; ++cx) {
        for (std::size_t cy = 0; cy < ny; ++cy) {
          std::vector<std::size_t> ix(t.size()), iy(t.size());
          std::size_t a = cx, b = cy;
          for (std::size_t i = 0; i < t.size(); ++i) {
            ix[i] = a % xs.size(), a /= xs.size();
            iy[i] = b % ys.size(), b /= ys.size();
          }
          FinFn q0(t, xs, ix), q1(t, ys, iy);
          bool commutes = compose_fn(f, q0) == compose_fn(g, q1);
          if (!commutes) {
            CHECK_THROWS_AS(mediating_map(p, q0, q1), Error);
            continue;
          }
          // Count mediating maps by brute force over all T→P.
          std::size_t np = 1, found = 0;
          for (std::size_t i = 0; i < t.size(); ++i) np *= p.vertex.size();
          for (std::size_t c = 0; c < np; ++c) {
            std::vector<std::size_t> im(t.size());
            std::size_t k = c;
            for (std::size_t i = 0; i < t.size(); ++i) im[i] = k % p.vertex.size(), k /= p.vertex.size();
            FinFn h(t, p.vertex, im);
            if (compose_fn(p.p0, h) == q0 && compose_fn(p.p1, h) == q1) {
              ++found;
              CHECK(h == mediating_map(p, q0, q1));
            }
          }
          CHECK(found == 1);
        }
      }
    }
  }
}

TEST_CASE("span composition") {
  SUBCASE("identity span on the left") {
    FinSet a{"a", "b"}, v{"s", "t", "u"}, c{"c"};
    Span s(FinFn::from_table(v, a, {{"s", "a"}, {"t", "a"}, {"u", "b"}}), FinFn::constant(v, c, "c"));
    Span comp = compose_spans(identity_span(a), s);
    CHECK(comp.vertex() == FinSet{"(a,s)", "(a,t)", "(b,u)"});
    FinFn unitor = left_unitor(s);
    CHECK(unitor.is_bijective());
    CHECK(compose_fn(s.leg0(), unitor) == comp.leg0());
  }
  SUBCASE("singleton middle set gives the product of vertices") {
    FinSet a{"a"}, m{"m"}, c{"c"}, v{"v1", "v2"}, w{"w1", "w2", "w3"};
    Span s(FinFn::constant(v, a, "a"), FinFn::constant(v, m, "m"));
    Span t(FinFn::constant(w, m, "m"), FinFn::constant(w, c, "c"));
    CHECK(compose_spans(s, t).vertex().size() == 6);
  }
  SUBCASE("identity span on the empty set") {
    Span e = identity_span(FinSet());
    CHECK(e.vertex().empty());
  }
  SUBCASE("identity composed with itself is the diagonal") {
    FinSet a{"p", "q", "r"};
    Span d = compose_spans(identity_span(a), identity_span(a));
    CHECK(d.vertex() == FinSet{"(p,p)", "(q,q)", "(r,r)"});
  }
  SUBCASE("random spans against the fiberwise counting oracle") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
      FinSet a = gen::set_of("a", 1 + trial % 3), b = gen::set_of("b", 1 + trial % 4), c = gen::set_of("c", 2);
      Span s = gen::span(rng, a, b, "s", 5), t = gen::span(rng, b, c, "t", 5);
      Span st = compose_spans(s, t);
      CHECK(st.vertex().size() == fiberwise_count(s, t));
    }
  }
  SUBCASE("associator is a bijection commuting with the outer legs") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
      FinSet a = gen::set_of("a", 2), b = gen::set_of("b", 2), c = gen::set_of("c", 2), d = gen::set_of("d", 2);
      Span r = gen::span(rng, a, b, "r", 4), s = gen::span(rng, b, c, "s", 4), t = gen::span(rng, c, d, "t", 4);
      Span left = compose_spans(compose_spans(r, s), t);
      Span right = compose_spans(r, compose_spans(s, t));
      FinFn alpha = associator(r, s, t);
      CHECK(alpha.is_bijective());
      CHECK(compose_fn(right.leg0(), alpha) == left.leg0());
      CHECK(compose_fn(right.leg1(), alpha) == left.leg1());
      std::array<Span, 3> path{r, s, t};
      CHECK(path_vertex(path).span == left);
    }
  }
}

TEST_CASE("check_span_morphism") {
  FinSet a{"a0", "a1"}, v{"v0", "v1"}, c{"c"};
  Span s(FinFn::from_table(v, a, {{"v0", "a0"}, {"v1", "a1"}}), FinFn::constant(v, c, "c"));
  CHECK(check_span_morphism(identity_span_morphism(s)).ok());
  SpanMorphism swap = identity_span_morphism(s);
  swap.vertex = FinFn::from_table(v, v, {{"v0", "v1"}, {"v1", "v0"}});
  Report r = check_span_morphism(swap);
  CHECK(r.count("span_morphism.square") == 2);
  CHECK(r.violations()[0].witness.find("v0") != std::string::npos);
}
