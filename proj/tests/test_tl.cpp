#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <unistd.h>

#include "doctest.h"
#include "skein/jw.hpp"
#include "skein/params.hpp"
#include "skein/tl.hpp"

using namespace skein;

namespace {

long catalan(int n) {
  long c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// Every perfect matching of n points, crossings allowed.
void all_matchings(std::vector<int>& match, std::vector<std::vector<int>>& out) {
  int first = -1;
  int n = match.size();
  for (int i = 0; i < n; ++i)
    if (match[i] < 0) {
      first = i;
      break;
    }
  if (first < 0) {
    out.push_back(match);
    return;
  }
  for (int j = first + 1; j < n; ++j) {
    if (match[j] >= 0) continue;
    match[first] = j;
    match[j] = first;
    all_matchings(match, out);
    match[first] = -1;
    match[j] = -1;
  }
}

TLElement random_element(const FieldPtr& f, int b, int t, std::mt19937& rng) {
  auto diagrams = enumerate_diagrams(b, t);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> zexp(0, f->M() - 1);
  TLElement x(f, b, t);
  for (const auto& d : diagrams) {
    int c = coeff(rng);
    if (c == 0) continue;
    x.add_term(d, Cyclo::zeta_pow(f, zexp(rng)) * Rat(c));
  }
  return x;
}

}  // namespace

TEST_CASE("diagram enumeration matches Catalan counts") {
  CHECK(enumerate_diagrams(0, 0).size() == 1);
  CHECK(enumerate_diagrams(2, 0).size() == 1);
  CHECK(enumerate_diagrams(1, 1).size() == 1);
  CHECK(enumerate_diagrams(3, 3).size() == catalan(3));
  CHECK(enumerate_diagrams(4, 4).size() == catalan(4));
  CHECK(enumerate_diagrams(3, 5).size() == catalan(4));
  CHECK(enumerate_diagrams(6, 0).size() == catalan(3));
  CHECK(enumerate_diagrams(8, 8).size() == catalan(8));
  for (const auto& d : enumerate_diagrams(4, 4)) {
    CHECK(d.involution());
    CHECK(d.planar());
  }
  auto ds = enumerate_diagrams(5, 3);
  std::set<TLDiagram> uniq(ds.begin(), ds.end());
  CHECK(uniq.size() == ds.size());
  CHECK_THROWS_AS(enumerate_diagrams(2, 1), OddBoundary);
}

TEST_CASE("enumeration agrees with filtering all matchings") {
  for (int n : {4, 6, 8}) {
    std::vector<int> match(n, -1);
    std::vector<std::vector<int>> all;
    all_matchings(match, all);
    std::set<std::vector<int>> planar_set;
    for (const auto& mv : all) {
      TLDiagram d{n / 2, n / 2, mv};
      if (d.planar()) planar_set.insert(mv);
    }
    auto enumerated = enumerate_diagrams(n / 2, n / 2);
    std::set<std::vector<int>> enum_set;
    for (const auto& d : enumerated) enum_set.insert(d.match);
    CHECK(planar_set == enum_set);
  }
}

TEST_CASE("diagram validation") {
  TLDiagram bad{2, 0, {0, 1}};  // fixed points
  CHECK(!bad.involution());
  CHECK_THROWS_AS(bad.require_valid(), MalformedDiagram);
  TLDiagram crossing{4, 0, {2, 3, 0, 1}};
  CHECK(crossing.involution());
  CHECK(!crossing.planar());
  CHECK_THROWS_AS(crossing.require_valid(), MalformedDiagram);
  TLDiagram odd{1, 2, {1, 0, 2}};
  CHECK_THROWS_AS(odd.require_valid(), SkeinError);
}

TEST_CASE("generator relations") {
  auto p = make_params(Flavor::D, 2);
  auto f = p.field;
  int m = 4;
  auto id = TLElement::identity(f, m);
  auto E = [&](int i) { return TLElement::e(f, m, i); };
  auto mul = [&](const TLElement& x, const TLElement& y) {
    return tl_compose(x, y, p.delta);
  };
  for (int i = 0; i + 1 < m; ++i) {
    CHECK(mul(E(i), E(i)) == E(i) * p.delta);
    CHECK(mul(E(i), id) == E(i));
    CHECK(mul(id, E(i)) == E(i));
  }
  CHECK(mul(mul(E(0), E(1)), E(0)) == E(0));
  CHECK(mul(mul(E(1), E(0)), E(1)) == E(1));
  CHECK(mul(mul(E(1), E(2)), E(1)) == E(1));
  CHECK(mul(E(0), E(2)) == mul(E(2), E(0)));
}

TEST_CASE("algebra laws on random elements") {
  auto p = make_params(Flavor::D, 2);
  auto f = p.field;
  std::mt19937 rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_element(f, 3, 3, rng);
    auto y = random_element(f, 3, 3, rng);
    auto z = random_element(f, 3, 3, rng);
    auto mul = [&](const TLElement& a, const TLElement& b) {
      return tl_compose(a, b, p.delta);
    };
    CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
    CHECK(mul(x + y, z) == mul(x, z) + mul(y, z));
    CHECK(tl_adjoint(mul(x, y)) == mul(tl_adjoint(y), tl_adjoint(x)));
    CHECK(tl_adjoint(tl_adjoint(x)) == x);
    CHECK(tl_trace(mul(x, y), p.delta) == tl_trace(mul(y, x), p.delta));

    auto u = random_element(f, 2, 2, rng);
    auto v = random_element(f, 2, 2, rng);
    // Interchange: (x tensor u)(y tensor v) = xy tensor uv.
    CHECK(mul(tl_tensor(x, u), tl_tensor(y, v)) ==
          tl_tensor(mul(x, y), tl_compose(u, v, p.delta)));
    CHECK(tl_adjoint(tl_tensor(x, u)) == tl_tensor(tl_adjoint(x), tl_adjoint(u)));
    CHECK(tl_trace(tl_tensor(x, u), p.delta) ==
          tl_trace(x, p.delta) * tl_trace(u, p.delta));
  }
}

TEST_CASE("rectangular composition and loop values") {
  auto p = make_params(Flavor::D, 2);
  auto f = p.field;
  TLDiagram cup{0, 2, {1, 0}};
  TLDiagram cap{2, 0, {1, 0}};
  auto cup_e = TLElement::from_diagram(f, cup);
  auto cap_e = TLElement::from_diagram(f, cap);
  auto closed = tl_compose(cap_e, cup_e, p.delta);
  CHECK(closed.b() == 0);
  CHECK(closed.t() == 0);
  REQUIRE(closed.terms().size() == 1);
  CHECK(closed.terms().begin()->second == p.delta);
  // Zigzag: (cap tensor id) after (id tensor cup) is the identity strand.
  auto id1 = TLElement::identity(f, 1);
  auto zig = tl_compose(tl_tensor(cap_e, id1), tl_tensor(id1, cup_e), p.delta);
  CHECK(zig == id1);
  auto zag = tl_compose(tl_tensor(id1, cap_e), tl_tensor(cup_e, id1), p.delta);
  CHECK(zag == id1);
}

TEST_CASE("trace and partial trace") {
  auto p = make_params(Flavor::D, 2);
  auto f = p.field;
  auto id3 = TLElement::identity(f, 3);
  auto d3 = p.delta * p.delta * p.delta;
  CHECK(tl_trace(id3, p.delta) == d3);
  CHECK(tl_trace(TLElement::e(f, 3, 0), p.delta) == p.delta * p.delta);
  CHECK(tl_partial_trace(id3, p.delta) == TLElement::identity(f, 2) * p.delta);
  CHECK(tl_partial_trace(TLElement::e(f, 3, 1), p.delta) ==
        TLElement::identity(f, 2));
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = random_element(f, 3, 3, rng);
    auto y = tl_partial_trace(tl_partial_trace(tl_partial_trace(x, p.delta),
                                               p.delta),
                              p.delta);
    CHECK(y.b() == 0);
    Cyclo scalar = Cyclo::zero(f);
    if (!y.terms().empty()) scalar = y.terms().begin()->second;
    CHECK(scalar == tl_trace(x, p.delta));
  }
}

TEST_CASE("idempotents at a generic parameter") {
  auto p = make_params(Flavor::D, 3);
  auto f = p.field;
  for (int m = 1; m <= 6; ++m) {
    auto jw = jones_wenzl(f, m);
    CHECK(jw.b() == m);
    CHECK(jw.t() == m);
    CHECK(tl_compose(jw, jw, p.delta) == jw);
    CHECK(tl_adjoint(jw) == jw);
    auto it = jw.terms().find(tl_identity_diagram(m));
    REQUIRE(it != jw.terms().end());
    CHECK(it->second == p.one());
    for (int i = 0; i + 1 < m; ++i) {
      CHECK(tl_compose(TLElement::e(f, m, i), jw, p.delta).is_zero());
      CHECK(tl_compose(jw, TLElement::e(f, m, i), p.delta).is_zero());
    }
    CHECK(tl_trace(jw, p.delta) == p.qint(m + 1));
    if (m >= 2) {
      auto expect = jones_wenzl(f, m - 1) * (p.qint(m + 1) * p.qint(m).inverse());
      CHECK(tl_partial_trace(jw, p.delta) == expect);
    }
  }
}

TEST_CASE("idempotent recursion stops at the singular strand count") {
  auto p = make_params(Flavor::D, 2);
  CHECK_NOTHROW(jones_wenzl(p.field, 5));
  CHECK_THROWS_AS(jones_wenzl(p.field, 6), SingularRecursion);
  auto t5 = make_params(Flavor::T, 5);
  CHECK_NOTHROW(jones_wenzl(t5.field, 6));
  CHECK_THROWS_AS(jones_wenzl(t5.field, 7), SingularRecursion);
}

TEST_CASE("idempotent disk cache round trip") {
  auto p = make_params(Flavor::D, 2);
  std::string dir = "/tmp/skein-test-cache-" + std::to_string(::getpid());
  std::string saved = cache_dir();
  set_cache_dir(dir);
  clear_memory_cache();
  auto first = jones_wenzl(p.field, 4);
  clear_memory_cache();
  auto second = jones_wenzl(p.field, 4);  // now served from disk
  CHECK(first == second);
  CHECK(tl_compose(second, second, p.delta) == second);
  // A corrupt cache file is ignored and recomputed.
  {
    std::ofstream out(dir + "/jw_M24_m3.txt");
    out << "garbage\n";
  }
  clear_memory_cache();
  auto third = jones_wenzl(p.field, 3);
  CHECK(tl_compose(third, third, p.delta) == third);
  CHECK(clear_disk_cache() > 0);
  set_cache_dir(saved);
  clear_memory_cache();
}
