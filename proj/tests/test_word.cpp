#include <random>
#include <sstream>

#include "doctest.h"
#include "skein/engine.hpp"
#include "skein/word.hpp"
#include "test_support.hpp"

using namespace skein;

namespace {

EngineParams D2() { return make_params(Flavor::D, 2); }

}  // namespace

TEST_CASE("word widths chain through tiles") {
  Word w;
  w.bottom = 2;
  w.tiles = {{TileKind::Cup, 1, 0},
             {TileKind::Over, 0, 0},
             {TileKind::JW, 0, 3},
             {TileKind::Cap, 2, 0}};
  CHECK(w.top(0) == 2);
  CHECK_NOTHROW(w.require_valid(0));
  w.tiles.push_back({TileKind::SUp, 1, 2});
  CHECK(w.top(4) == 6);
  CHECK_NOTHROW(w.require_valid(4));
  CHECK(w.count_s() == 1);
}

TEST_CASE("validation rejects out of range tiles") {
  auto bad = [](int bottom, Tile t, int g) {
    Word w;
    w.bottom = bottom;
    w.tiles = {t};
    CHECK_THROWS_AS(w.require_valid(g), MalformedDiagram);
  };
  bad(0, {TileKind::Cap, 0, 0}, 0);
  bad(2, {TileKind::Cap, 1, 0}, 0);
  bad(1, {TileKind::Cup, 2, 0}, 0);
  bad(3, {TileKind::Over, 2, 0}, 0);
  bad(2, {TileKind::JW, 0, 3}, 0);
  bad(2, {TileKind::JW, 0, 0}, 0);
  bad(3, {TileKind::SDown, 0, 0}, 4);
  bad(0, {TileKind::SUp, 1, 0}, 4);
  bad(0, {TileKind::SUp, 0, 0}, 0);
  Word neg;
  neg.bottom = -1;
  CHECK_THROWS_AS(neg.require_valid(0), MalformedDiagram);
}

TEST_CASE("trace closure wraps an operator word") {
  auto P = D2();
  Word w;
  w.bottom = 2;
  w.tiles = {{TileKind::Over, 0, 0}};
  Word closed = trace_closure(w, P.g);
  CHECK(closed.bottom == 0);
  CHECK(closed.top(P.g) == 0);
  // A traced crossing is a single loop with one curl.
  Cyclo curl = -(P.a * P.a * P.a);
  CHECK(evaluate_closed(closed, P) == curl * P.delta);
  // The evaluator trace-closes operator words itself; both paths agree.
  CHECK(evaluate_closed(w, P) == evaluate_closed(closed, P));
  Word open;
  open.bottom = 1;
  open.tiles = {{TileKind::Cup, 0, 0}};
  CHECK_THROWS_AS(trace_closure(open, P.g), BoundaryMismatch);
}

TEST_CASE("reverse transpose is an involution and conjugates values") {
  auto P = D2();
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    Word w = testutil::random_closed_word(rng, P, 2, 6, 8);
    Word rt = reverse_transpose(w, P.g);
    CHECK(rt.bottom == 0);
    CHECK(rt.top(P.g) == 0);
    Word back = reverse_transpose(rt, P.g);
    CHECK(back.bottom == w.bottom);
    CHECK(back.tiles == w.tiles);
    CHECK(evaluate_closed(rt, P) == evaluate_closed(w, P).conj());
  }
}

TEST_CASE("diagram files round trip through format and parse") {
  DiagramFile f;
  f.flavor = Flavor::D;
  f.index = 2;
  f.word.bottom = 2;
  f.word.tiles = {{TileKind::Cup, 0, 0},   {TileKind::Over, 1, 0},
                  {TileKind::Under, 2, 0}, {TileKind::JW, 0, 2},
                  {TileKind::SUp, 1, 3},   {TileKind::SDown, 2, 1},
                  {TileKind::Cap, 0, 0}};
  f.declared_top = 2;
  f.close_trace = true;
  std::string text = format_diagram(f);
  DiagramFile g = parse_diagram_text(text);
  CHECK(g.flavor == f.flavor);
  CHECK(g.index == f.index);
  CHECK(g.word.bottom == f.word.bottom);
  CHECK(g.word.tiles == f.word.tiles);
  CHECK(g.declared_top == f.declared_top);
  CHECK(g.close_trace == f.close_trace);
  CHECK(format_diagram(g) == text);
}

TEST_CASE("parser accepts comments and blank lines") {
  DiagramFile f = parse_diagram_text(
      "# a loop\n"
      "flavor D 2\n"
      "\n"
      "bottom 0\n"
      "slice cup 0   # build\n"
      "slice cap 0\n");
  CHECK(f.flavor == Flavor::D);
  CHECK(f.index == 2);
  CHECK(f.word.tiles.size() == 2);
  CHECK_FALSE(f.close_trace);
}

TEST_CASE("parser reports malformed input with line numbers") {
  auto fails = [](const std::string& text, const char* needle) {
    try {
      parse_diagram_text(text);
      FAIL_CHECK("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  fails("bogus 1\n", "unknown keyword");
  fails("flavor E 2\n", "flavor must be D or T");
  fails("flavor D\n", "expected flavor index");
  fails("bottom 0\nbottom 0\n", "line 2");
  fails("slice cup\n", "expected position");
  fails("slice twist 0\n", "unknown slice kind");
  fails("slice cup 0 7\n", "trailing token");
  fails("slice jw 0\n", "expected parameter");
  fails("close sideways\n", "closure mode");
  fails("bottom 99999999\n", "out of range");
}

TEST_CASE("parsed empty diagram evaluates to one") {
  DiagramFile f = parse_diagram_text("bottom 0\n");
  auto P = D2();
  CHECK(evaluate_closed(f.word, P) == P.one());
}
