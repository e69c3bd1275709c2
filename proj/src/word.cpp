#include "skein/word.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace skein {

namespace {

int width_after(int w, const Tile& t, int g, int slice, bool check) {
  auto fail = [&](const std::string& why) -> int {
    throw MalformedDiagram("slice " + std::to_string(slice) + ": " + why);
  };
  switch (t.kind) {
    case TileKind::Cup:
      if (check && (t.pos < 0 || t.pos > w)) fail("cup position out of range");
      return w + 2;
    case TileKind::Cap:
      if (check && (t.pos < 0 || t.pos + 2 > w)) fail("cap position out of range");
      return w - 2;
    case TileKind::Over:
    case TileKind::Under:
      if (check && (t.pos < 0 || t.pos + 2 > w)) fail("crossing position out of range");
      return w;
    case TileKind::JW:
      if (check && t.param < 1) fail("idempotent needs at least one strand");
      if (check && (t.pos < 0 || t.pos + t.param > w)) fail("idempotent out of range");
      return w;
    case TileKind::SUp:
      if (check && g < 1) fail("generator tile without a flavor");
      if (check && (t.pos < 0 || t.pos > w)) fail("generator position out of range");
      return w + g;
    case TileKind::SDown:
      if (check && g < 1) fail("generator tile without a flavor");
      if (check && (t.pos < 0 || t.pos + g > w)) fail("generator position out of range");
      return w - g;
  }
  return w;
}

}  // namespace

int Word::top(int g) const {
  int w = bottom;
  for (size_t i = 0; i < tiles.size(); ++i)
    w = width_after(w, tiles[i], g, static_cast<int>(i), false);
  return w;
}

void Word::require_valid(int g) const {
  if (bottom < 0) throw MalformedDiagram("negative bottom strand count");
  int w = bottom;
  for (size_t i = 0; i < tiles.size(); ++i)
    w = width_after(w, tiles[i], g, static_cast<int>(i), true);
  if (w < 0) throw MalformedDiagram("negative strand count");
}

int Word::count_s() const {
  int n = 0;
  for (const auto& t : tiles)
    if (t.kind == TileKind::SUp || t.kind == TileKind::SDown) ++n;
  return n;
}

Word trace_closure(const Word& w, int g) {
  int m = w.top(g);
  if (w.bottom != m)
    throw BoundaryMismatch("trace closure needs equal bottom and top");
  Word out;
  out.bottom = 0;
  for (int j = 0; j < m; ++j) out.tiles.push_back({TileKind::Cup, j, 0});
  for (const auto& t : w.tiles) out.tiles.push_back({t.kind, t.pos + m, t.param});
  for (int j = m - 1; j >= 0; --j) out.tiles.push_back({TileKind::Cap, j, 0});
  return out;
}

Word reverse_transpose(const Word& w, int g) {
  Word out;
  out.bottom = w.top(g);
  for (auto it = w.tiles.rbegin(); it != w.tiles.rend(); ++it) {
    Tile t = *it;
    switch (t.kind) {
      case TileKind::Cup: t.kind = TileKind::Cap; break;
      case TileKind::Cap: t.kind = TileKind::Cup; break;
      case TileKind::Over: t.kind = TileKind::Under; break;
      case TileKind::Under: t.kind = TileKind::Over; break;
      case TileKind::SUp: t.kind = TileKind::SDown; break;
      case TileKind::SDown: t.kind = TileKind::SUp; break;
      default: break;
    }
    out.tiles.push_back(t);
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& why) {
  throw ParseError("line " + std::to_string(line) + ": " + why);
}

}  // namespace

DiagramFile parse_diagram(std::istream& in) {
  DiagramFile f;
  std::string line;
  int lineno = 0;
  bool saw_bottom = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto need_int = [&](const char* what) {
      long long v;
      if (!(ls >> v)) parse_fail(lineno, std::string("expected ") + what);
      if (v < -1000000 || v > 1000000) parse_fail(lineno, std::string(what) + " out of range");
      return static_cast<int>(v);
    };
    auto need_end = [&] {
      std::string extra;
      if (ls >> extra) parse_fail(lineno, "unexpected trailing token '" + extra + "'");
    };
    if (key == "flavor") {
      std::string fl;
      if (!(ls >> fl)) parse_fail(lineno, "expected flavor letter");
      if (fl == "D")
        f.flavor = Flavor::D;
      else if (fl == "T")
        f.flavor = Flavor::T;
      else
        parse_fail(lineno, "flavor must be D or T");
      f.index = need_int("flavor index");
      need_end();
    } else if (key == "bottom") {
      if (saw_bottom) parse_fail(lineno, "duplicate bottom line");
      f.word.bottom = need_int("strand count");
      saw_bottom = true;
      need_end();
    } else if (key == "slice") {
      std::string kind;
      if (!(ls >> kind)) parse_fail(lineno, "expected slice kind");
      Tile t;
      if (kind == "cup")
        t.kind = TileKind::Cup;
      else if (kind == "cap")
        t.kind = TileKind::Cap;
      else if (kind == "over")
        t.kind = TileKind::Over;
      else if (kind == "under")
        t.kind = TileKind::Under;
      else if (kind == "jw")
        t.kind = TileKind::JW;
      else if (kind == "sup")
        t.kind = TileKind::SUp;
      else if (kind == "sdown")
        t.kind = TileKind::SDown;
      else
        parse_fail(lineno, "unknown slice kind '" + kind + "'");
      t.pos = need_int("position");
      if (t.kind == TileKind::JW || t.kind == TileKind::SUp ||
          t.kind == TileKind::SDown)
        t.param = need_int("parameter");
      need_end();
      f.word.tiles.push_back(t);
    } else if (key == "top") {
      f.declared_top = need_int("strand count");
      need_end();
    } else if (key == "close") {
      std::string mode;
      if (!(ls >> mode)) parse_fail(lineno, "expected closure mode");
      if (mode == "trace")
        f.close_trace = true;
      else if (mode == "none")
        f.close_trace = false;
      else
        parse_fail(lineno, "closure mode must be trace or none");
      need_end();
    } else {
      parse_fail(lineno, "unknown keyword '" + key + "'");
    }
  }
  return f;
}

DiagramFile parse_diagram_text(const std::string& text) {
  std::istringstream in(text);
  return parse_diagram(in);
}

std::string format_diagram(const DiagramFile& f) {
  std::ostringstream out;
  if (f.flavor) {
    out << "flavor " << (*f.flavor == Flavor::D ? "D" : "T");
    if (f.index) out << ' ' << *f.index;
    out << '\n';
  }
  out << "bottom " << f.word.bottom << '\n';
  for (const auto& t : f.word.tiles) {
    out << "slice ";
    switch (t.kind) {
      case TileKind::Cup: out << "cup " << t.pos; break;
      case TileKind::Cap: out << "cap " << t.pos; break;
      case TileKind::Over: out << "over " << t.pos; break;
      case TileKind::Under: out << "under " << t.pos; break;
      case TileKind::JW: out << "jw " << t.pos << ' ' << t.param; break;
      case TileKind::SUp: out << "sup " << t.pos << ' ' << t.param; break;
      case TileKind::SDown: out << "sdown " << t.pos << ' ' << t.param; break;
    }
    out << '\n';
  }
  if (f.declared_top) out << "top " << *f.declared_top << '\n';
  if (f.close_trace) out << "close trace\n";
  return out.str();
}

}  // namespace skein
