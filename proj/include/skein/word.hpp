#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skein/params.hpp"

namespace skein {

// One slice of a diagram word, read bottom to top.
// Cup inserts two joined strands at pos, pos+1. Cap joins and removes the
// strands at pos, pos+1. Over and Under cross strands pos, pos+1 (Over: the
// usual positive crossing, Under its inverse). JW places the param-strand
// idempotent across pos..pos+param-1. SUp emits the generator box with its
// legs becoming strands pos..pos+g-1; SDown absorbs g strands into the box.
// param on SUp/SDown is the mark offset: strand pos+j carries box leg
// (j - param) mod g.
enum class TileKind { Cup, Cap, Over, Under, JW, SUp, SDown };

struct Tile {
  TileKind kind = TileKind::Cup;
  int pos = 0;
  int param = 0;
  auto operator<=>(const Tile&) const = default;
};

struct Word {
  int bottom = 0;
  std::vector<Tile> tiles;

  // Width after all slices; g is the generator strand count (unused when the
  // word has no generator tiles).
  int top(int g) const;
  void require_valid(int g) const;  // throws MalformedDiagram
  int count_s() const;
};

// Close an operator word into a scalar diagram, joining bottom point j to
// top point j around the side.
Word trace_closure(const Word& w, int g);

// Upside-down mirror (the diagram adjoint): slices reversed, Cup and Cap
// exchanged, Over and Under exchanged (the reflected over-strand runs the
// other diagonal), SUp and SDown exchanged, positions and params kept.
Word reverse_transpose(const Word& w, int g);

struct DiagramFile {
  std::optional<Flavor> flavor;
  std::optional<int> index;
  Word word;
  std::optional<int> declared_top;
  bool close_trace = false;
};

DiagramFile parse_diagram(std::istream& in);
DiagramFile parse_diagram_text(const std::string& text);
std::string format_diagram(const DiagramFile& f);

}  // namespace skein
