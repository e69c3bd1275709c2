#pragma once

#include <compare>
#include <map>
#include <vector>

#include "skein/cyclo.hpp"

namespace skein {

// Planar pairing diagram in a rectangle with b bottom and t top points.
// Boundary slots run counterclockwise from the bottom-left corner: bottom
// points left to right are 0..b-1, then the top points right to left, so the
// top point at left-to-right position j sits at slot b+t-1-j.
struct TLDiagram {
  int b = 0;
  int t = 0;
  std::vector<int> match;  // involution over the b+t slots

  int slots() const { return b + t; }
  int top_slot(int j) const { return b + t - 1 - j; }  // j counted left to right

  bool involution() const;
  bool planar() const;         // noncrossing; assumes involution()
  void require_valid() const;  // throws MalformedDiagram

  auto operator<=>(const TLDiagram&) const = default;
};

TLDiagram tl_identity_diagram(int m);
TLDiagram tl_e_diagram(int m, int i);  // cap then cup at positions i, i+1

// All planar pairings with b bottom and t top points: Catalan((b+t)/2) many.
std::vector<TLDiagram> enumerate_diagrams(int b, int t);

struct DiagramCompose {
  TLDiagram diagram;
  int loops = 0;
};

// Stack upper on top of lower (lower's top glued to upper's bottom).
DiagramCompose diagram_compose(const TLDiagram& upper, const TLDiagram& lower);
TLDiagram diagram_tensor(const TLDiagram& left, const TLDiagram& right);
TLDiagram diagram_adjoint(const TLDiagram& d);

// Finite linear combination of rectangular diagrams on a fixed boundary.
class TLElement {
 public:
  TLElement(FieldPtr field, int b, int t);

  static TLElement from_diagram(FieldPtr field, const TLDiagram& d);
  static TLElement identity(const FieldPtr& field, int m);
  static TLElement e(const FieldPtr& field, int m, int i);

  const FieldPtr& field() const { return field_; }
  int b() const { return b_; }
  int t() const { return t_; }
  const std::map<TLDiagram, Cyclo>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const TLDiagram& d, const Cyclo& c);

  TLElement operator+(const TLElement& o) const;
  TLElement operator-(const TLElement& o) const;
  TLElement operator-() const;
  TLElement operator*(const Cyclo& c) const;

  bool operator==(const TLElement& o) const;
  bool operator!=(const TLElement& o) const { return !(*this == o); }

 private:
  FieldPtr field_;
  int b_, t_;
  std::map<TLDiagram, Cyclo> terms_;
};

// x placed after y: y's top boundary glued to x's bottom boundary.
TLElement tl_compose(const TLElement& x, const TLElement& y, const Cyclo& delta);
TLElement tl_tensor(const TLElement& x, const TLElement& y);
TLElement tl_adjoint(const TLElement& x);
Cyclo tl_trace(const TLElement& x, const Cyclo& delta);
// Close only the rightmost strand.
TLElement tl_partial_trace(const TLElement& x, const Cyclo& delta);

}  // namespace skein
