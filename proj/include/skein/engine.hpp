#pragma once

#include <map>
#include <vector>

#include "skein/params.hpp"
#include "skein/tl.hpp"
#include "skein/word.hpp"

namespace skein {

// One basis picture of a box space with m boundary slots (rectangle
// convention: bottom left-to-right, then top right-to-left). match[s] is the
// chord partner of slot s, or -1 where a generator leg ends. legs[j] is the
// slot of generator leg j, numbered clockwise from the box's mark; canonical
// form puts leg 0 at the smallest occupied slot.
struct SpanningDiagram {
  int m = 0;
  std::vector<int> legs;
  std::vector<int> match;

  bool with_generator() const { return !legs.empty(); }
  void require_valid() const;
  auto operator<=>(const SpanningDiagram&) const = default;
};

class SkeinElement {
 public:
  SkeinElement(FieldPtr field, int m);

  const FieldPtr& field() const { return field_; }
  int m() const { return m_; }
  const std::map<SpanningDiagram, Cyclo>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const SpanningDiagram& d, const Cyclo& c);

  SkeinElement operator+(const SkeinElement& o) const;
  SkeinElement operator-(const SkeinElement& o) const;
  SkeinElement operator-() const;
  SkeinElement operator*(const Cyclo& c) const;
  bool operator==(const SkeinElement& o) const;
  bool operator!=(const SkeinElement& o) const { return !(*this == o); }

 private:
  FieldPtr field_;
  int m_;
  std::map<SpanningDiagram, Cyclo> terms_;
};

// Choices the evaluator is free to make; results never depend on them.
struct EvalPolicy {
  enum class PairRule { nearest, random };
  enum class ParkSide { right, left };
  PairRule pair_rule = PairRule::nearest;
  ParkSide park_side = ParkSide::right;
  int wiggle = 0;       // extra sideways round trips while moving the cable
  unsigned seed = 0;    // drives random pair selection
};

// Value of a closed diagram. Accepts a closed word (bottom 0, top 0) or an
// operator word with equal bottom and top, which is trace-closed first.
Cyclo evaluate_closed(const Word& w, const EngineParams& P,
                      const EvalPolicy& pol = {});

// Rewrite a word into the spanning basis of its box space (m = bottom + top).
SkeinElement reduce_to_spanning(const Word& w, const EngineParams& P,
                                const EvalPolicy& pol = {});

// The spanning set of the m-slot box space: planar pairings, plus one-box
// diagrams when m >= g and m - g is even.
std::vector<SpanningDiagram> spanning_set(int m, const EngineParams& P);

// Pairing of two basis diagrams: glue b's mirror image to a slot by slot and
// evaluate. Hermitian: pair_value(b, a) is the conjugate.
Cyclo pair_value(const SpanningDiagram& a, const SpanningDiagram& b,
                 const EngineParams& P);
// Sesquilinear inner product, conjugate-linear in y.
Cyclo inner_product(const SkeinElement& x, const SkeinElement& y,
                    const EngineParams& P);
std::vector<std::vector<Cyclo>> gram_matrix(
    const std::vector<SpanningDiagram>& basis, const EngineParams& P);

// A word building the diagram from nothing (bottom 0, top m).
Word word_for_spanning(const SpanningDiagram& d, const EngineParams& P);
// The same diagram as an operator word with h inputs (bottom h, top m-h).
Word word_for_operator(const SpanningDiagram& d, int h, const EngineParams& P);

// The generator box as an element of the g-slot box space.
SkeinElement generator_element(const EngineParams& P);
// A rectangular pairing element viewed as a box-space element.
SkeinElement element_from_tl(const TLElement& x, const EngineParams& P);

// upper after lower, viewing lower as an operator with lower_in inputs and
// upper with upper_in inputs; the glued boundary sizes must agree.
SkeinElement compose_elements(const SkeinElement& upper, int upper_in,
                              const SkeinElement& lower, int lower_in,
                              const EngineParams& P, const EvalPolicy& pol = {});
// Algebra product in an even box space (both factors as m/2 -> m/2 operators).
SkeinElement multiply(const SkeinElement& x, const SkeinElement& y,
                      const EngineParams& P, const EvalPolicy& pol = {});
// Side-by-side placement of two operators.
SkeinElement tensor_elements(const SkeinElement& x, int hx,
                             const SkeinElement& y, int hy,
                             const EngineParams& P, const EvalPolicy& pol = {});

Cyclo element_trace(const SkeinElement& x, const EngineParams& P);
SkeinElement rotate_element(const SkeinElement& x, const EngineParams& P);
SkeinElement adjoint_element(const SkeinElement& x, const EngineParams& P);

}  // namespace skein
