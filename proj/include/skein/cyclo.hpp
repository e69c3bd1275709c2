#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "skein/errors.hpp"

namespace skein {

using Rat = mpq_class;

// Precomputed data for Q(zeta_M): the power basis 1, z, ..., z^{phi(M)-1}
// together with reduction rows expressing z^e for e in [phi(M), M).
class FieldTable {
 public:
  explicit FieldTable(int M);

  int M() const { return M_; }
  int degree() const { return degree_; }

  // z^e (e arbitrary, reduced mod M) as a coefficient vector over the basis.
  const std::vector<Rat>& power(int e) const;

 private:
  int M_;
  int degree_;
  // rows_[e] for e in [0, M): coefficients of z^e over the power basis.
  std::vector<std::vector<Rat>> rows_;
};

using FieldPtr = std::shared_ptr<const FieldTable>;

FieldPtr field_table(int M);  // process-wide memo, thread-safe

// An element of Q(zeta_M) in canonical power-basis form. Immutable value type.
class Cyclo {
 public:
  Cyclo() = default;  // invalid until assigned
  Cyclo(FieldPtr field, std::vector<Rat> coeffs);

  static Cyclo zero(const FieldPtr& field);
  static Cyclo one(const FieldPtr& field);
  static Cyclo from_rational(const FieldPtr& field, const Rat& r);
  static Cyclo zeta_pow(const FieldPtr& field, long e);
  // sum of coeff * zeta^exponent
  static Cyclo from_terms(const FieldPtr& field,
                          const std::vector<std::pair<long, Rat>>& terms);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator-() const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator*(const Rat& r) const;
  Cyclo inverse() const;  // throws SkeinError on zero
  Cyclo conj() const;     // zeta -> zeta^{-1}

  bool is_real() const { return *this == conj(); }

  // "3/2 + -1/3*z^5" style canonical form; "0" for zero.
  std::string to_string() const;

  size_t hash() const;

 private:
  void check_same_field(const Cyclo& o) const;

  FieldPtr field_;
  std::vector<Rat> c_;
};

inline Cyclo operator*(const Rat& r, const Cyclo& x) { return x * r; }

}  // namespace skein
