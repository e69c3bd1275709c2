#pragma once

#include <mpfr.h>

#include <string>

#include "skein/cyclo.hpp"

namespace skein {

// Closed interval with MPFR endpoints; every operation rounds the lower
// endpoint down and the upper endpoint up, so enclosures are preserved.
class RealInterval {
 public:
  explicit RealInterval(mpfr_prec_t prec = 64);
  RealInterval(const RealInterval& o);
  RealInterval(RealInterval&& o) noexcept;
  RealInterval& operator=(RealInterval o);
  ~RealInterval();

  static RealInterval exact_int(long v, mpfr_prec_t prec);
  static RealInterval from_rat(const Rat& r, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return prec_; }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }
  // Internal plumbing for the trig kernels; endpoints must keep lo <= hi.
  mpfr_ptr mutable_lo() { return lo_; }
  mpfr_ptr mutable_hi() { return hi_; }

  RealInterval operator+(const RealInterval& o) const;
  RealInterval operator-(const RealInterval& o) const;
  RealInterval operator*(const RealInterval& o) const;
  RealInterval operator-() const;

  bool contains_zero() const;
  bool is_positive() const;  // strictly
  bool is_negative() const;  // strictly
  bool contains(const RealInterval& o) const;  // o subset of this
  double width() const;
  double mid() const;
  std::string to_string(int digits = 17) const;

  void swap(RealInterval& o) noexcept;

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

// Enclosures of cos(2*pi*num/den) and sin(2*pi*num/den).
RealInterval cospi2_frac(long num, long den, mpfr_prec_t prec);
RealInterval sinpi2_frac(long num, long den, mpfr_prec_t prec);

struct ComplexInterval {
  RealInterval re, im;
  std::string to_string(int digits = 17) const;
  bool contains(const ComplexInterval& o) const;
};

// Certified enclosure of the complex value of x at precision bits.
ComplexInterval embed_numeric(const Cyclo& x, mpfr_prec_t precision = 128);

enum class Sign { negative = -1, zero = 0, positive = 1 };

// Exact sign of a real cyclotomic number; throws NotReal otherwise.
Sign sign_real(const Cyclo& x);

}  // namespace skein
