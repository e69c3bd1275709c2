#include "skein/interval.hpp"

#include <algorithm>
#include <sstream>

namespace skein {

RealInterval::RealInterval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const RealInterval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RealInterval& RealInterval::operator=(RealInterval o) {
  swap(o);
  return *this;
}

void RealInterval::swap(RealInterval& o) noexcept {
  std::swap(prec_, o.prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RealInterval::~RealInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RealInterval RealInterval::exact_int(long v, mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::from_rat(const Rat& q, mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator+(const RealInterval& o) const {
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator-(const RealInterval& o) const {
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator-() const {
  RealInterval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator*(const RealInterval& o) const {
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  const mpfr_t* a[2] = {&lo_, &hi_};
  const mpfr_t* b[2] = {&o.lo_, &o.hi_};
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t, *a[i], *b[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, *a[i], *b[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

bool RealInterval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool RealInterval::is_positive() const { return mpfr_sgn(lo_) > 0; }

bool RealInterval::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool RealInterval::contains(const RealInterval& o) const {
  return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
}

double RealInterval::width() const {
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_sub(t, hi_, lo_, MPFR_RNDU);
  double w = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return w;
}

double RealInterval::mid() const {
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_add(t, lo_, hi_, MPFR_RNDN);
  mpfr_div_ui(t, t, 2, MPFR_RNDN);
  double m = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return m;
}

std::string RealInterval::to_string(int digits) const {
  char buf[256];
  std::string fmt = "[%." + std::to_string(digits) + "Rg, %." + std::to_string(digits) + "Rg]";
  mpfr_snprintf(buf, sizeof(buf), fmt.c_str(), lo_, hi_);
  return std::string(buf);
}

namespace {

// theta = 2*pi*num/den as an interval, num reduced into [0, den).
RealInterval theta_interval(long num, long den, mpfr_prec_t prec) {
  RealInterval th(prec);
  mpfr_t pi_lo, pi_hi, f_lo, f_hi;
  mpfr_init2(pi_lo, prec);
  mpfr_init2(pi_hi, prec);
  mpfr_init2(f_lo, prec);
  mpfr_init2(f_hi, prec);
  mpfr_const_pi(pi_lo, MPFR_RNDD);
  mpfr_const_pi(pi_hi, MPFR_RNDU);
  mpfr_set_si(f_lo, 2 * num, MPFR_RNDD);
  mpfr_set_si(f_hi, 2 * num, MPFR_RNDU);
  mpfr_div_si(f_lo, f_lo, den, MPFR_RNDD);
  mpfr_div_si(f_hi, f_hi, den, MPFR_RNDU);
  // num >= 0, so lo*lo and hi*hi give the outer bounds
  mpfr_mul(th.mutable_lo(), f_lo, pi_lo, MPFR_RNDD);
  mpfr_mul(th.mutable_hi(), f_hi, pi_hi, MPFR_RNDU);
  mpfr_clears(pi_lo, pi_hi, f_lo, f_hi, (mpfr_ptr) nullptr);
  return th;
}

// May [lo,hi] contain k*pi/2? Conservative test via directed pi bounds.
bool may_contain_half_pi_multiple(const RealInterval& th, int k, mpfr_prec_t prec) {
  mpfr_t m_lo, m_hi;
  mpfr_init2(m_lo, prec);
  mpfr_init2(m_hi, prec);
  mpfr_const_pi(m_lo, MPFR_RNDD);
  mpfr_const_pi(m_hi, MPFR_RNDU);
  mpfr_mul_si(m_lo, m_lo, k, MPFR_RNDD);
  mpfr_mul_si(m_hi, m_hi, k, MPFR_RNDU);
  mpfr_div_ui(m_lo, m_lo, 2, MPFR_RNDD);
  mpfr_div_ui(m_hi, m_hi, 2, MPFR_RNDU);
  bool hit = mpfr_cmp(th.lo(), m_hi) <= 0 && mpfr_cmp(th.hi(), m_lo) >= 0;
  mpfr_clears(m_lo, m_hi, (mpfr_ptr) nullptr);
  return hit;
}

enum class TrigFun { cos, sin };

RealInterval trig_frac(TrigFun fun, long num, long den, mpfr_prec_t prec) {
  num %= den;
  if (num < 0) num += den;
  RealInterval th = theta_interval(num, den, prec);
  RealInterval r(prec);
  mpfr_t v;
  mpfr_init2(v, prec);
  bool first = true;
  for (const mpfr_t* end : {&th.lo(), &th.hi()}) {
    if (fun == TrigFun::cos)
      mpfr_cos(v, *end, MPFR_RNDD);
    else
      mpfr_sin(v, *end, MPFR_RNDD);
    mpfr_nextbelow(v);
    if (first || mpfr_cmp(v, r.lo()) < 0) mpfr_set(r.mutable_lo(), v, MPFR_RNDD);
    if (fun == TrigFun::cos)
      mpfr_cos(v, *end, MPFR_RNDU);
    else
      mpfr_sin(v, *end, MPFR_RNDU);
    mpfr_nextabove(v);
    if (first || mpfr_cmp(v, r.hi()) > 0) mpfr_set(r.mutable_hi(), v, MPFR_RNDU);
    first = false;
  }
  mpfr_clear(v);
  // Account for interior extrema: k*pi/2 for k = 0..4 covers [0, 2pi].
  for (int k = 0; k <= 4; ++k) {
    if (!may_contain_half_pi_multiple(th, k, prec)) continue;
    int value;  // cos: 1,0,-1,0,1 ; sin: 0,1,0,-1,0
    if (fun == TrigFun::cos)
      value = (k == 0 || k == 4) ? 1 : (k == 2 ? -1 : 0);
    else
      value = (k == 1) ? 1 : (k == 3 ? -1 : 0);
    if (value > 0 && mpfr_cmp_si(r.hi(), 1) < 0) mpfr_set_si(r.mutable_hi(), 1, MPFR_RNDU);
    if (value < 0 && mpfr_cmp_si(r.lo(), -1) > 0) mpfr_set_si(r.mutable_lo(), -1, MPFR_RNDD);
  }
  return r;
}

}  // namespace

RealInterval cospi2_frac(long num, long den, mpfr_prec_t prec) {
  return trig_frac(TrigFun::cos, num, den, prec);
}

RealInterval sinpi2_frac(long num, long den, mpfr_prec_t prec) {
  return trig_frac(TrigFun::sin, num, den, prec);
}

std::string ComplexInterval::to_string(int digits) const {
  std::ostringstream out;
  out << re.to_string(digits) << " + " << im.to_string(digits) << "*i";
  return out.str();
}

bool ComplexInterval::contains(const ComplexInterval& o) const {
  return re.contains(o.re) && im.contains(o.im);
}

ComplexInterval embed_numeric(const Cyclo& x, mpfr_prec_t precision) {
  const auto& field = x.field();
  RealInterval re(precision), im(precision);
  for (int j = 0; j < field->degree(); ++j) {
    const Rat& c = x.coeffs()[j];
    if (c == 0) continue;
    RealInterval cv = RealInterval::from_rat(c, precision);
    re = re + cv * cospi2_frac(j, field->M(), precision);
    im = im + cv * sinpi2_frac(j, field->M(), precision);
  }
  return ComplexInterval{std::move(re), std::move(im)};
}

Sign sign_real(const Cyclo& x) {
  if (!x.is_real()) throw NotReal("sign_real on a non-real value");
  if (x.is_zero()) return Sign::zero;
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    ComplexInterval e = embed_numeric(x, prec);
    if (e.re.is_positive()) return Sign::positive;
    if (e.re.is_negative()) return Sign::negative;
    if (prec > (mpfr_prec_t)1 << 22)
      throw SkeinError("sign_real failed to converge");
  }
}

}  // namespace skein
