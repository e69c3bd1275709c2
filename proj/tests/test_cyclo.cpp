#include <cmath>
#include <random>

#include "doctest.h"
#include "skein/interval.hpp"
#include "skein/params.hpp"

using namespace skein;

namespace {

Cyclo random_elem(const FieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rat> c(f->degree());
  for (auto& x : c) {
    x = Rat(num(rng), den(rng));
    x.canonicalize();
  }
  return Cyclo(f, std::move(c));
}

}  // namespace

TEST_CASE("cyclotomic field basics at order 24") {
  auto f = field_table(24);
  CHECK(f->degree() == 8);
  auto z = Cyclo::zeta_pow(f, 1);
  CHECK(Cyclo::zeta_pow(f, 24) == Cyclo::one(f));
  CHECK(Cyclo::zeta_pow(f, 12) == -Cyclo::one(f));
  auto i = Cyclo::zeta_pow(f, 6);
  CHECK(i * i == -Cyclo::one(f));
  // Phi_24 = x^8 - x^4 + 1, so z^8 = z^4 - 1.
  CHECK(Cyclo::zeta_pow(f, 8) == Cyclo::zeta_pow(f, 4) - Cyclo::one(f));
  CHECK(z * Cyclo::zeta_pow(f, 23) == Cyclo::one(f));
}

TEST_CASE("field axioms on random elements") {
  for (int M : {24, 40, 28}) {
    auto f = field_table(M);
    std::mt19937 rng(12345 + M);
    for (int t = 0; t < 20; ++t) {
      Cyclo a = random_elem(f, rng);
      Cyclo b = random_elem(f, rng);
      Cyclo c = random_elem(f, rng);
      CHECK(a * b == b * a);
      CHECK((a + b) * c == a * c + b * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a - a == Cyclo::zero(f));
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == Cyclo::one(f));
      }
      CHECK((a * b).conj() == a.conj() * b.conj());
      CHECK((a + b).conj() == a.conj() + b.conj());
      CHECK(a.conj().conj() == a);
    }
  }
}

TEST_CASE("quantum integers at the first D parameter") {
  auto p = make_params(Flavor::D, 2);
  auto f = p.field;
  CHECK(p.M == 24);
  CHECK(p.g == 4);
  CHECK(p.qint(1) == p.one());
  CHECK(p.qint(3) == p.rational(2));
  CHECK(p.qint(5) == p.one());
  CHECK(p.qint(6).is_zero());
  CHECK(p.qint(2) * p.qint(2) == p.rational(3));  // [2] = sqrt 3
  CHECK(p.qint(4) == p.qint(2));
  for (int m = 0; m <= 6; ++m) {
    CHECK(p.qint(m) == p.qint(6 - m));
    CHECK(p.qint(-m) == -p.qint(m));
    CHECK(p.qint(m).is_real());
  }
  CHECK(p.delta == p.qint(2));
  // [m][2] = [m-1] + [m+1]
  for (int m = 1; m <= 8; ++m)
    CHECK(p.qint(m) * p.qint(2) == p.qint(m - 1) + p.qint(m + 1));
  CHECK(p.surgery_factor == p.qint(3));
  CHECK(p.pair_coefficient * p.surgery_factor == p.one());
  CHECK(p.omega * p.omega == -p.one());
  CHECK(p.mu == p.omega.inverse());
  CHECK(p.a == p.omega * p.zeta(1));
  // Kauffman sanity: A^2 + A^{-2} = -delta would be the negative convention;
  // here A = i q^{1/2} gives A^2 = -q and A^2 + A^{-2} = -(q + q^{-1}).
  CHECK(p.a * p.a == -p.q);
  CHECK(p.a * p.a + (p.a * p.a).inverse() == -p.delta);
}

TEST_CASE("quantum integers at larger parameters") {
  auto p3 = make_params(Flavor::D, 3);
  CHECK(p3.M == 40);
  CHECK(p3.g == 8);
  CHECK(p3.qint(10).is_zero());
  CHECK(p3.qint(9) == p3.one());
  for (int m = 0; m <= 10; ++m) CHECK(p3.qint(m) == p3.qint(10 - m));

  auto t5 = make_params(Flavor::T, 5);
  CHECK(t5.M == 28);
  CHECK(t5.g == 5);
  CHECK(t5.qint(7).is_zero());
  CHECK(t5.qint(6) == t5.one());
  CHECK(t5.pull_through_plus == -t5.one());
  CHECK(t5.pull_through_minus == -t5.one());
  CHECK(t5.omega == t5.one());

  auto t7 = make_params(Flavor::T, 7);
  CHECK(t7.pull_through_plus == t7.one());
  CHECK(t7.pull_through_minus == t7.one());
  CHECK(t7.qint(9).is_zero());
  CHECK(t7.qint(8) == t7.one());
}

TEST_CASE("parameter validation and guardrails") {
  CHECK_THROWS_AS(make_params(Flavor::D, 1), SkeinError);
  CHECK_THROWS_AS(make_params(Flavor::T, 4), SkeinError);
  CHECK_THROWS_AS(make_params(Flavor::T, 1), SkeinError);
  CHECK_NOTHROW(check_guardrail(Flavor::D, 4, false));
  CHECK_THROWS_AS(check_guardrail(Flavor::D, 5, false), GuardrailExceeded);
  CHECK_NOTHROW(check_guardrail(Flavor::D, 5, true));
  CHECK_THROWS_AS(check_guardrail(Flavor::T, 11, false), GuardrailExceeded);
}

TEST_CASE("numeric embedding encloses known values") {
  auto p = make_params(Flavor::D, 2);
  auto e3 = embed_numeric(p.qint(3));
  CHECK(e3.re.contains(RealInterval::exact_int(2, 64)));
  CHECK(e3.im.contains_zero());
  CHECK(e3.re.width() < 1e-20);

  auto e2 = embed_numeric(p.qint(2));
  CHECK(std::abs(e2.re.mid() - std::sqrt(3.0)) < 1e-12);
  auto esq = embed_numeric(p.qint(2) * p.qint(2));
  CHECK(esq.re.contains(RealInterval::exact_int(3, 64)));

  auto ei = embed_numeric(p.omega);
  CHECK(ei.re.contains_zero());
  CHECK(ei.im.contains(RealInterval::exact_int(1, 64)));

  // Enclosure arithmetic is consistent: the product of enclosures of x
  // contains a much tighter direct enclosure of x*x.
  auto x = p.qint(2) + p.omega;
  auto ex = embed_numeric(x, 128);
  auto tight = embed_numeric(x * x, 512);
  auto prod_re = ex.re * ex.re - ex.im * ex.im;
  auto prod_im = ex.re * ex.im + ex.im * ex.re;
  CHECK(prod_re.contains(tight.re));
  CHECK(prod_im.contains(tight.im));
}

TEST_CASE("exact signs of real values") {
  auto p = make_params(Flavor::D, 2);
  for (int m = 1; m <= 5; ++m) CHECK(sign_real(p.qint(m)) == Sign::positive);
  CHECK(sign_real(p.qint(6)) == Sign::zero);
  CHECK(sign_real(-p.qint(2)) == Sign::negative);
  CHECK(sign_real(p.qint(2) - p.qint(3)) == Sign::negative);  // sqrt3 < 2
  CHECK_THROWS_AS(sign_real(p.omega), NotReal);
  // Tiny but nonzero: [2] - 17320508075688772935/10^19 ~ 2.7e-21.
  Rat approx(Rat(mpz_class("17320508075688772935"), mpz_class("10000000000000000000")));
  approx.canonicalize();
  CHECK(sign_real(p.qint(2) - p.rational(approx)) == Sign::positive);
}

TEST_CASE("interval endpoints behave") {
  auto c0 = cospi2_frac(0, 4, 64);
  CHECK(c0.contains(RealInterval::exact_int(1, 64)));
  auto c4 = cospi2_frac(1, 4, 64);  // cos(pi/2) = 0
  CHECK(c4.contains_zero());
  CHECK(c4.width() < 1e-15);
  auto s4 = sinpi2_frac(1, 4, 64);  // sin(pi/2) = 1
  CHECK(s4.contains(RealInterval::exact_int(1, 64)));
  auto c8 = cospi2_frac(1, 8, 64);  // cos(pi/4)
  CHECK(std::abs(c8.mid() - std::sqrt(0.5)) < 1e-15);
  auto cneg = cospi2_frac(-1, 8, 64);
  CHECK(std::abs(cneg.mid() - c8.mid()) < 1e-15);

  auto a = RealInterval::from_rat(Rat(1, 3), 64);
  auto b = RealInterval::from_rat(Rat(-2, 7), 64);
  CHECK((a * b).is_negative());
  CHECK((a + b).is_positive());  // 1/3 - 2/7 = 1/21
  CHECK((-a).is_negative());
  CHECK((a - a).contains_zero());
}

TEST_CASE("string forms") {
  auto f = field_table(24);
  CHECK(Cyclo::zero(f).to_string() == "0");
  CHECK(Cyclo::one(f).to_string() == "1");
  auto x = Cyclo::from_terms(f, {{0, Rat(3, 2)}, {5, Rat(-1, 3)}});
  CHECK(x.to_string() == "3/2 + -1/3*z^5");
  CHECK(Cyclo::zeta_pow(f, 1).to_string() == "1*z");
}
