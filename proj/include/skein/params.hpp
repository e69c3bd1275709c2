#pragma once

#include "skein/cyclo.hpp"

namespace skein {

enum class Flavor { D, T };

// Quantum integer [m] = (q^m - q^{-m})/(q - q^{-1}) with q = zeta^2,
// expanded as the balanced power sum so no division is needed.
Cyclo quantum_int(const FieldPtr& field, long m);

// All exact constants the evaluator needs, fixed by flavor and index.
struct EngineParams {
  Flavor flavor = Flavor::D;
  int index = 0;  // D: the n with 4n-4 generator strands; T: the odd k
  int M = 0;      // cyclotomic order of the ambient field
  int g = 0;      // strand count of the generator box
  FieldPtr field;
  Cyclo q;                   // zeta^2
  Cyclo a;                   // crossing coefficient i*q^{1/2}
  Cyclo delta;               // closed loop value [2]
  Cyclo omega;               // one-click rotation eigenvalue of the generator
  Cyclo mu;                  // inverse rotation eigenvalue; per-cap phase when
                             // two generators cancel, and the phase per leg
                             // click of the fan joining a glued pair
  Cyclo pair_coefficient;    // normalization 1/<S,S>
  Cyclo surgery_factor;      // <S,S>; multiplies in when a generator pair fuses
  Cyclo pull_through_plus;   // sign when a strand passes above the generator
  Cyclo pull_through_minus;  // sign when a strand passes below the generator

  Cyclo qint(long m) const { return quantum_int(field, m); }
  Cyclo rational(const Rat& r) const { return Cyclo::from_rational(field, r); }
  Cyclo zero() const { return Cyclo::zero(field); }
  Cyclo one() const { return Cyclo::one(field); }
  Cyclo zeta(long e) const { return Cyclo::zeta_pow(field, e); }
};

// D: index n >= 2. T: odd index k >= 3.
EngineParams make_params(Flavor flavor, int index);

constexpr int kGuardrailMaxD = 4;
constexpr int kGuardrailMaxT = 9;

// Throws GuardrailExceeded for indices past the defaults unless allow_large.
void check_guardrail(Flavor flavor, int index, bool allow_large);

}  // namespace skein
