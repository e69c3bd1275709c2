#include "skein/params.hpp"

namespace skein {

Cyclo quantum_int(const FieldPtr& field, long m) {
  Rat unit = m < 0 ? -1 : 1;
  if (m < 0) m = -m;
  std::vector<std::pair<long, Rat>> terms;
  for (long j = 0; j < m; ++j) terms.emplace_back(2 * (m - 1 - 2 * j), unit);
  return Cyclo::from_terms(field, terms);
}

EngineParams make_params(Flavor flavor, int index) {
  EngineParams p;
  p.flavor = flavor;
  p.index = index;
  if (flavor == Flavor::D) {
    if (index < 2) throw SkeinError("D flavor needs index >= 2");
    p.M = 16 * index - 8;
    p.g = 4 * index - 4;
  } else {
    if (index < 3 || index % 2 == 0)
      throw SkeinError("T flavor needs odd index >= 3");
    p.M = 4 * (index + 2);
    p.g = index;
  }
  p.field = field_table(p.M);
  p.q = Cyclo::zeta_pow(p.field, 2);
  p.a = Cyclo::zeta_pow(p.field, p.M / 4 + 1);
  p.delta = quantum_int(p.field, 2);
  if (flavor == Flavor::D) {
    p.omega = Cyclo::zeta_pow(p.field, p.M / 4);   // i
    p.mu = Cyclo::zeta_pow(p.field, -p.M / 4);     // -i
    p.surgery_factor = quantum_int(p.field, 2 * index - 1);
    p.pull_through_plus = p.one();
    p.pull_through_minus = -p.one();
  } else {
    p.omega = p.one();
    p.mu = p.one();
    p.surgery_factor = p.one();
    int z = ((index + 1) / 2) % 2 == 0 ? 1 : -1;
    p.pull_through_plus = p.rational(z);
    p.pull_through_minus = p.rational(z);
  }
  p.pair_coefficient = p.surgery_factor.inverse();
  return p;
}

void check_guardrail(Flavor flavor, int index, bool allow_large) {
  if (allow_large) return;
  if (flavor == Flavor::D && index > kGuardrailMaxD)
    throw GuardrailExceeded("index " + std::to_string(index) +
                            " exceeds the default D limit " +
                            std::to_string(kGuardrailMaxD));
  if (flavor == Flavor::T && index > kGuardrailMaxT)
    throw GuardrailExceeded("index " + std::to_string(index) +
                            " exceeds the default T limit " +
                            std::to_string(kGuardrailMaxT));
}

}  // namespace skein
