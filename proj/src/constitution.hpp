#pragma once

#include "engine.hpp"

namespace dolce::constitution {

// Fixpoint of the two derivation rules: transitivity, and distribution over
// a declared component cover (K of every component at t lifts to K of the
// components' sum at t). Fills k_asserted, k_trans and k; unresolved
// distribution sums become warnings unless --skolemize-sums is set.
void saturate(ClosedKB& ckb);

void run_checks(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out);

}  // namespace dolce::constitution
