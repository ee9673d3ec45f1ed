#pragma once

#include "engine.hpp"

namespace dolce::concepts {

// D1, concept-level reading: everything the concept classifies is, at some
// convex region where it is present, not classified by it.
bool is_anti_rigid(const ClosedKB& ckb, const std::string& concept_id);

// First counterexample to anti-rigidity, if any: a classified entity and the
// classification region for which no witness region exists.
struct ArCounterexample {
    std::string classified;
    InstantSet at;
};
std::optional<ArCounterexample> anti_rigidity_counterexample(const ClosedKB& ckb,
                                                             const std::string& concept_id);

void run_checks(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out);

}  // namespace dolce::concepts
