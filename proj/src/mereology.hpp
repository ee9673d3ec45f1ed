#pragma once

#include "engine.hpp"

namespace dolce::mereology {

// Atemporal overlap on the closed parthood.
bool overlap(const ClosedKB& ckb, const std::string& x, const std::string& y);
// Temporary overlap Dd21: some z is part of both at t.
bool overlap_at(const ClosedKB& ckb, const std::string& x, const std::string& y, const InstantSet& t);
// Temporary proper part Dd20: P(x,y,t) and not P(y,x,t).
bool proper_part(const ClosedKB& ckb, const std::string& x, const std::string& y, const InstantSet& t);

enum class SumResolution { Resolved, NoWitness, Ambiguous };
struct SumResult {
    SumResolution status;
    std::string entity;
};
// Iota resolution of a binary/n-ary sum (Dd26) or fusion (Dd27) against the
// declared domain: the unique entity whose overlap profile matches the
// operands' union profile. `temporal` selects the time-indexed reading.
SumResult resolve_sum(const ClosedKB& ckb, const std::vector<std::string>& operands, bool temporal);

// True when the resolved entity's overlap profile matches the defining
// biconditional exactly (used by tests to audit resolutions).
bool sum_profile_matches(const ClosedKB& ckb, const std::string& z,
                         const std::vector<std::string>& operands, bool temporal);

// Closure passes driven by close_kb.
void saturate_atemporal(ClosedKB& ckb);
void saturate_temporal(ClosedKB& ckb);

// Creates (or returns the cached) entity realizing a sum term, wiring its
// parthood atoms and quale from the operands, then re-saturates. Only called
// under --skolemize-sums.
std::string skolemize_sum(ClosedKB& ckb, const std::vector<std::string>& operands, bool temporal);

// Standalone GEM audit over a bare parthood structure; lets tests run the
// check against raw relations without the closure pipeline.
struct GemInput {
    std::vector<std::string> atemporal_domain;  // perdurants/abstracts
    PairSet p2;
    std::vector<std::string> temporal_domain;  // endurants
    PairMask p3;
    std::map<std::string, InstantSet> presence;
    int timeline = 0;  // instants are 0..timeline-1
    bool check_ssp = true;
};
std::vector<Violation> check_gem_structure(const GemInput& in);

void run_checks(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out);

}  // namespace dolce::mereology
