#pragma once

#include "engine.hpp"

namespace dolce::presence {

// Dd30/Dd31/Dd35 + merged PRE assertions: fills ckb.quale and the
// participation masks (including constant-participation expansion and,
// under --add-life-events, one life perdurant per asserted endurant).
void compute_quales(ClosedKB& ckb);

// Dd63: y is present somewhere and x participates at every instant of it.
bool constant_participation(const ClosedKB& ckb, const std::string& x, const std::string& y);

// Temporal quale as an operation; throws CloseError when undefined for the
// entity (no attested or derivable quale).
InstantSet temporal_quale(const ClosedKB& ckb, const std::string& e);

void run_checks(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out);

}  // namespace dolce::presence
