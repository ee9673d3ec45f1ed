#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "kb.hpp"

namespace dolce {

class CloseError : public std::runtime_error {
public:
    explicit CloseError(const std::string& what) : std::runtime_error(what) {}
};

struct Options {
    bool add_life_events = false;  // one life perdurant per asserted endurant
    bool skolemize_sums = false;   // create entities for unresolved sum terms
    bool auto_tl = false;          // create TL qualities for perdurants lacking one
    std::vector<std::string> enable_labels;   // --strict-labels
    std::vector<std::string> disable_labels;  // --disable
    std::vector<std::string> mutations;       // applied in order before closure
};

struct Violation {
    std::string label;
    std::vector<std::pair<std::string, std::string>> witnesses;
    std::string message;

    bool operator==(const Violation&) const = default;
    bool operator<(const Violation& o) const {
        return std::tie(label, witnesses, message) < std::tie(o.label, o.witnesses, o.message);
    }
};

using Pair = std::pair<std::string, std::string>;
using PairMask = std::map<Pair, InstantSet>;
using PairSet = std::set<Pair>;

inline const InstantSet& mask_of(const PairMask& m, const std::string& a, const std::string& b) {
    static const InstantSet empty;
    auto it = m.find({a, b});
    return it == m.end() ? empty : it->second;
}

// A resolved quale attestation: ql(position, quality [, time]).
struct Attestation {
    std::string quality;
    Term position;                   // Point, SpaceRegion or Time
    std::optional<InstantSet> time;  // absent for ql/2
    std::string time_display;
};

// The deterministic fixpoint of the registered closure rules over an
// immutable knowledge base. Entities created by closure (life events,
// skolemized sums) live in kb.entities with derived = true.
struct ClosedKB {
    KnowledgeBase kb;  // post-mutation copy, extended with derived entities
    Options opts;

    std::map<std::string, InstantSet> quale;  // temporal quale per entity

    PairSet p2_asserted;   // atemporal parthood, as asserted
    PairSet p2_derived;    // skolemized sum membership
    PairSet p2;            // closed (reflexivity over PD/AB + transitivity)
    PairMask p3_asserted;
    PairMask p3_reflexive;  // asserted + presence-indexed reflexivity
    PairMask p3_derived;    // skolemized sum membership
    PairMask p3;            // closed

    PairMask k_asserted;
    PairMask k_trans;  // asserted + transitivity only
    PairMask k;        // full: transitivity + distribution over covers

    PairMask pc;  // asserted + constant-participation expansion
    PairSet pcc;

    // Classification holds at exactly the asserted regions.
    std::map<Pair, std::vector<InstantSet>> cf;  // (classified, concept) -> regions

    std::map<std::string, std::vector<std::string>> qt_bearers;    // quality -> bearers
    std::map<std::string, std::vector<std::string>> qt_qualities;  // bearer -> qualities
    std::vector<Attestation> attestations;

    std::vector<Pair> executes;  // (perdurant, plan), sum terms resolved

    std::map<std::string, std::string> iota;  // canonical sum key -> entity
    std::vector<std::string> warnings;

    bool present(const std::string& e, const InstantSet& t) const {
        auto it = quale.find(e);
        return it != quale.end() && !t.empty() && t.subset_of(it->second);
    }
    bool p3_holds(const std::string& x, const std::string& y, const InstantSet& t) const {
        return !t.empty() && t.subset_of(mask_of(p3, x, y));
    }
    bool k_holds(const std::string& x, const std::string& y, const InstantSet& t) const {
        return !t.empty() && t.subset_of(mask_of(k, x, y));
    }
    bool cf_holds(const std::string& x, const std::string& c, const InstantSet& t) const;
    std::vector<InstantSet> convex_regions() const;  // all convex regions of the timeline

    std::string render_region(const InstantSet& s) const { return kb.render_region(s); }
};

// Runs mutations, expands the definitional relations and saturates the
// closure rules. Throws CloseError when a sum term required by an asserted
// literal cannot be resolved, and SyntaxError for malformed mutations.
ClosedKB close_kb(KnowledgeBase kb, Options opts);

// Every registered check, deterministically ordered by (label, witnesses).
std::vector<Violation> check_all(const ClosedKB& ckb);

// Re-evaluates the axiom instance bound by a violation's witnesses;
// returns true when the violation is genuine.
bool replay(const ClosedKB& ckb, const Violation& v);

struct LabelInfo {
    std::string label;
    bool default_on;
    bool is_check;        // false: definitional label, explain-only
    std::string formula;  // rendering used by `explain`
    std::string note;
};
const std::vector<LabelInfo>& label_registry();
const LabelInfo* find_label(const std::string& label);
bool label_enabled(const Options& opts, const std::string& label);

Violation make_violation(const std::string& label,
                         std::vector<std::pair<std::string, std::string>> witnesses);

// P over space members: point-in-region, region-in-space and friends.
bool eval_space_part(const KnowledgeBase& kb, const Term& a, const Term& b);

// Pattern query: "(K ?w T t)". Returns one line per solution, variables in
// pattern order, e.g. "?w=sum:W1+...". A ground pattern yields ["true"] or {}.
std::vector<std::string> run_query(const ClosedKB& ckb, const std::string& pattern);

std::string render_text_report(const std::vector<Violation>& vs);
std::string render_json_report(const std::vector<Violation>& vs);

}  // namespace dolce
