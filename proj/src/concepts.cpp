#include "concepts.hpp"

#include <algorithm>

namespace dolce::concepts {

namespace {

bool cf_has_exact(const ClosedKB& ckb, const std::string& x, const std::string& c,
                  const InstantSet& t) {
    auto it = ckb.cf.find({x, c});
    if (it == ckb.cf.end()) return false;
    return std::find(it->second.begin(), it->second.end(), t) != it->second.end();
}

}  // namespace

std::optional<ArCounterexample> anti_rigidity_counterexample(const ClosedKB& ckb,
                                                             const std::string& concept_id) {
    std::vector<InstantSet> regions = ckb.convex_regions();
    for (const auto& [pair, classified_at] : ckb.cf) {
        if (pair.second != concept_id) continue;
        const std::string& y = pair.first;
        for (const InstantSet& s : classified_at) {
            bool witness = false;
            for (const InstantSet& t : regions) {
                if (!ckb.present(y, t)) continue;
                if (!cf_has_exact(ckb, y, concept_id, t)) {
                    witness = true;
                    break;
                }
            }
            if (!witness) return ArCounterexample{y, s};
        }
    }
    return std::nullopt;
}

bool is_anti_rigid(const ClosedKB& ckb, const std::string& concept_id) {
    return !anti_rigidity_counterexample(ckb, concept_id).has_value();
}

namespace {

void check_a11(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "CF" || !l.positive) continue;
        const std::string& x = l.args[0].name;
        const std::string& y = l.args[1].name;
        bool x_ok = ckb.kb.instance_of(x, "ED") || ckb.kb.instance_of(x, "PD");
        bool y_ok = ckb.kb.instance_of(y, "C");
        if (!x_ok || !y_ok)
            out.push_back(make_violation("A11", {{"x", x}, {"y", y}, {"t", l.args[2].name}}));
    }
}

bool cf_literal_typed(const ClosedKB& ckb, const Literal& l) {
    const std::string& x = l.args[0].name;
    const std::string& y = l.args[1].name;
    return (ckb.kb.instance_of(x, "ED") || ckb.kb.instance_of(x, "PD")) &&
           ckb.kb.instance_of(y, "C");
}

void check_a12(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "CF" || !l.positive || !cf_literal_typed(ckb, l)) continue;
        if (!ckb.present(l.args[0].name, l.args[2].time))
            out.push_back(make_violation(
                "A12", {{"x", l.args[0].name}, {"y", l.args[1].name}, {"t", l.args[2].name}}));
    }
}

void check_a14(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const auto& [pair, regions] : ckb.cf) {
        const auto& [x, y] = pair;
        if (x > y) continue;  // report each unordered pair once
        for (const InstantSet& s : regions)
            if (cf_has_exact(ckb, y, x, s))
                out.push_back(
                    make_violation("A14", {{"x", x}, {"y", y}, {"t", ckb.render_region(s)}}));
    }
}

void check_a15(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const auto& [xy, regions_xy] : ckb.cf) {
        const auto& [x, y] = xy;
        for (const InstantSet& s : regions_xy) {
            for (const auto& [yz, regions_yz] : ckb.cf) {
                if (yz.first != y) continue;
                const std::string& z = yz.second;
                if (std::find(regions_yz.begin(), regions_yz.end(), s) == regions_yz.end())
                    continue;
                if (cf_has_exact(ckb, x, z, s))
                    out.push_back(make_violation(
                        "A15", {{"x", x}, {"y", y}, {"z", z}, {"t", ckb.render_region(s)}}));
            }
        }
    }
}

void check_roles(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    for (const auto& [id, e] : ckb.kb.entities) {
        if (e.derived || !ckb.kb.instance_of(id, "RL")) continue;
        if (label == "D3-FD" && !ckb.kb.flags_of(id).founded)
            out.push_back(make_violation("D3-FD", {{"x", id}}));
        if (label == "D3-AR") {
            auto cex = anti_rigidity_counterexample(ckb, id);
            if (cex)
                out.push_back(make_violation(
                    "D3-AR",
                    {{"x", id}, {"y", cex->classified}, {"t", ckb.render_region(cex->at)}}));
        }
    }
}

void check_functional(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const auto& [id, fl] : ckb.kb.flags) {
        if (!fl.functional) continue;
        // Classified sets per instant; overlapping classifications clash.
        std::map<Pair, InstantSet> clashes;  // (x, x2) sorted -> instants
        for (const auto& [p1, regions1] : ckb.cf) {
            if (p1.second != id) continue;
            for (const auto& [p2, regions2] : ckb.cf) {
                if (p2.second != id || p1.first >= p2.first) continue;
                InstantSet m1, m2;
                for (const InstantSet& s : regions1) m1.add(s);
                for (const InstantSet& s : regions2) m2.add(s);
                InstantSet both = m1.intersect(m2);
                if (!both.empty()) clashes[{p1.first, p2.first}].add(both);
            }
        }
        for (const auto& [pair, instants] : clashes)
            for (auto [lo, hi] : instants.runs())
                out.push_back(make_violation("F12-functional",
                                             {{"role", id},
                                              {"x", pair.first},
                                              {"y", pair.second},
                                              {"t", ckb.render_region(InstantSet::range(lo, hi))}}));
    }
}

void check_plan(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    for (const Pair& ep : ckb.executes) {
        bool typed = ckb.kb.instance_of(ep.first, "PD") && ckb.kb.instance_of(ep.second, "C");
        if (label == "F37-plan" && !typed)
            out.push_back(make_violation("F37-plan", {{"x", ep.first}, {"y", ep.second}}));
        if (label == "F37-plan-presence" && typed &&
            ckb.kb.flags_of(ep.second).presence_coupled) {
            auto it = ckb.quale.find(ep.first);
            if (it == ckb.quale.end() || it->second.empty()) continue;
            if (!ckb.present(ep.second, it->second))
                out.push_back(
                    make_violation("F37-plan-presence", {{"x", ep.first}, {"y", ep.second}}));
        }
    }
}

void check_evolution(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    if (label == "F43-evolution") {
        for (const RequiresDef& rq : ckb.kb.requires_decls) {
            for (const auto& [pair, regions] : ckb.cf) {
                if (pair.second != rq.subject) continue;
                if (std::find(regions.begin(), regions.end(), rq.time) == regions.end()) continue;
                if (!cf_has_exact(ckb, pair.first, rq.required, rq.time))
                    out.push_back(make_violation("F43-evolution", {{"x", pair.first},
                                                                   {"c", rq.subject},
                                                                   {"req", rq.required},
                                                                   {"t", rq.time_display}}));
            }
        }
    } else if (label == "F43-distinct") {
        for (std::size_t i = 0; i < ckb.kb.requires_decls.size(); ++i)
            for (std::size_t j = i + 1; j < ckb.kb.requires_decls.size(); ++j) {
                const RequiresDef& a = ckb.kb.requires_decls[i];
                const RequiresDef& b = ckb.kb.requires_decls[j];
                if (a.subject != b.subject || a.time == b.time) continue;
                if (a.required == b.required)
                    out.push_back(make_violation("F43-distinct", {{"c", a.subject},
                                                                  {"req", a.required},
                                                                  {"t1", a.time_display},
                                                                  {"t2", b.time_display}}));
            }
    }
}

}  // namespace

void run_checks(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    if (label == "A11") check_a11(ckb, out);
    else if (label == "A12") check_a12(ckb, out);
    else if (label == "A14") check_a14(ckb, out);
    else if (label == "A15") check_a15(ckb, out);
    else if (label == "D3-AR" || label == "D3-FD") check_roles(ckb, label, out);
    else if (label == "F12-functional") check_functional(ckb, out);
    else if (label == "F37-plan" || label == "F37-plan-presence") check_plan(ckb, label, out);
    else if (label == "F43-evolution" || label == "F43-distinct") check_evolution(ckb, label, out);
}

}  // namespace dolce::concepts
