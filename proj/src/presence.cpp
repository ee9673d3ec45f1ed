#include "presence.hpp"

namespace dolce::presence {

void compute_quales(ClosedKB& ckb) {
    // Asserted PRE merges straight into the quale, so Dd40 stays the single
    // definition of presence.
    for (const auto& [id, e] : ckb.kb.entities) ckb.quale[id];  // materialize
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "PRE" || !l.positive) continue;
        ckb.quale[l.args[0].name].add(l.args[1].time);
    }

    // Perdurants: the quale of their time-location quality.
    for (const Attestation& a : ckb.attestations) {
        if (a.position.kind != Term::Kind::Time || a.time.has_value()) continue;
        if (!ckb.kb.instance_of(a.quality, "TL")) continue;
        auto it = ckb.qt_bearers.find(a.quality);
        if (it == ckb.qt_bearers.end()) continue;
        for (const std::string& bearer : it->second)
            if (ckb.kb.instance_of(bearer, "PD")) ckb.quale[bearer].add(a.position.time);
    }

    // Endurants: the sum of their participation times.
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "PC" || !l.positive) continue;
        const std::string& x = l.args[0].name;
        if (ckb.kb.instance_of(x, "ED")) ckb.quale[x].add(l.args[2].time);
        ckb.pc[{x, l.args[1].name}].add(l.args[2].time);
    }

    // Constant participation spans the perdurant's whole presence.
    for (const Pair& xy : ckb.pcc) {
        const InstantSet& qy = ckb.quale[xy.second];
        if (qy.empty()) continue;
        ckb.pc[{xy.first, xy.second}].add(qy);
        if (ckb.kb.instance_of(xy.first, "ED")) ckb.quale[xy.first].add(qy);
    }

    // Qualities take the temporal quale of their bearer; iterate for
    // qualities of qualities.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [q, bearers] : ckb.qt_bearers) {
            if (!ckb.kb.has_entity(q) || !ckb.kb.instance_of(q, "Q")) continue;
            for (const std::string& b : bearers) {
                const InstantSet& qb = ckb.quale[b];
                if (qb.empty() || qb.subset_of(ckb.quale[q])) continue;
                ckb.quale[q].add(qb);
                changed = true;
            }
        }
    }

    if (ckb.opts.auto_tl) {
        std::vector<std::string> perdurants;
        for (const auto& [id, e] : ckb.kb.entities)
            if (!e.derived && ckb.kb.instance_of(id, "PD") && !ckb.quale[id].empty())
                perdurants.push_back(id);
        for (const std::string& x : perdurants) {
            bool has_tl = false;
            auto qit = ckb.qt_qualities.find(x);
            if (qit != ckb.qt_qualities.end())
                for (const std::string& q : qit->second)
                    has_tl = has_tl || ckb.kb.instance_of(q, "TL");
            if (has_tl) continue;
            std::string id = "tl:" + x;
            ckb.kb.entities[id] = Entity{id, "TL", true};
            ckb.quale[id] = ckb.quale[x];
            ckb.qt_bearers[id].push_back(x);
            ckb.qt_qualities[x].push_back(id);
            Attestation a;
            a.quality = id;
            a.position = Term::time_term(ckb.quale[x], ckb.render_region(ckb.quale[x]));
            ckb.attestations.push_back(std::move(a));
        }
    }

    if (ckb.opts.add_life_events) {
        std::vector<std::string> endurants;
        for (const auto& [id, e] : ckb.kb.entities)
            if (!e.derived && ckb.kb.instance_of(id, "ED") && !ckb.quale[id].empty())
                endurants.push_back(id);
        for (const std::string& x : endurants) {
            std::string id = "life:" + x;
            ckb.kb.entities[id] = Entity{id, "PD", true};
            ckb.quale[id] = ckb.quale[x];
            ckb.pc[{x, id}].add(ckb.quale[x]);
        }
    }
}

bool constant_participation(const ClosedKB& ckb, const std::string& x, const std::string& y) {
    auto it = ckb.quale.find(y);
    if (it == ckb.quale.end() || it->second.empty()) return false;
    return it->second.subset_of(mask_of(ckb.pc, x, y));
}

InstantSet temporal_quale(const ClosedKB& ckb, const std::string& e) {
    if (!ckb.kb.has_entity(e)) throw CloseError("unknown entity '" + e + "'");
    auto it = ckb.quale.find(e);
    if (it == ckb.quale.end() || it->second.empty())
        throw CloseError("entity '" + e + "' has no temporal quale");
    return it->second;
}

namespace {

void check_dd40(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "PRE" || l.positive) continue;
        const std::string& x = l.args[0].name;
        if (ckb.present(x, l.args[1].time))
            out.push_back(make_violation("Dd40-conflict", {{"x", x}, {"t", l.args[1].name}}));
    }
}

void check_ad33(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "PC" || !l.positive) continue;
        const std::string& x = l.args[0].name;
        const std::string& y = l.args[1].name;
        if (!ckb.kb.instance_of(x, "ED") || !ckb.kb.instance_of(y, "PD"))
            out.push_back(make_violation("Ad33", {{"x", x}, {"y", y}, {"t", l.args[2].name}}));
    }
    for (const Pair& xy : ckb.pcc)
        if (!ckb.kb.instance_of(xy.first, "ED") || !ckb.kb.instance_of(xy.second, "PD"))
            out.push_back(make_violation("Ad33", {{"x", xy.first}, {"y", xy.second}}));
}

void check_ad36(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "PC" || !l.positive) continue;
        const std::string& x = l.args[0].name;
        const std::string& y = l.args[1].name;
        if (!ckb.kb.instance_of(x, "ED") || !ckb.kb.instance_of(y, "PD")) continue;
        const InstantSet& t = l.args[2].time;
        if (!ckb.present(x, t) || !ckb.present(y, t))
            out.push_back(make_violation("Ad36", {{"x", x}, {"y", y}, {"t", l.args[2].name}}));
    }
    // Expanded constant participation: the endurant must span the perdurant.
    for (const Pair& xy : ckb.pcc) {
        auto it = ckb.quale.find(xy.second);
        if (it == ckb.quale.end()) continue;
        InstantSet bad;
        for (Instant i : it->second.instants())
            if (!ckb.present(xy.first, InstantSet{i})) bad.add(i);
        for (auto [lo, hi] : bad.runs())
            out.push_back(make_violation(
                "Ad36", {{"x", xy.first},
                         {"y", xy.second},
                         {"t", ckb.render_region(InstantSet::range(lo, hi))}}));
    }
}

void check_ad34(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const auto& [id, e] : ckb.kb.entities) {
        if (!ckb.kb.instance_of(id, "PD")) continue;
        auto it = ckb.quale.find(id);
        if (it == ckb.quale.end() || it->second.empty()) continue;
        InstantSet bad;
        for (Instant i : it->second.instants()) {
            bool found = false;
            for (const auto& [pair, mask] : ckb.pc)
                if (pair.second == id && mask.contains(i)) {
                    found = true;
                    break;
                }
            if (!found) bad.add(i);
        }
        for (auto [lo, hi] : bad.runs())
            out.push_back(make_violation(
                "Ad34", {{"x", id}, {"t", ckb.render_region(InstantSet::range(lo, hi))}}));
    }
}

void check_ad35(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const auto& [id, e] : ckb.kb.entities) {
        if (e.derived || !ckb.kb.instance_of(id, "ED")) continue;
        bool participates = false;
        for (const auto& [pair, mask] : ckb.pc)
            if (pair.first == id && !mask.empty()) {
                participates = true;
                break;
            }
        if (!participates) out.push_back(make_violation("Ad35", {{"x", id}}));
    }
}

void check_pc_conflict(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "PC" || l.positive) continue;
        const std::string& x = l.args[0].name;
        const std::string& y = l.args[1].name;
        if (l.args[2].time.subset_of(mask_of(ckb.pc, x, y)))
            out.push_back(make_violation("PC-conflict", {{"x", x}, {"y", y}, {"t", l.args[2].name}}));
    }
}

void check_dd63(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const Pair& xy : ckb.pcc) {
        auto it = ckb.quale.find(xy.second);
        if (it == ckb.quale.end() || it->second.empty())
            out.push_back(make_violation("Dd63", {{"x", xy.first}, {"y", xy.second}}));
    }
}

}  // namespace

void run_checks(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    if (label == "Dd40-conflict") check_dd40(ckb, out);
    else if (label == "Ad33") check_ad33(ckb, out);
    else if (label == "Ad34") check_ad34(ckb, out);
    else if (label == "Ad35") check_ad35(ckb, out);
    else if (label == "Ad36") check_ad36(ckb, out);
    else if (label == "PC-conflict") check_pc_conflict(ckb, out);
    else if (label == "Dd63") check_dd63(ckb, out);
}

}  // namespace dolce::presence
