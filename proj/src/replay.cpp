#include <algorithm>

#include "concepts.hpp"
#include "engine.hpp"
#include "mereology.hpp"
#include "presence.hpp"
#include "quality.hpp"

namespace dolce {

namespace {

// Witness bindings back to values. Regions render as a declared name,
// "lo..hi", "{i,j}" or a single instant; invert all four forms.
InstantSet parse_region(const ClosedKB& ckb, const std::string& s) {
    if (s.find('+') != std::string::npos) {
        InstantSet acc;
        std::string cur;
        for (char c : s + "+") {
            if (c == '+') {
                auto it = ckb.kb.times.find(cur);
                if (it == ckb.kb.times.end()) throw CloseError("unknown region '" + cur + "'");
                acc.add(it->second);
                cur.clear();
            } else
                cur.push_back(c);
        }
        return acc;
    }
    auto it = ckb.kb.times.find(s);
    if (it != ckb.kb.times.end()) return it->second;
    if (auto dots = s.find(".."); dots != std::string::npos)
        return InstantSet::range(std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2)));
    if (!s.empty() && s.front() == '{') {
        std::vector<Instant> xs;
        std::string cur;
        for (char c : s.substr(1)) {
            if (c == ',' || c == '}') {
                if (!cur.empty()) xs.push_back(std::stoi(cur));
                cur.clear();
            } else
                cur.push_back(c);
        }
        return InstantSet(xs);
    }
    return InstantSet{std::stoi(s)};
}

struct Bindings {
    const ClosedKB& ckb;
    std::map<std::string, std::string> w;

    bool has(const std::string& k) const { return w.count(k) != 0; }
    const std::string& operator[](const std::string& k) const {
        auto it = w.find(k);
        if (it == w.end()) throw CloseError("replay: missing witness '" + k + "'");
        return it->second;
    }
    InstantSet region(const std::string& k) const { return parse_region(ckb, (*this)[k]); }
};

bool negative_exists(const ClosedKB& ckb, const std::string& rel, const std::string& x,
                     const std::string& y, const InstantSet* t) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != rel || l.positive) continue;
        if (t == nullptr) {
            if (l.args.size() == 2 && l.args[0].name == x && l.args[1].name == y) return true;
        } else {
            if (l.args.size() == 3 && l.args[0].name == x && l.args[1].name == y &&
                l.args[2].time == *t)
                return true;
        }
    }
    return false;
}

bool inst(const ClosedKB& ckb, const std::string& e, const char* cat) {
    return ckb.kb.has_entity(e) && ckb.kb.instance_of(e, cat);
}

// Schema labels re-evaluate the definitional check itself; membership of the
// violation in its output is the replay.
bool schema_replay(const ClosedKB& ckb, const Violation& v) {
    std::vector<Violation> out;
    quality::run_checks(ckb, v.label, out);
    return std::find(out.begin(), out.end(), v) != out.end();
}

bool claims_replay(const ClosedKB& ckb, const Violation& v) {
    Bindings b{ckb, {v.witnesses.begin(), v.witnesses.end()}};
    if (v.label == "time-order") {
        TimeRegion t1{b.region("t1")}, t2{b.region("t2")};
        bool holds = b["rel"] == "<" ? strictly_before(t1, t2) : weakly_before(t1, t2);
        bool asserted_positive = false, found = false;
        for (const Literal& l : ckb.kb.literals)
            if ((l.rel == "<" || l.rel == "<=") && l.rel == b["rel"] &&
                l.args[0].time == t1.set() && l.args[1].time == t2.set()) {
                found = true;
                asserted_positive = l.positive;
            }
        return found && holds != asserted_positive;
    }
    if (v.label == "time-part" || v.label == "time-sum") {
        InstantSet t1 = b.region("t1"), t2 = b.region("t2");
        bool holds = v.label == "time-part" ? t1.subset_of(t2) : t1 == t2;
        for (const Literal& l : ckb.kb.literals) {
            bool match = v.label == "time-part"
                             ? (l.rel == "P" && l.args.size() == 2 &&
                                l.args[0].kind == Term::Kind::Time && l.args[0].time == t1 &&
                                l.args[1].time == t2)
                             : (l.rel == "=" && l.args[0].kind == Term::Kind::Time &&
                                l.args[0].time == t1 && l.args[1].time == t2);
            if (match) return holds != l.positive;
        }
        return false;
    }
    if (v.label == "space-part") {
        for (const Literal& l : ckb.kb.literals)
            if (l.rel == "P" && l.args.size() == 2 && l.args[0].name == b["a"] &&
                l.args[1].name == b["b"] && l.args[0].kind != Term::Kind::Entity &&
                l.args[0].kind != Term::Kind::Time)
                return eval_space_part(ckb.kb, l.args[0], l.args[1]) != l.positive;
        return false;
    }
    return false;
}

bool sum_replay(const ClosedKB& ckb, const Violation& v) {
    Bindings b{ckb, {v.witnesses.begin(), v.witnesses.end()}};
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "=" || l.args[0].kind != Term::Kind::Entity) continue;
        if (l.args[0].name != b["x"] || l.args[1].name != b["sum"]) continue;
        std::vector<std::string> ops;
        if (l.args[1].kind == Term::Kind::Fusion) {
            for (const auto& [id, e] : ckb.kb.entities)
                if (ckb.kb.instance_of(id, l.args[1].operands.at(0))) ops.push_back(id);
        } else {
            ops = l.args[1].operands;
        }
        if (ops.empty()) return l.positive;
        bool temporal = ckb.kb.instance_of(ops.front(), "ED");
        mereology::SumResult r = mereology::resolve_sum(ckb, ops, temporal);
        bool holds = r.status == mereology::SumResolution::Resolved && r.entity == l.args[0].name;
        return holds != l.positive;
    }
    return false;
}

}  // namespace

bool replay(const ClosedKB& ckb, const Violation& v) {
    Bindings b{ckb, {v.witnesses.begin(), v.witnesses.end()}};
    const std::string& L = v.label;

    if (L == "Ad10") return !(inst(ckb, b["x"], "ED") && inst(ckb, b["y"], "ED"));
    if (L == "GEM-typing")
        return !((inst(ckb, b["x"], "PD") && inst(ckb, b["y"], "PD")) ||
                 (inst(ckb, b["x"], "AB") && inst(ckb, b["y"], "AB")));
    if (L == "Ad17") {
        InstantSet t = b.region("t");
        return !(ckb.present(b["x"], t) && ckb.present(b["y"], t));
    }
    if (L == "GEM-REF") {
        if (b.has("y")) {  // closure covered an asserted negative literal
            if (b.has("t")) {
                InstantSet t = b.region("t");
                return ckb.p3_holds(b["x"], b["y"], t) &&
                       negative_exists(ckb, "P", b["x"], b["y"], &t);
            }
            return ckb.p2.count({b["x"], b["y"]}) != 0 &&
                   negative_exists(ckb, "P", b["x"], b["y"], nullptr);
        }
        if (b.has("t")) {
            InstantSet t = b.region("t");
            return ckb.present(b["x"], t) && !ckb.p3_holds(b["x"], b["x"], t);
        }
        return ckb.p2.count({b["x"], b["x"]}) == 0;
    }
    if (L == "GEM-ASYM")
        return b["x"] != b["y"] && ckb.p2.count({b["x"], b["y"]}) != 0 &&
               ckb.p2.count({b["y"], b["x"]}) != 0;
    if (L == "GEM-TRANS") {
        if (b.has("z")) {
            if (b.has("t")) {
                InstantSet t = b.region("t");
                return ckb.p3_holds(b["x"], b["y"], t) && ckb.p3_holds(b["y"], b["z"], t) &&
                       !ckb.p3_holds(b["x"], b["z"], t);
            }
            return ckb.p2.count({b["x"], b["y"]}) != 0 && ckb.p2.count({b["y"], b["z"]}) != 0 &&
                   ckb.p2.count({b["x"], b["z"]}) == 0;
        }
        if (b.has("t")) {
            InstantSet t = b.region("t");
            return ckb.p3_holds(b["x"], b["y"], t) && negative_exists(ckb, "P", b["x"], b["y"], &t);
        }
        return ckb.p2.count({b["x"], b["y"]}) != 0 &&
               negative_exists(ckb, "P", b["x"], b["y"], nullptr);
    }
    if (L == "GEM-SSP") {
        if (b.has("t")) {
            InstantSet t = b.region("t");
            for (Instant i : t.instants()) {
                InstantSet at{i};
                if (!ckb.present(b["x"], at) || !ckb.present(b["y"], at)) return false;
                if (ckb.p3_holds(b["y"], b["x"], at)) return false;
                for (const auto& [id, e] : ckb.kb.entities)
                    if (ckb.p3_holds(id, b["y"], at) &&
                        !mereology::overlap_at(ckb, id, b["x"], at))
                        return false;
            }
            return true;
        }
        if (ckb.p2.count({b["y"], b["x"]})) return false;
        for (const auto& [id, e] : ckb.kb.entities)
            if (ckb.p2.count({id, b["y"]}) && !mereology::overlap(ckb, id, b["x"])) return false;
        return true;
    }
    if (L == "P-conflict") {
        if (b.has("t")) {
            InstantSet t = b.region("t");
            return t.subset_of(mask_of(ckb.p3_asserted, b["x"], b["y"])) &&
                   negative_exists(ckb, "P", b["x"], b["y"], &t);
        }
        return ckb.p2_asserted.count({b["x"], b["y"]}) != 0 &&
               negative_exists(ckb, "P", b["x"], b["y"], nullptr);
    }
    if (L == "Dd18-sum" || L == "Dd26-sum" || L == "Dd27-fusion") return sum_replay(ckb, v);
    if (L == "time-order" || L == "time-part" || L == "time-sum" || L == "space-part")
        return claims_replay(ckb, v);

    if (L == "Ad46" || L == "Ad47" || L == "Ad48" || L == "qt-unique") {
        if (b.has("bearers")) {
            auto it = ckb.qt_bearers.find(b["x"]);
            std::size_t n = it == ckb.qt_bearers.end() ? 0 : it->second.size();
            return n != 1;
        }
        const char* need = L == "Ad46" ? "PD" : (L == "Ad47" ? "PED" : "NPED");
        auto it = ckb.qt_bearers.find(b["x"]);
        bool qt = it != ckb.qt_bearers.end() &&
                  std::find(it->second.begin(), it->second.end(), b["y"]) != it->second.end();
        return qt && !inst(ckb, b["y"], need);
    }
    if (L == "qt-typing") return !inst(ckb, b["x"], "Q");
    if (L == "ql-space") {
        std::set<std::string> spaces;
        for (const Attestation& a : ckb.attestations) {
            if (a.quality != b["x"]) continue;
            if (a.position.kind == Term::Kind::Point)
                spaces.insert(ckb.kb.point_space.at(a.position.name));
            else if (a.position.kind == Term::Kind::SpaceRegion)
                spaces.insert(ckb.kb.region_space.at(a.position.name));
            else if (a.position.kind == Term::Kind::Time)
                spaces.insert("time");
        }
        return spaces.size() > 1;
    }
    if (L == "Dd40-conflict") {
        InstantSet t = b.region("t");
        bool neg = false;
        for (const Literal& l : ckb.kb.literals)
            if (l.rel == "PRE" && !l.positive && l.args[0].name == b["x"] && l.args[1].time == t)
                neg = true;
        return neg && ckb.present(b["x"], t);
    }
    if (L == "Dd63") {
        auto it = ckb.quale.find(b["y"]);
        return ckb.pcc.count({b["x"], b["y"]}) != 0 && (it == ckb.quale.end() || it->second.empty());
    }
    if (L == "Ad33") return !(inst(ckb, b["x"], "ED") && inst(ckb, b["y"], "PD"));
    if (L == "Ad34") {
        InstantSet t = b.region("t");
        for (Instant i : t.instants()) {
            bool found = false;
            for (const auto& [pair, mask] : ckb.pc)
                if (pair.second == b["x"] && mask.contains(i)) found = true;
            if (found) return false;
            if (!ckb.present(b["x"], InstantSet{i})) return false;
        }
        return true;
    }
    if (L == "Ad35") {
        for (const auto& [pair, mask] : ckb.pc)
            if (pair.first == b["x"] && !mask.empty()) return false;
        return inst(ckb, b["x"], "ED");
    }
    if (L == "Ad36") {
        InstantSet t = b.region("t");
        return t.subset_of(mask_of(ckb.pc, b["x"], b["y"])) &&
               !(ckb.present(b["x"], t) && ckb.present(b["y"], t));
    }
    if (L == "PC-conflict") {
        InstantSet t = b.region("t");
        return t.subset_of(mask_of(ckb.pc, b["x"], b["y"])) &&
               negative_exists(ckb, "PC", b["x"], b["y"], &t);
    }
    if (L == "Ad20")
        return !((inst(ckb, b["x"], "ED") && inst(ckb, b["y"], "ED")) ||
                 (inst(ckb, b["x"], "PD") && inst(ckb, b["y"], "PD")));
    if (L == "Ad21") return inst(ckb, b["x"], "PED") != inst(ckb, b["y"], "PED");
    if (L == "Ad24") {
        InstantSet both =
            mask_of(ckb.k, b["x"], b["y"]).intersect(mask_of(ckb.k, b["y"], b["x"]));
        return !both.empty();
    }
    if (L == "K-conflict" || L == "K-trans" || L == "K-dist") {
        InstantSet t = b.region("t");
        return t.subset_of(mask_of(ckb.k, b["x"], b["y"])) &&
               negative_exists(ckb, "K", b["x"], b["y"], &t);
    }
    if (L == "A11")
        return !((inst(ckb, b["x"], "ED") || inst(ckb, b["x"], "PD")) && inst(ckb, b["y"], "C"));
    if (L == "A12") {
        InstantSet t = b.region("t");
        return ckb.cf_holds(b["x"], b["y"], t) && !ckb.present(b["x"], t);
    }
    if (L == "A14") {
        InstantSet t = b.region("t");
        return ckb.cf_holds(b["x"], b["y"], t) && ckb.cf_holds(b["y"], b["x"], t);
    }
    if (L == "A15") {
        InstantSet t = b.region("t");
        return ckb.cf_holds(b["x"], b["y"], t) && ckb.cf_holds(b["y"], b["z"], t) &&
               ckb.cf_holds(b["x"], b["z"], t);
    }
    if (L == "D3-AR") {
        InstantSet t = b.region("t");
        if (!ckb.cf_holds(b["y"], b["x"], t)) return false;
        for (const InstantSet& r : ckb.convex_regions())
            if (ckb.present(b["y"], r) && !ckb.cf_holds(b["y"], b["x"], r)) return false;
        return true;
    }
    if (L == "D3-FD") return inst(ckb, b["x"], "RL") && !ckb.kb.flags_of(b["x"]).founded;
    if (L == "F12-functional") {
        InstantSet t = b.region("t");
        for (Instant i : t.instants()) {
            bool fx = false, fy = false;
            for (const auto& [pair, regions] : ckb.cf) {
                if (pair.second != b["role"]) continue;
                for (const InstantSet& s : regions) {
                    if (!s.contains(i)) continue;
                    fx = fx || pair.first == b["x"];
                    fy = fy || pair.first == b["y"];
                }
            }
            if (!fx || !fy) return false;
        }
        return b["x"] != b["y"] && ckb.kb.flags_of(b["role"]).functional;
    }
    if (L == "F26-continuous" || L == "F29-stable" || L == "F30-monotone" || L == "F39-turning")
        return schema_replay(ckb, v);
    if (L == "F37-plan")
        return !(inst(ckb, b["x"], "PD") && inst(ckb, b["y"], "C"));
    if (L == "F37-plan-presence") {
        auto it = ckb.quale.find(b["x"]);
        if (it == ckb.quale.end() || it->second.empty()) return false;
        return ckb.kb.flags_of(b["y"]).presence_coupled && !ckb.present(b["y"], it->second);
    }
    if (L == "F43-evolution") {
        InstantSet t = b.region("t");
        return ckb.cf_holds(b["x"], b["c"], t) && !ckb.cf_holds(b["x"], b["req"], t);
    }
    if (L == "F43-distinct") {
        InstantSet t1 = b.region("t1"), t2 = b.region("t2");
        bool r1 = false, r2 = false;
        for (const RequiresDef& rq : ckb.kb.requires_decls) {
            if (rq.subject != b["c"] || rq.required != b["req"]) continue;
            r1 = r1 || rq.time == t1;
            r2 = r2 || rq.time == t2;
        }
        return r1 && r2 && !(t1 == t2);
    }
    throw CloseError("replay: no evaluator for label '" + L + "'");
}

}  // namespace dolce
