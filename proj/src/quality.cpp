#include "quality.hpp"

#include <algorithm>
#include <deque>

namespace dolce::quality {

bool qt_of_type(const ClosedKB& ckb, const std::string& phi, const std::string& x,
                const std::string& y) {
    if (!ckb.kb.taxonomy.is_quality_leaf(phi))
        throw SyntaxError({}, "'" + phi + "' is not a leaf of the quality branch");
    auto it = ckb.qt_bearers.find(x);
    bool qt = it != ckb.qt_bearers.end() &&
              std::find(it->second.begin(), it->second.end(), y) != it->second.end();
    return qt && ckb.kb.instance_of(x, phi);
}

bool self_connected(const SpaceDef& space, const std::set<std::string>& region) {
    if (region.empty()) throw std::invalid_argument("self-connectedness of an empty region");
    for (const std::string& p : region)
        if (std::find(space.points.begin(), space.points.end(), p) == space.points.end())
            throw std::invalid_argument("region point '" + p + "' is not in the space");
    std::set<std::string> seen = {*region.begin()};
    std::deque<std::string> queue = {*region.begin()};
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        for (const std::string& next : region) {
            if (seen.count(next) || !space.adjacent(cur, next)) continue;
            seen.insert(next);
            queue.push_back(next);
        }
    }
    return seen.size() == region.size();
}

bool check_color_path(const ClosedKB& ckb, const std::string& quality, const std::string& l,
                      const std::string& l2, const InstantSet& window) {
    std::set<std::string> attested;
    std::string space_name;
    for (const Attestation& a : ckb.attestations) {
        if (a.quality != quality || a.position.kind != Term::Kind::Point) continue;
        if (!a.time.has_value() || !a.time->subset_of(window)) continue;
        attested.insert(a.position.name);
        space_name = ckb.kb.point_space.at(a.position.name);
    }
    for (const std::string* p : {&l, &l2})
        if (!attested.count(*p))
            throw CloseError("point '" + *p + "' is not attested as a quale of '" + quality +
                             "' inside the window");
    const SpaceDef& sp = ckb.kb.spaces.at(space_name);
    // Connected component of l within the attested point set.
    std::set<std::string> seen = {l};
    std::deque<std::string> queue = {l};
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        for (const std::string& next : attested) {
            if (seen.count(next) || !sp.adjacent(cur, next)) continue;
            seen.insert(next);
            queue.push_back(next);
        }
    }
    return seen.count(l2) != 0;
}

namespace {

std::string branch_label(const ClosedKB& ckb, const std::string& q) {
    if (ckb.kb.instance_of(q, "TQ")) return "Ad46";
    if (ckb.kb.instance_of(q, "PQ")) return "Ad47";
    if (ckb.kb.instance_of(q, "AQ")) return "Ad48";
    return "qt-unique";
}

void check_qt(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    // Bearer typing, per qt pair.
    for (const auto& [q, bearers] : ckb.qt_bearers) {
        if (!ckb.kb.instance_of(q, "Q")) {
            if (label == "qt-typing")
                for (const std::string& b : bearers)
                    out.push_back(make_violation("qt-typing", {{"x", q}, {"y", b}}));
            continue;
        }
        std::string bl = branch_label(ckb, q);
        for (const std::string& b : bearers) {
            bool ok = true;
            if (bl == "Ad46") ok = ckb.kb.instance_of(b, "PD");
            else if (bl == "Ad47") ok = ckb.kb.instance_of(b, "PED");
            else if (bl == "Ad48") ok = ckb.kb.instance_of(b, "NPED");
            if (!ok && bl == label) out.push_back(make_violation(bl, {{"x", q}, {"y", b}}));
        }
    }
    // Exactly one bearer, per quality entity.
    for (const auto& [id, e] : ckb.kb.entities) {
        if (!ckb.kb.instance_of(id, "Q")) continue;
        auto it = ckb.qt_bearers.find(id);
        std::size_t n = it == ckb.qt_bearers.end() ? 0 : it->second.size();
        if (n == 1) continue;
        std::string bl = branch_label(ckb, id);
        if (bl == label)
            out.push_back(make_violation(bl, {{"x", id}, {"bearers", std::to_string(n)}}));
    }
}

void check_ql_space(const ClosedKB& ckb, std::vector<Violation>& out) {
    std::map<std::string, std::set<std::string>> spaces_of;
    for (const Attestation& a : ckb.attestations) {
        std::string s;
        switch (a.position.kind) {
            case Term::Kind::Point: s = ckb.kb.point_space.at(a.position.name); break;
            case Term::Kind::SpaceRegion: s = ckb.kb.region_space.at(a.position.name); break;
            case Term::Kind::Time: s = "time"; break;
            default: continue;
        }
        spaces_of[a.quality].insert(s);
    }
    for (const auto& [q, ss] : spaces_of)
        if (ss.size() > 1) out.push_back(make_violation("ql-space", {{"x", q}}));
}

struct Hist {
    std::string point;
    InstantSet time;
    std::string display;
};

std::vector<Hist> space_history(const ClosedKB& ckb, const std::string& x,
                                const std::string& space) {
    std::vector<Hist> hs;
    auto it = ckb.qt_qualities.find(x);
    if (it == ckb.qt_qualities.end()) return hs;
    auto quale_it = ckb.quale.find(x);
    static const InstantSet empty;
    const InstantSet& span = quale_it == ckb.quale.end() ? empty : quale_it->second;
    for (const std::string& q : it->second) {
        for (const Attestation& a : ckb.attestations) {
            if (a.quality != q || a.position.kind != Term::Kind::Point) continue;
            if (ckb.kb.point_space.at(a.position.name) != space) continue;
            if (!a.time.has_value() || a.time->empty()) continue;
            if (!a.time->subset_of(span)) continue;  // outside the bearer's time
            hs.push_back({a.position.name, *a.time, a.time_display});
        }
    }
    std::sort(hs.begin(), hs.end(), [](const Hist& a, const Hist& b) {
        return std::tie(a.time, a.point) < std::tie(b.time, b.point);
    });
    return hs;
}

bool strictly_ordered(const InstantSet& a, const InstantSet& b) { return a.max() < b.min(); }

void check_schema(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    for (const auto& [id, e] : ckb.kb.entities) {
        if (e.derived) continue;
        for (const SchemaDef& sd : ckb.kb.schemas) {
            if (!ckb.kb.instance_of(id, sd.category)) continue;
            std::vector<Hist> hs = space_history(ckb, id, sd.space);
            if (hs.empty()) continue;
            const SpaceDef& sp = ckb.kb.spaces.at(sd.space);
            if (sd.kind == SchemaDef::Kind::Stable && label == "F29-stable") {
                for (std::size_t i = 0; i < hs.size(); ++i) {
                    bool found = false;
                    for (std::size_t j = i + 1; j < hs.size() && !found; ++j) {
                        if (hs[i].point == hs[j].point) continue;
                        out.push_back(make_violation("F29-stable", {{"x", id},
                                                                    {"l1", hs[i].point},
                                                                    {"t1", hs[i].display},
                                                                    {"l2", hs[j].point},
                                                                    {"t2", hs[j].display}}));
                        found = true;
                    }
                    if (found) break;
                }
            } else if (sd.kind == SchemaDef::Kind::Monotone && label == "F30-monotone") {
                bool reported = false;
                for (std::size_t i = 0; i < hs.size() && !reported; ++i)
                    for (std::size_t j = 0; j < hs.size() && !reported; ++j) {
                        if (i == j || !strictly_ordered(hs[i].time, hs[j].time)) continue;
                        if (sp.order_index.at(hs[i].point) > sp.order_index.at(hs[j].point)) {
                            out.push_back(make_violation("F30-monotone", {{"x", id},
                                                                          {"l1", hs[i].point},
                                                                          {"t1", hs[i].display},
                                                                          {"l2", hs[j].point},
                                                                          {"t2", hs[j].display}}));
                            reported = true;
                        }
                    }
                if (!reported) {
                    bool increase = false;
                    for (std::size_t i = 0; i < hs.size() && !increase; ++i)
                        for (std::size_t j = 0; j < hs.size() && !increase; ++j)
                            increase = i != j && strictly_ordered(hs[i].time, hs[j].time) &&
                                       sp.order_index.at(hs[i].point) < sp.order_index.at(hs[j].point);
                    if (!increase)
                        out.push_back(make_violation("F30-monotone", {{"x", id}}));
                }
            } else if (sd.kind == SchemaDef::Kind::Turning && label == "F39-turning") {
                bool reported = false;
                int prev = -1;
                for (std::size_t i = 0; i < hs.size() && !reported; ++i) {
                    int d = sp.distance(hs[i].point, sd.target);
                    if (d < 0 || (i > 0 && d >= prev)) {
                        std::vector<std::pair<std::string, std::string>> w = {{"x", id},
                                                                              {"l", hs[i].point},
                                                                              {"t", hs[i].display}};
                        out.push_back(make_violation("F39-turning", w));
                        reported = true;
                    }
                    prev = d;
                }
                if (!reported && prev != 0)
                    out.push_back(make_violation(
                        "F39-turning",
                        {{"x", id}, {"l", hs.back().point}, {"t", hs.back().display}}));
            } else if (sd.kind == SchemaDef::Kind::Continuous && label == "F26-continuous") {
                for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
                    const std::string& a = hs[i].point;
                    const std::string& b = hs[i + 1].point;
                    if (a == b || sp.adjacent(a, b)) continue;
                    out.push_back(
                        make_violation("F26-continuous", {{"x", id}, {"l1", a}, {"l2", b}}));
                    break;
                }
            }
        }
    }
}

}  // namespace

void run_checks(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    if (label == "Ad46" || label == "Ad47" || label == "Ad48" || label == "qt-typing" ||
        label == "qt-unique")
        check_qt(ckb, label, out);
    else if (label == "ql-space") check_ql_space(ckb, out);
    else if (label == "F26-continuous" || label == "F29-stable" || label == "F30-monotone" ||
             label == "F39-turning")
        check_schema(ckb, label, out);
}

}  // namespace dolce::quality
