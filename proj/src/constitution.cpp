#include "constitution.hpp"

#include <algorithm>

#include "mereology.hpp"

namespace dolce::constitution {

namespace {

void transitive_fixpoint(PairMask& rel) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Pair> keys;
        for (const auto& [p, m] : rel) keys.push_back(p);
        for (const Pair& xy : keys)
            for (const Pair& yz : keys) {
                if (xy.second != yz.first) continue;
                InstantSet gain = rel.at(xy).intersect(rel.at(yz));
                if (gain.empty()) continue;
                InstantSet& target = rel[{xy.first, yz.second}];
                if (!gain.subset_of(target)) {
                    target.add(gain);
                    changed = true;
                }
            }
    }
    for (auto it = rel.begin(); it != rel.end();)
        it = it->second.empty() ? rel.erase(it) : std::next(it);
}

// One distribution pass over the declared covers. Returns true when a new
// constitution atom was added.
bool distribute(ClosedKB& ckb, std::set<std::string>& warned) {
    bool changed = false;
    for (const CoverDef& cv : ckb.kb.covers) {
        std::string cover_key = cv.whole + "@" + render_instants(cv.time);
        bool backed = true;
        for (const std::string& part : cv.parts)
            backed = backed && cv.time.subset_of(mask_of(ckb.p3, part, cv.whole));
        if (!backed) {
            if (warned.insert("cover " + cover_key).second)
                ckb.warnings.push_back("cover of " + cv.whole + " at " + cv.time_display +
                                       " is not backed by parthood; distribution skipped");
            continue;
        }
        // Candidate constituents per component.
        std::vector<std::vector<std::string>> candidates;
        bool complete = true;
        for (const std::string& part : cv.parts) {
            std::vector<std::string> xs;
            for (const auto& [pair, mask] : ckb.k)
                if (pair.second == part && cv.time.subset_of(mask)) xs.push_back(pair.first);
            std::sort(xs.begin(), xs.end());
            if (xs.empty()) {
                complete = false;
                break;
            }
            candidates.push_back(std::move(xs));
        }
        if (!complete) continue;

        std::vector<std::size_t> idx(candidates.size(), 0);
        for (;;) {
            std::vector<std::string> ops;
            for (std::size_t i = 0; i < idx.size(); ++i) ops.push_back(candidates[i][idx[i]]);
            std::sort(ops.begin(), ops.end());
            ops.erase(std::unique(ops.begin(), ops.end()), ops.end());

            std::string z;
            if (ops.size() == 1) {
                z = ops.front();
            } else {
                bool all_ed = true, all_atemporal = true;
                for (const std::string& op : ops) {
                    all_ed = all_ed && ckb.kb.instance_of(op, "ED");
                    all_atemporal = all_atemporal && (ckb.kb.instance_of(op, "PD") ||
                                                      ckb.kb.instance_of(op, "AB"));
                }
                if (!all_ed && !all_atemporal) {
                    if (warned.insert("mixed " + cover_key).second)
                        ckb.warnings.push_back("distribution over " + cv.whole + " at " +
                                               cv.time_display + " mixes entity sorts; skipped");
                } else {
                    bool temporal = all_ed;
                    mereology::SumResult r = mereology::resolve_sum(ckb, ops, temporal);
                    if (r.status == mereology::SumResolution::Resolved) {
                        z = r.entity;
                    } else if (ckb.opts.skolemize_sums &&
                               r.status == mereology::SumResolution::NoWitness) {
                        z = mereology::skolemize_sum(ckb, ops, temporal);
                    } else {
                        std::string ops_key;
                        for (const std::string& op : ops) ops_key += op + "+";
                        if (warned.insert("sum " + ops_key + cover_key).second)
                            ckb.warnings.push_back(
                                "distribution over " + cv.whole + " at " + cv.time_display +
                                (r.status == mereology::SumResolution::Ambiguous
                                     ? ": sum term is ambiguous; skipped"
                                     : ": no entity realizes the constituent sum; skipped"));
                    }
                }
            }
            if (!z.empty()) {
                InstantSet& mask = ckb.k[{z, cv.whole}];
                if (!cv.time.subset_of(mask)) {
                    mask.add(cv.time);
                    changed = true;
                }
            }

            // Advance the candidate tuple.
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == candidates[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    return changed;
}

}  // namespace

void saturate(ClosedKB& ckb) {
    ckb.k_trans = ckb.k_asserted;
    transitive_fixpoint(ckb.k_trans);
    ckb.k = ckb.k_trans;
    std::set<std::string> warned;
    bool changed = true;
    while (changed) {
        changed = distribute(ckb, warned);
        transitive_fixpoint(ckb.k);
    }
}

namespace {

void check_typing(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "K" || !l.positive) continue;
        const std::string& x = l.args[0].name;
        const std::string& y = l.args[1].name;
        bool both_ed = ckb.kb.instance_of(x, "ED") && ckb.kb.instance_of(y, "ED");
        bool both_pd = ckb.kb.instance_of(x, "PD") && ckb.kb.instance_of(y, "PD");
        if (!both_ed && !both_pd) {
            if (label == "Ad20")
                out.push_back(make_violation("Ad20", {{"x", x}, {"y", y}, {"t", l.args[2].name}}));
            continue;
        }
        if (label == "Ad21" && ckb.kb.instance_of(x, "PED") != ckb.kb.instance_of(y, "PED"))
            out.push_back(make_violation("Ad21", {{"x", x}, {"y", y}, {"t", l.args[2].name}}));
    }
}

void check_asymmetry(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const auto& [pair, mask] : ckb.k) {
        if (pair.first == pair.second) {
            out.push_back(make_violation(
                "Ad24", {{"x", pair.first}, {"y", pair.second}, {"t", ckb.render_region(mask)}}));
            continue;
        }
        if (pair.first > pair.second) continue;
        InstantSet both = mask.intersect(mask_of(ckb.k, pair.second, pair.first));
        if (!both.empty())
            out.push_back(make_violation(
                "Ad24", {{"x", pair.first}, {"y", pair.second}, {"t", ckb.render_region(both)}}));
    }
}

void check_negative(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "K" || l.positive) continue;
        const std::string& x = l.args[0].name;
        const std::string& y = l.args[1].name;
        const InstantSet& t = l.args[2].time;
        std::string layer;
        if (t.subset_of(mask_of(ckb.k_asserted, x, y))) layer = "K-conflict";
        else if (t.subset_of(mask_of(ckb.k_trans, x, y))) layer = "K-trans";
        else if (t.subset_of(mask_of(ckb.k, x, y))) layer = "K-dist";
        if (layer == label)
            out.push_back(make_violation(label, {{"x", x}, {"y", y}, {"t", l.args[2].name}}));
    }
}

}  // namespace

void run_checks(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    if (label == "Ad20" || label == "Ad21") check_typing(ckb, label, out);
    else if (label == "Ad24") check_asymmetry(ckb, out);
    else if (label == "K-conflict" || label == "K-trans" || label == "K-dist")
        check_negative(ckb, label, out);
}

}  // namespace dolce::constitution
