#include "mereology.hpp"

#include <algorithm>

namespace dolce::mereology {

namespace {

// Union over z of p3[z,x] ∩ p3[z,y]: the instants at which x and y share a part.
InstantSet overlap_instants(const PairMask& p3, const std::vector<std::string>& domain,
                            const std::string& x, const std::string& y) {
    InstantSet out;
    for (const std::string& z : domain) {
        const InstantSet& zx = mask_of(p3, z, x);
        if (zx.empty()) continue;
        out.add(zx.intersect(mask_of(p3, z, y)));
    }
    return out;
}

std::vector<std::string> entity_ids(const ClosedKB& ckb) {
    std::vector<std::string> out;
    for (const auto& [id, e] : ckb.kb.entities) out.push_back(id);
    return out;
}

void transitive_fixpoint(PairSet& rel) {
    std::map<std::string, std::set<std::string>> succ;
    for (const Pair& p : rel) succ[p.first].insert(p.second);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [a, bs] : succ) {
            std::set<std::string> add;
            for (const std::string& b : bs) {
                auto it = succ.find(b);
                if (it == succ.end()) continue;
                for (const std::string& c : it->second)
                    if (!bs.count(c)) add.insert(c);
            }
            if (!add.empty()) {
                bs.insert(add.begin(), add.end());
                changed = true;
            }
        }
    }
    rel.clear();
    for (const auto& [a, bs] : succ)
        for (const std::string& b : bs) rel.insert({a, b});
}

void transitive_fixpoint(PairMask& rel) {
    bool changed = true;
    while (changed) {
        changed = false;
        // Snapshot keys; masks only grow.
        std::vector<Pair> keys;
        for (const auto& [p, m] : rel) keys.push_back(p);
        for (const Pair& xy : keys) {
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
    }
    // Drop empty masks introduced by operator[].
    for (auto it = rel.begin(); it != rel.end();)
        it = it->second.empty() ? rel.erase(it) : std::next(it);
}

}  // namespace

bool overlap(const ClosedKB& ckb, const std::string& x, const std::string& y) {
    for (const auto& [id, e] : ckb.kb.entities)
        if (ckb.p2.count({id, x}) && ckb.p2.count({id, y})) return true;
    return false;
}

bool overlap_at(const ClosedKB& ckb, const std::string& x, const std::string& y,
                const InstantSet& t) {
    if (t.empty()) return false;
    return t.subset_of(overlap_instants(ckb.p3, entity_ids(ckb), x, y));
}

bool proper_part(const ClosedKB& ckb, const std::string& x, const std::string& y,
                 const InstantSet& t) {
    return ckb.p3_holds(x, y, t) && !ckb.p3_holds(y, x, t);
}

void saturate_atemporal(ClosedKB& ckb) {
    ckb.p2 = ckb.p2_asserted;
    ckb.p2.insert(ckb.p2_derived.begin(), ckb.p2_derived.end());
    for (const auto& [id, e] : ckb.kb.entities)
        if (ckb.kb.instance_of(id, "PD") || ckb.kb.instance_of(id, "AB")) ckb.p2.insert({id, id});
    transitive_fixpoint(ckb.p2);
}

void saturate_temporal(ClosedKB& ckb) {
    ckb.p3_reflexive = ckb.p3_asserted;
    for (const auto& [id, e] : ckb.kb.entities) {
        if (!ckb.kb.instance_of(id, "ED")) continue;
        auto it = ckb.quale.find(id);
        if (it == ckb.quale.end() || it->second.empty()) continue;
        ckb.p3_reflexive[{id, id}].add(it->second);
    }
    ckb.p3 = ckb.p3_reflexive;
    for (const auto& [pair, mask] : ckb.p3_derived) ckb.p3[pair].add(mask);
    transitive_fixpoint(ckb.p3);
}

std::string skolemize_sum(ClosedKB& ckb, const std::vector<std::string>& operands, bool temporal) {
    std::vector<std::string> ops = operands;
    std::sort(ops.begin(), ops.end());
    ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
    std::string key = std::string(temporal ? "t:" : "a:");
    std::string id = "sum:";
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i) id += "+";
        id += ops[i];
    }
    key += id;
    if (auto it = ckb.iota.find(key); it != ckb.iota.end()) return it->second;

    // Leaf category: the deepest common ancestor of the operand leaves.
    std::set<std::string> common = ckb.kb.taxonomy.ancestors_of(ckb.kb.entity(ops[0]).leaf_category);
    for (std::size_t i = 1; i < ops.size(); ++i) {
        const std::set<std::string>& anc =
            ckb.kb.taxonomy.ancestors_of(ckb.kb.entity(ops[i]).leaf_category);
        std::set<std::string> merged;
        for (const std::string& c : common)
            if (anc.count(c)) merged.insert(c);
        common = std::move(merged);
    }
    std::string leaf;
    std::size_t best_depth = 0;
    for (const std::string& c : common) {
        std::size_t depth = ckb.kb.taxonomy.ancestors_of(c).size();
        if (depth > best_depth || (depth == best_depth && (leaf.empty() || c < leaf))) {
            best_depth = depth;
            leaf = c;
        }
    }
    ckb.kb.entities[id] = Entity{id, leaf, true};

    InstantSet span;
    for (const std::string& op : ops) {
        auto it = ckb.quale.find(op);
        if (it != ckb.quale.end()) span.add(it->second);
    }
    ckb.quale[id] = span;
    if (temporal) {
        for (const std::string& op : ops) {
            auto it = ckb.quale.find(op);
            if (it != ckb.quale.end() && !it->second.empty()) ckb.p3_derived[{op, id}].add(it->second);
        }
    } else {
        for (const std::string& op : ops) ckb.p2_derived.insert({op, id});
    }
    saturate_atemporal(ckb);
    saturate_temporal(ckb);
    ckb.iota[key] = id;
    return id;
}

SumResult resolve_sum(const ClosedKB& ckb, const std::vector<std::string>& operands,
                      bool temporal) {
    std::vector<std::string> domain = entity_ids(ckb);
    std::vector<std::string> hits;
    if (temporal) {
        std::map<std::string, InstantSet> target;
        for (const std::string& w : domain) {
            InstantSet acc;
            for (const std::string& op : operands)
                acc.add(overlap_instants(ckb.p3, domain, w, op));
            if (!acc.empty()) target[w] = acc;
        }
        for (const std::string& z : domain) {
            bool ok = true;
            for (const std::string& w : domain) {
                InstantSet oz = overlap_instants(ckb.p3, domain, w, z);
                auto it = target.find(w);
                if (!(it == target.end() ? oz.empty() : oz == it->second)) {
                    ok = false;
                    break;
                }
            }
            if (ok) hits.push_back(z);
        }
    } else {
        std::set<std::string> target;
        for (const std::string& w : domain)
            for (const std::string& op : operands)
                if (overlap(ckb, w, op)) {
                    target.insert(w);
                    break;
                }
        for (const std::string& z : domain) {
            bool ok = true;
            for (const std::string& w : domain)
                if (overlap(ckb, w, z) != (target.count(w) != 0)) {
                    ok = false;
                    break;
                }
            if (ok) hits.push_back(z);
        }
    }
    if (hits.empty()) return {SumResolution::NoWitness, ""};
    if (hits.size() > 1) return {SumResolution::Ambiguous, ""};
    return {SumResolution::Resolved, hits.front()};
}

bool sum_profile_matches(const ClosedKB& ckb, const std::string& z,
                         const std::vector<std::string>& operands, bool temporal) {
    std::vector<std::string> domain = entity_ids(ckb);
    if (temporal) {
        for (const std::string& w : domain) {
            InstantSet acc;
            for (const std::string& op : operands)
                acc.add(overlap_instants(ckb.p3, domain, w, op));
            if (!(overlap_instants(ckb.p3, domain, w, z) == acc)) return false;
        }
        return true;
    }
    for (const std::string& w : domain) {
        bool any = false;
        for (const std::string& op : operands) any = any || overlap(ckb, w, op);
        if (overlap(ckb, w, z) != any) return false;
    }
    return true;
}

std::vector<Violation> check_gem_structure(const GemInput& in) {
    std::vector<Violation> out;
    auto has2 = [&](const std::string& a, const std::string& b) { return in.p2.count({a, b}) != 0; };
    auto o2 = [&](const std::string& a, const std::string& b) {
        for (const std::string& z : in.atemporal_domain)
            if (has2(z, a) && has2(z, b)) return true;
        return false;
    };
    for (const std::string& x : in.atemporal_domain)
        if (!has2(x, x)) out.push_back(make_violation("GEM-REF", {{"x", x}}));
    for (const std::string& x : in.atemporal_domain)
        for (const std::string& y : in.atemporal_domain) {
            if (x < y && has2(x, y) && has2(y, x))
                out.push_back(make_violation("GEM-ASYM", {{"x", x}, {"y", y}}));
        }
    for (const Pair& ab : in.p2)
        for (const Pair& bc : in.p2) {
            if (ab.second != bc.first || has2(ab.first, bc.second)) continue;
            out.push_back(make_violation(
                "GEM-TRANS", {{"x", ab.first}, {"y", ab.second}, {"z", bc.second}}));
        }
    if (in.check_ssp) {
        for (const std::string& x : in.atemporal_domain)
            for (const std::string& y : in.atemporal_domain) {
                if (x == y || has2(y, x)) continue;
                bool witness = false;
                for (const std::string& z : in.atemporal_domain)
                    if (has2(z, y) && !o2(z, x)) {
                        witness = true;
                        break;
                    }
                if (!witness) out.push_back(make_violation("GEM-SSP", {{"x", x}, {"y", y}}));
            }
    }

    auto at3 = [&](const std::string& a, const std::string& b, Instant i) {
        return mask_of(in.p3, a, b).contains(i);
    };
    auto o3 = [&](const std::string& a, const std::string& b, Instant i) {
        for (const std::string& z : in.temporal_domain)
            if (at3(z, a, i) && at3(z, b, i)) return true;
        return false;
    };
    auto pres = [&](const std::string& e, Instant i) {
        auto it = in.presence.find(e);
        return it != in.presence.end() && it->second.contains(i);
    };
    for (const std::string& x : in.temporal_domain) {
        auto it = in.presence.find(x);
        if (it == in.presence.end()) continue;
        InstantSet bad;
        for (Instant i : it->second.instants())
            if (!at3(x, x, i)) bad.add(i);
        for (auto [lo, hi] : bad.runs())
            out.push_back(make_violation(
                "GEM-REF", {{"x", x}, {"t", render_instants(InstantSet::range(lo, hi))}}));
    }
    for (const auto& [xy, mxy] : in.p3)
        for (const auto& [yz, myz] : in.p3) {
            if (xy.second != yz.first) continue;
            InstantSet bad;
            const InstantSet common = mxy.intersect(myz);
            for (Instant i : common.instants())
                if (!at3(xy.first, yz.second, i)) bad.add(i);
            for (auto [lo, hi] : bad.runs())
                out.push_back(make_violation("GEM-TRANS",
                                             {{"x", xy.first},
                                              {"y", xy.second},
                                              {"z", yz.second},
                                              {"t", render_instants(InstantSet::range(lo, hi))}}));
        }
    if (in.check_ssp) {
        for (const std::string& x : in.temporal_domain)
            for (const std::string& y : in.temporal_domain) {
                if (x == y) continue;
                InstantSet bad;
                for (Instant i = 0; i < in.timeline; ++i) {
                    if (pres(x, i) && pres(y, i) && !at3(y, x, i)) {
                        bool witness = false;
                        for (const std::string& z : in.temporal_domain)
                            if (at3(z, y, i) && !o3(z, x, i)) {
                                witness = true;
                                break;
                            }
                        if (!witness) bad.add(i);
                    }
                }
                for (auto [lo, hi] : bad.runs())
                    out.push_back(make_violation(
                        "GEM-SSP",
                        {{"x", x}, {"y", y}, {"t", render_instants(InstantSet::range(lo, hi))}}));
            }
    }
    return out;
}

namespace {

GemInput gem_input(const ClosedKB& ckb, bool ssp) {
    GemInput in;
    in.check_ssp = ssp;
    for (const auto& [id, e] : ckb.kb.entities) {
        if (ckb.kb.instance_of(id, "PD") || ckb.kb.instance_of(id, "AB"))
            in.atemporal_domain.push_back(id);
        if (ckb.kb.instance_of(id, "ED")) in.temporal_domain.push_back(id);
    }
    in.p2 = ckb.p2;
    in.p3 = ckb.p3;
    in.presence = ckb.quale;
    in.timeline = ckb.kb.timeline_size;
    return in;
}

void check_p_typing(const ClosedKB& ckb, std::vector<Violation>& out, bool temporal) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "P" || !l.positive) continue;
        if (temporal && l.args.size() == 3) {
            const std::string& x = l.args[0].name;
            const std::string& y = l.args[1].name;
            if (!ckb.kb.instance_of(x, "ED") || !ckb.kb.instance_of(y, "ED"))
                out.push_back(
                    make_violation("Ad10", {{"x", x}, {"y", y}, {"t", l.args[2].name}}));
        } else if (!temporal && l.args.size() == 2 && l.args[0].kind == Term::Kind::Entity &&
                   l.args[1].kind == Term::Kind::Entity) {
            const std::string& x = l.args[0].name;
            const std::string& y = l.args[1].name;
            bool pd = ckb.kb.instance_of(x, "PD") && ckb.kb.instance_of(y, "PD");
            bool ab = ckb.kb.instance_of(x, "AB") && ckb.kb.instance_of(y, "AB");
            if (!pd && !ab) out.push_back(make_violation("GEM-typing", {{"x", x}, {"y", y}}));
        }
    }
}

void check_ad17(const ClosedKB& ckb, std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "P" || !l.positive || l.args.size() != 3) continue;
        const std::string& x = l.args[0].name;
        const std::string& y = l.args[1].name;
        if (!ckb.kb.instance_of(x, "ED") || !ckb.kb.instance_of(y, "ED")) continue;  // Ad10's case
        const InstantSet& t = l.args[2].time;
        if (!ckb.present(x, t) || !ckb.present(y, t))
            out.push_back(make_violation("Ad17", {{"x", x}, {"y", y}, {"t", l.args[2].name}}));
    }
}

// Negative parthood literal covered by the closure. The label names the
// weakest layer that already covers it.
void check_negative_parthood(const ClosedKB& ckb, const std::string& label,
                             std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "P" || l.positive) continue;
        if (l.args.size() == 3) {
            const std::string& x = l.args[0].name;
            const std::string& y = l.args[1].name;
            const InstantSet& t = l.args[2].time;
            std::string layer;
            if (t.subset_of(mask_of(ckb.p3_asserted, x, y))) layer = "P-conflict";
            else if (t.subset_of(mask_of(ckb.p3_reflexive, x, y))) layer = "GEM-REF";
            else if (t.subset_of(mask_of(ckb.p3, x, y))) layer = "GEM-TRANS";
            if (layer == label)
                out.push_back(make_violation(label, {{"x", x}, {"y", y}, {"t", l.args[2].name}}));
        } else if (l.args.size() == 2 && l.args[0].kind == Term::Kind::Entity) {
            const std::string& x = l.args[0].name;
            const std::string& y = l.args[1].name;
            std::string layer;
            if (ckb.p2_asserted.count({x, y})) layer = "P-conflict";
            else if (x == y && ckb.p2.count({x, y})) layer = "GEM-REF";
            else if (ckb.p2.count({x, y})) layer = "GEM-TRANS";
            if (layer == label) out.push_back(make_violation(label, {{"x", x}, {"y", y}}));
        }
    }
}

void check_sum_equations(const ClosedKB& ckb, const std::string& label,
                         std::vector<Violation>& out) {
    for (const Literal& l : ckb.kb.literals) {
        if (l.rel != "=" || l.args[0].kind != Term::Kind::Entity) continue;
        const Term& rhs = l.args[1];
        bool fusion = rhs.kind == Term::Kind::Fusion;
        std::vector<std::string> ops;
        if (fusion) {
            for (const auto& [id, e] : ckb.kb.entities)
                if (ckb.kb.instance_of(id, rhs.operands.at(0))) ops.push_back(id);
        } else {
            ops = rhs.operands;
        }
        bool temporal = !ops.empty() && ckb.kb.instance_of(ops.front(), "ED");
        std::string want = fusion ? "Dd27-fusion" : (temporal ? "Dd26-sum" : "Dd18-sum");
        if (want != label) continue;
        const std::string& lhs = l.args[0].name;
        bool holds = false;
        if (!ops.empty()) {
            SumResult r = resolve_sum(ckb, ops, temporal);
            holds = r.status == SumResolution::Resolved && r.entity == lhs;
        }
        if (holds == l.positive) continue;
        out.push_back(make_violation(label, {{"x", lhs}, {"sum", rhs.name}}));
    }
}

}  // namespace

void run_checks(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out) {
    if (label == "Ad10") check_p_typing(ckb, out, true);
    else if (label == "GEM-typing") check_p_typing(ckb, out, false);
    else if (label == "Ad17") check_ad17(ckb, out);
    else if (label == "GEM-ASYM") {
        for (const Violation& v : check_gem_structure(gem_input(ckb, false)))
            if (v.label == "GEM-ASYM") out.push_back(v);
    } else if (label == "GEM-REF" || label == "GEM-TRANS") {
        for (const Violation& v : check_gem_structure(gem_input(ckb, false)))
            if (v.label == label) out.push_back(v);
        check_negative_parthood(ckb, label, out);
    } else if (label == "GEM-SSP") {
        for (const Violation& v : check_gem_structure(gem_input(ckb, true)))
            if (v.label == "GEM-SSP") out.push_back(v);
    } else if (label == "P-conflict") {
        check_negative_parthood(ckb, label, out);
    } else if (label == "Dd18-sum" || label == "Dd26-sum" || label == "Dd27-fusion") {
        check_sum_equations(ckb, label, out);
    }
}

}  // namespace dolce::mereology
