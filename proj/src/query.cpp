#include <algorithm>

#include "engine.hpp"
#include "mereology.hpp"

namespace dolce {

namespace {

struct Slot {
    bool is_var = false;
    std::string var;
    Term term;
};

Term resolve_query_name(const ClosedKB& ckb, const std::string& id) {
    const KnowledgeBase& kb = ckb.kb;
    if (id.find('+') != std::string::npos) {
        InstantSet acc;
        std::string cur;
        std::vector<std::string> names;
        for (char c : id) {
            if (c == '+') {
                names.push_back(cur);
                cur.clear();
            } else
                cur.push_back(c);
        }
        names.push_back(cur);
        for (const std::string& n : names) {
            auto it = kb.times.find(n);
            if (it == kb.times.end()) throw CloseError("unknown time region '" + n + "'");
            acc.add(it->second);
        }
        return Term::time_term(acc, id);
    }
    if (kb.entities.count(id)) return Term::entity(id);
    if (kb.times.count(id)) return Term::time_term(kb.times.at(id), id);
    Term t;
    t.name = id;
    if (kb.point_space.count(id)) t.kind = Term::Kind::Point;
    else if (kb.region_space.count(id)) t.kind = Term::Kind::SpaceRegion;
    else if (kb.spaces.count(id)) t.kind = Term::Kind::Space;
    else throw CloseError("unresolved identifier '" + id + "' in pattern");
    return t;
}

bool attestation_matches(const Attestation& a, const Term& pos, const Term& quality,
                         const InstantSet* time) {
    if (a.quality != quality.name) return false;
    if (a.position.kind != pos.kind) return false;
    if (pos.kind == Term::Kind::Time) {
        if (!(a.position.time == pos.time)) return false;
    } else if (a.position.name != pos.name) {
        return false;
    }
    if (time == nullptr) return !a.time.has_value();
    return a.time.has_value() && *a.time == *time;
}

bool eval_atom(const ClosedKB& ckb, const std::string& rel, const std::vector<Term>& args) {
    if (rel == "P") {
        if (args.size() == 3) return ckb.p3_holds(args[0].name, args[1].name, args[2].time);
        if (args[0].kind == Term::Kind::Time && args[1].kind == Term::Kind::Time)
            return args[0].time.subset_of(args[1].time);
        if (args[0].kind == Term::Kind::Entity && args[1].kind == Term::Kind::Entity)
            return ckb.p2.count({args[0].name, args[1].name}) != 0;
        return eval_space_part(ckb.kb, args[0], args[1]);
    }
    if (rel == "K") return ckb.k_holds(args[0].name, args[1].name, args[2].time);
    if (rel == "PC")
        return !args[2].time.empty() &&
               args[2].time.subset_of(mask_of(ckb.pc, args[0].name, args[1].name));
    if (rel == "PRE") return ckb.present(args[0].name, args[1].time);
    if (rel == "CF") return ckb.cf_holds(args[0].name, args[1].name, args[2].time);
    if (rel == "qt") {
        auto it = ckb.qt_bearers.find(args[0].name);
        return it != ckb.qt_bearers.end() &&
               std::find(it->second.begin(), it->second.end(), args[1].name) != it->second.end();
    }
    if (rel == "ql") {
        const InstantSet* time = args.size() == 3 ? &args[2].time : nullptr;
        for (const Attestation& a : ckb.attestations)
            if (attestation_matches(a, args[0], args[1], time)) return true;
        return false;
    }
    if (rel == "ExecutesPlan")
        return std::find(ckb.executes.begin(), ckb.executes.end(),
                         Pair{args[0].name, args[1].name}) != ckb.executes.end();
    if (rel == "PCC") return ckb.pcc.count({args[0].name, args[1].name}) != 0;
    // User-declared relations: closed world over the asserted atoms.
    Literal probe;
    probe.rel = rel;
    probe.args = args;
    std::string key = probe.key();
    for (const Literal& l : ckb.kb.literals)
        if (l.positive && l.key() == key) return true;
    return false;
}

// Candidate values for a variable slot, by relation and position.
std::vector<Term> slot_domain(const ClosedKB& ckb, const std::string& rel, std::size_t pos,
                              std::size_t arity) {
    const KnowledgeBase& kb = ckb.kb;
    std::vector<Term> out;
    auto add_entities = [&] {
        for (const auto& [id, e] : kb.entities) out.push_back(Term::entity(id));
    };
    auto add_times = [&] {
        for (const auto& [name, set] : kb.times) out.push_back(Term::time_term(set, name));
    };
    auto add_points = [&] {
        for (const auto& [p, s] : kb.point_space) {
            Term t;
            t.kind = Term::Kind::Point;
            t.name = p;
            out.push_back(t);
        }
    };
    auto add_regions = [&] {
        for (const auto& [r, s] : kb.region_space) {
            Term t;
            t.kind = Term::Kind::SpaceRegion;
            t.name = r;
            out.push_back(t);
        }
    };
    bool time_slot = (rel == "P" && arity == 3 && pos == 2) ||
                     ((rel == "K" || rel == "PC" || rel == "CF") && pos == 2) ||
                     (rel == "PRE" && pos == 1) || (rel == "ql" && arity == 3 && pos == 2);
    if (time_slot) {
        add_times();
        return out;
    }
    if (rel == "ql" && pos == 0) {
        add_points();
        add_regions();
        if (arity == 2) add_times();
        return out;
    }
    if (kb.user_relations.count(rel)) {
        add_entities();
        add_times();
        add_points();
        return out;
    }
    add_entities();
    return out;
}

}  // namespace

std::vector<std::string> run_query(const ClosedKB& ckb, const std::string& pattern) {
    Sexpr e = parse_expression(pattern);
    if (!e.is_list() || e.items.empty() || !e.at(0).is_symbol())
        throw CloseError("pattern must be (<relation> <arg>...)");
    const std::string& rel = e.at(0).text;
    static const std::set<std::string> builtin = {"P",  "K",  "PC",           "PRE", "CF",
                                                  "qt", "ql", "ExecutesPlan", "PCC"};
    if (!builtin.count(rel) && !ckb.kb.user_relations.count(rel))
        throw CloseError("unknown relation '" + rel + "'");

    std::vector<Slot> slots;
    for (std::size_t i = 1; i < e.size(); ++i) {
        const Sexpr& a = e.at(i);
        if (!a.is_symbol()) throw CloseError("pattern arguments must be identifiers or ?variables");
        Slot s;
        if (!a.text.empty() && a.text[0] == '?') {
            s.is_var = true;
            s.var = a.text;
        } else {
            s.term = resolve_query_name(ckb, a.text);
        }
        slots.push_back(std::move(s));
    }
    std::size_t arity = slots.size();
    bool arity_ok;
    if (rel == "P" || rel == "ql") arity_ok = arity == 2 || arity == 3;
    else if (rel == "K" || rel == "PC" || rel == "CF") arity_ok = arity == 3;
    else if (builtin.count(rel)) arity_ok = arity == 2;
    else arity_ok = arity == static_cast<std::size_t>(ckb.kb.user_relations.at(rel));
    if (!arity_ok) throw CloseError("arity mismatch in pattern for '" + rel + "'");

    std::vector<std::string> lines;
    std::vector<Term> bound(arity);
    std::vector<std::size_t> var_slots;
    for (std::size_t i = 0; i < arity; ++i) {
        if (slots[i].is_var) var_slots.push_back(i);
        else bound[i] = slots[i].term;
    }

    std::function<void(std::size_t)> enumerate = [&](std::size_t vi) {
        if (vi == var_slots.size()) {
            if (!eval_atom(ckb, rel, bound)) return;
            if (var_slots.empty()) {
                lines.push_back("true");
                return;
            }
            std::string line;
            for (std::size_t k = 0; k < var_slots.size(); ++k) {
                if (k) line += " ";
                line += slots[var_slots[k]].var + "=" + bound[var_slots[k]].name;
            }
            lines.push_back(std::move(line));
            return;
        }
        std::size_t i = var_slots[vi];
        for (const Term& cand : slot_domain(ckb, rel, i, arity)) {
            bound[i] = cand;
            enumerate(vi + 1);
        }
    };
    enumerate(0);
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    return lines;
}

}  // namespace dolce
