#include "engine.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "concepts.hpp"
#include "constitution.hpp"
#include "mereology.hpp"
#include "presence.hpp"
#include "quality.hpp"

namespace dolce {

bool ClosedKB::cf_holds(const std::string& x, const std::string& c, const InstantSet& t) const {
    auto it = cf.find({x, c});
    if (it == cf.end()) return false;
    return std::find(it->second.begin(), it->second.end(), t) != it->second.end();
}

std::vector<InstantSet> ClosedKB::convex_regions() const {
    std::vector<InstantSet> out;
    for (Instant lo = 0; lo < kb.timeline_size; ++lo)
        for (Instant hi = lo; hi < kb.timeline_size; ++hi) out.push_back(InstantSet::range(lo, hi));
    return out;
}

bool eval_space_part(const KnowledgeBase& kb, const Term& a, const Term& b) {
    using K = Term::Kind;
    if (a.kind == K::Point && b.kind == K::Point) return a.name == b.name;
    if (a.kind == K::Point && b.kind == K::SpaceRegion)
        return kb.point_space.at(a.name) == kb.region_space.at(b.name) &&
               kb.spaces.at(kb.region_space.at(b.name)).regions.at(b.name).count(a.name) != 0;
    if (a.kind == K::Point && b.kind == K::Space) return kb.point_space.at(a.name) == b.name;
    if (a.kind == K::SpaceRegion && b.kind == K::SpaceRegion) {
        if (kb.region_space.at(a.name) != kb.region_space.at(b.name)) return false;
        const SpaceDef& sp = kb.spaces.at(kb.region_space.at(a.name));
        const std::set<std::string>& ra = sp.regions.at(a.name);
        const std::set<std::string>& rb = sp.regions.at(b.name);
        return std::includes(rb.begin(), rb.end(), ra.begin(), ra.end());
    }
    if (a.kind == K::SpaceRegion && b.kind == K::Space) return kb.region_space.at(a.name) == b.name;
    if (a.kind == K::Space && b.kind == K::Space) return a.name == b.name;
    return false;
}

namespace {

bool has_sum_arg(const Literal& l) {
    for (const Term& a : l.args)
        if (a.kind == Term::Kind::EntitySum || a.kind == Term::Kind::Fusion) return true;
    return false;
}

// Indexes one literal into the closed stores. `=` equations and negative
// literals stay on the literal list only; checks read them from there.
void index_literal(ClosedKB& ckb, const Literal& l) {
    if (!l.positive) return;
    if (l.rel == "P") {
        if (l.args.size() == 3)
            ckb.p3_asserted[{l.args[0].name, l.args[1].name}].add(l.args[2].time);
        else if (l.args[0].kind == Term::Kind::Entity && l.args[1].kind == Term::Kind::Entity)
            ckb.p2_asserted.insert({l.args[0].name, l.args[1].name});
    } else if (l.rel == "K") {
        ckb.k_asserted[{l.args[0].name, l.args[1].name}].add(l.args[2].time);
    } else if (l.rel == "PCC") {
        ckb.pcc.insert({l.args[0].name, l.args[1].name});
    } else if (l.rel == "CF") {
        auto& regions = ckb.cf[{l.args[0].name, l.args[1].name}];
        if (std::find(regions.begin(), regions.end(), l.args[2].time) == regions.end())
            regions.push_back(l.args[2].time);
    } else if (l.rel == "qt") {
        auto& bearers = ckb.qt_bearers[l.args[0].name];
        if (std::find(bearers.begin(), bearers.end(), l.args[1].name) == bearers.end())
            bearers.push_back(l.args[1].name);
        auto& qs = ckb.qt_qualities[l.args[1].name];
        if (std::find(qs.begin(), qs.end(), l.args[0].name) == qs.end())
            qs.push_back(l.args[0].name);
    } else if (l.rel == "ql") {
        Attestation a;
        a.position = l.args[0];
        a.quality = l.args[1].name;
        if (l.args.size() == 3) {
            a.time = l.args[2].time;
            a.time_display = l.args[2].name;
        }
        ckb.attestations.push_back(std::move(a));
    } else if (l.rel == "ExecutesPlan") {
        ckb.executes.emplace_back(l.args[0].name, l.args[1].name);
    }
}

std::vector<std::string> fusion_operands(const ClosedKB& ckb, const std::string& category) {
    std::vector<std::string> ops;
    for (const auto& [id, e] : ckb.kb.entities)
        if (ckb.kb.instance_of(id, category)) ops.push_back(id);
    return ops;
}

// Resolves a sum/fusion term that an asserted literal needs as a value.
// Unresolvable terms are a closure error unless skolemization is on.
std::string resolve_required_sum(ClosedKB& ckb, const Term& t) {
    std::vector<std::string> ops =
        t.kind == Term::Kind::Fusion ? fusion_operands(ckb, t.operands.at(0)) : t.operands;
    if (ops.empty()) throw CloseError("sum term '" + t.name + "' has no operands");
    bool all_ed = true, all_atemporal = true;
    for (const std::string& op : ops) {
        all_ed = all_ed && ckb.kb.instance_of(op, "ED");
        all_atemporal =
            all_atemporal && (ckb.kb.instance_of(op, "PD") || ckb.kb.instance_of(op, "AB"));
    }
    if (!all_ed && !all_atemporal)
        throw CloseError("sum term '" + t.name + "' mixes entity sorts");
    bool temporal = all_ed;
    if (ops.size() == 1) return ops.front();
    mereology::SumResult r = mereology::resolve_sum(ckb, ops, temporal);
    if (r.status == mereology::SumResolution::Resolved) return r.entity;
    if (r.status == mereology::SumResolution::Ambiguous)
        throw CloseError("sum term '" + t.name + "' is ambiguous");
    if (ckb.opts.skolemize_sums) return mereology::skolemize_sum(ckb, ops, temporal);
    throw CloseError("sum term '" + t.name +
                     "' required by an asserted literal cannot be resolved (no witness; "
                     "--skolemize-sums would create one)");
}

// Claim verification over declared structures: time ordering, time-region
// parthood and sum equations, space membership.
void run_claim_checks(const ClosedKB& ckb, const std::string& label,
                      std::vector<Violation>& out) {
    const KnowledgeBase& kb = ckb.kb;
    for (const Literal& l : kb.literals) {
        if (label == "time-order" && (l.rel == "<" || l.rel == "<=")) {
            TimeRegion t1{l.args[0].time}, t2{l.args[1].time};
            bool holds = l.rel == "<" ? strictly_before(t1, t2) : weakly_before(t1, t2);
            if (holds != l.positive)
                out.push_back(make_violation(
                    "time-order", {{"rel", l.rel}, {"t1", l.args[0].name}, {"t2", l.args[1].name}}));
        } else if (label == "time-part" && l.rel == "P" && l.args.size() == 2 &&
                   l.args[0].kind == Term::Kind::Time) {
            bool holds = l.args[0].time.subset_of(l.args[1].time);
            if (holds != l.positive)
                out.push_back(make_violation("time-part",
                                             {{"t1", l.args[0].name}, {"t2", l.args[1].name}}));
        } else if (label == "time-sum" && l.rel == "=" && l.args[0].kind == Term::Kind::Time) {
            bool holds = l.args[0].time == l.args[1].time;
            if (holds != l.positive)
                out.push_back(
                    make_violation("time-sum", {{"t1", l.args[0].name}, {"t2", l.args[1].name}}));
        } else if (label == "space-part" && l.rel == "P" && l.args.size() == 2 &&
                   (l.args[0].kind == Term::Kind::Point ||
                    l.args[0].kind == Term::Kind::SpaceRegion ||
                    l.args[0].kind == Term::Kind::Space)) {
            if (eval_space_part(kb, l.args[0], l.args[1]) != l.positive)
                out.push_back(make_violation("space-part",
                                             {{"a", l.args[0].name}, {"b", l.args[1].name}}));
        }
    }
}

}  // namespace

ClosedKB close_kb(KnowledgeBase kb, Options opts) {
    for (const std::string& m : opts.mutations) apply_mutation(kb, m);
    ClosedKB ckb;
    ckb.kb = std::move(kb);
    ckb.opts = std::move(opts);

    std::vector<std::size_t> deferred;  // literals with sum/fusion arguments
    for (std::size_t i = 0; i < ckb.kb.literals.size(); ++i) {
        if (ckb.kb.literals[i].rel == "=") continue;  // equations are claims
        if (has_sum_arg(ckb.kb.literals[i])) deferred.push_back(i);
        else index_literal(ckb, ckb.kb.literals[i]);
    }

    presence::compute_quales(ckb);
    mereology::saturate_atemporal(ckb);
    mereology::saturate_temporal(ckb);

    if (!deferred.empty()) {
        for (std::size_t i : deferred) {
            Literal& l = ckb.kb.literals[i];
            for (Term& a : l.args) {
                if (a.kind != Term::Kind::EntitySum && a.kind != Term::Kind::Fusion) continue;
                std::string z = resolve_required_sum(ckb, a);
                a = Term::entity(z);
            }
            index_literal(ckb, l);
        }
        presence::compute_quales(ckb);
        mereology::saturate_atemporal(ckb);
        mereology::saturate_temporal(ckb);
    }

    constitution::saturate(ckb);

    std::sort(ckb.executes.begin(), ckb.executes.end());
    ckb.executes.erase(std::unique(ckb.executes.begin(), ckb.executes.end()),
                       ckb.executes.end());
    for (auto& [pair, regions] : ckb.cf) std::sort(regions.begin(), regions.end());
    for (auto& [q, bs] : ckb.qt_bearers) std::sort(bs.begin(), bs.end());
    for (auto& [b, qs] : ckb.qt_qualities) std::sort(qs.begin(), qs.end());
    return ckb;
}

std::vector<Violation> check_all(const ClosedKB& ckb) {
    std::vector<Violation> out;
    for (const LabelInfo& li : label_registry()) {
        if (!li.is_check || !label_enabled(ckb.opts, li.label)) continue;
        mereology::run_checks(ckb, li.label, out);
        presence::run_checks(ckb, li.label, out);
        quality::run_checks(ckb, li.label, out);
        constitution::run_checks(ckb, li.label, out);
        concepts::run_checks(ckb, li.label, out);
        run_claim_checks(ckb, li.label, out);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool label_enabled(const Options& opts, const std::string& label) {
    const LabelInfo* li = find_label(label);
    bool on = li ? li->default_on : true;
    for (const std::string& l : opts.enable_labels)
        if (l == label) on = true;
    for (const std::string& l : opts.disable_labels)
        if (l == label) on = false;
    return on;
}

namespace {

struct Entry {
    const char* label;
    bool default_on;
    bool is_check;
    const char* formula;
    const char* message;  // constant per label; doubles as the explain note
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> es = {
        {"Ad10", true, true, "P(x,y,t) -> ED(x) & ED(y) & T(t)",
         "temporary parthood relates two endurants at a time"},
        {"GEM-typing", true, true, "P(x,y) -> (PD(x) & PD(y)) | (AB(x) & AB(y))",
         "atemporal parthood relates two perdurants or two abstracts"},
        {"Ad17", true, true, "P(x,y,t) -> PRE(x,t) & PRE(y,t)",
         "part and whole must be present at the time of the parthood"},
        {"GEM-REF", true, true, "P(x,x); PRE(x,t) -> P(x,x,t)",
         "parthood is reflexive at times of presence"},
        {"GEM-ASYM", true, true, "P(x,y) & P(y,x) -> x = y", "atemporal parthood is antisymmetric"},
        {"GEM-TRANS", true, true, "P(x,y,t) & P(y,z,t) -> P(x,z,t)", "parthood is transitive"},
        {"GEM-SSP", false, true, "~P(y,x,t) -> exists z (P(z,y,t) & ~O(z,x,t))",
         "strong supplementation"},
        {"P-conflict", true, true, "P and ~P clash on the same pair and time",
         "asserted parthood contradicts an asserted negative parthood"},
        {"Dd18-sum", true, true, "z = x+y iff forall w (O(w,z) <-> O(w,x) | O(w,y))",
         "the sum equation does not identify the named entity"},
        {"Dd26-sum", true, true, "z = x +te y iff forall w,t (O(w,z,t) <-> O(w,x,t) | O(w,y,t))",
         "the temporary sum equation does not identify the named entity"},
        {"Dd27-fusion", true, true,
         "z = sigma x phi(x) iff forall y,t (O(y,z,t) <-> exists w (phi(w) & O(y,w,t)))",
         "the fusion equation does not identify the named entity"},
        {"time-order", true, true, "t1 < t2: ordered, non-overlapping convex regions",
         "asserted time ordering contradicts the declared regions"},
        {"time-part", true, true, "P(t1,t2) on times is inclusion",
         "asserted time-region parthood contradicts the declared regions"},
        {"time-sum", true, true, "t = t1+t2 on times is union",
         "asserted time-region sum contradicts the declared regions"},
        {"space-part", true, true, "P on space members is membership/inclusion",
         "asserted space membership contradicts the declared space"},
        {"Ad46", true, true, "TQ(x) -> exists! y (qt(x,y) & PD(y))",
         "a temporal quality inheres in exactly one perdurant"},
        {"Ad47", true, true, "PQ(x) -> exists! y (qt(x,y) & PED(y))",
         "a physical quality inheres in exactly one physical endurant"},
        {"Ad48", true, true, "AQ(x) -> exists! y (qt(x,y) & NPED(y))",
         "an abstract quality inheres in exactly one non-physical endurant"},
        {"qt-typing", true, true, "qt(x,y) -> Q(x)", "only qualities inhere in entities"},
        {"qt-unique", true, true, "Q(x) -> exists! y qt(x,y)",
         "a quality inheres in exactly one entity"},
        {"ql-space", true, true, "all quales of one quality lie in one space",
         "a quality's quales are scattered over several spaces"},
        {"Dd40-conflict", true, true, "PRE(x,t) <-> exists t' (ql-T(t',x) & P(t,t'))",
         "derived presence contradicts an asserted negative presence"},
        {"Dd63", true, true, "PCC(x,y) -> exists t PRE(y,t)",
         "constant participation needs a present perdurant"},
        {"Ad33", true, true, "PC(x,y,t) -> ED(x) & PD(y) & T(t)",
         "participation relates an endurant to a perdurant at a time"},
        {"Ad34", false, true, "PD(x) & PRE(x,t) -> exists y PC(y,x,t)",
         "a present perdurant has at least one participant"},
        {"Ad35", false, true, "ED(x) -> exists y,t PC(x,y,t)",
         "an endurant participates in at least one perdurant"},
        {"Ad36", true, true, "PC(x,y,t) -> PRE(x,t) & PRE(y,t)",
         "participant and perdurant must be present at the participation time"},
        {"PC-conflict", true, true, "PC and ~PC clash on the same triple",
         "derived participation contradicts an asserted negative participation"},
        {"Ad20", true, true, "K(x,y,t) -> (ED(x) & ED(y)) | (PD(x) & PD(y))",
         "constitution relates two endurants or two perdurants"},
        {"Ad21", true, true, "K(x,y,t) -> (PED(x) <-> PED(y))",
         "only physical endurants constitute a physical endurant"},
        {"Ad24", true, true, "K(x,y,t) -> ~K(y,x,t)", "constitution is asymmetric"},
        {"K-conflict", true, true, "K and ~K clash on the same triple",
         "asserted constitution contradicts an asserted negative constitution"},
        {"K-trans", true, true, "K(x,y,t) & K(y,z,t) -> K(x,z,t)",
         "transitively derived constitution contradicts an asserted negative"},
        {"K-dist", true, true,
         "cover(y, y1..yn, t) & K(xi,yi,t) for all i -> K(x1+...+xn, y, t)",
         "distributed constitution contradicts an asserted negative"},
        {"A11", true, true, "CF(x,y,t) -> (ED(x) | PD(x)) & C(y) & T(t)",
         "classification applies a concept to an endurant or perdurant at a time"},
        {"A12", true, true, "CF(x,y,t) -> PRE(x,t)",
         "the classified entity must be present when classified"},
        {"A14", true, true, "CF(x,y,t) -> ~CF(y,x,t)", "classification is not symmetric"},
        {"A15", true, true, "CF(x,y,t) & CF(y,z,t) -> ~CF(x,z,t)",
         "a concept does not classify what its classifiers classify"},
        {"D3-AR", true, true, "RL(x) -> AR(x)", "a role must be anti-rigid"},
        {"D3-FD", true, true, "RL(x) -> FD(x)", "a role must be declared founded"},
        {"F12-functional", true, true, "FunctRL(y) & CF(x,y,t) & CF(x',y,t) -> x = x'",
         "a functional role classifies at most one entity at a time"},
        {"F26-continuous", true, true, "consecutive quales are equal or adjacent",
         "the quale history jumps across non-adjacent points"},
        {"F29-stable", true, true,
         "qt(s,x) & stable(x) & ql(li,s,ti) & ql(lj,s,tj) & ti,tj in tx -> li = lj",
         "the quale must stay fixed across the perdurant"},
        {"F30-monotone", true, true,
         "qt(s,x) & monotone(x) -> quales never decrease over time and strictly increase once",
         "the quale history must increase monotonically"},
        {"F39-turning", true, true,
         "turning(x, target): distances to the target strictly decrease and end at zero",
         "the distance to the target must strictly decrease to zero"},
        {"F37-plan", true, true, "ExecutesPlan(x,y) -> PD(x) & C(y)",
         "plan execution pairs a perdurant with a concept"},
        {"F37-plan-presence", true, true,
         "ExecutesPlan(x,y) & presence-coupled(y) -> PRE(y, ql-T(x))",
         "the plan must be present throughout the executing perdurant"},
        {"F43-evolution", true, true, "CF(x,c,t) -> CF(x,r,t) for the concept r required at t",
         "classification must satisfy the concept required at that time"},
        {"F43-distinct", true, true, "requires(c,r,t) & requires(c,r',t') & t /= t' -> r /= r'",
         "concepts required at different times must differ"},
        // Definitional labels, explain-only.
        {"Dd20", true, false, "PP(x,y,t) := P(x,y,t) & ~P(y,x,t)", "temporary proper part"},
        {"Dd21", true, false, "O(x,y,t) := exists z (P(z,x,t) & P(z,y,t))", "temporary overlap"},
        {"Dd29", true, false, "qt(phi,x,y) := qt(x,y) & phi(x), phi a quality leaf",
         "quality of a type"},
        {"Dd30", true, false, "ql-T(t,x) := PD(x) & exists z (qt(TL,z,x) & ql(t,z))",
         "temporal quale of perdurants"},
        {"Dd31", true, false, "ql-T(t,x) := ED(x) & t = sigma t' (exists y PC(x,y,t'))",
         "temporal quale of endurants"},
        {"Dd35", true, false, "ql-T(t,x) := the ED, PD or quality reading, whichever applies",
         "temporal quale"},
        {"Dd40", true, false, "PRE(x,t) := exists t' (ql-T(t',x) & P(t,t'))", "being present at"},
        {"D1-AR", true, false,
         "AR(c) := forall y,t (CF(y,c,t) -> exists t' (PRE(y,t') & ~CF(y,c,t')))",
         "anti-rigidity, concept-level reading"},
        {"F25-color-path", true, false,
         "exists p (SC(p) & endpoints in p & every point of p attested in the window)",
         "self-connected quale path across the window"},
    };
    return es;
}

}  // namespace

const std::vector<LabelInfo>& label_registry() {
    static const std::vector<LabelInfo> reg = [] {
        std::vector<LabelInfo> out;
        for (const Entry& e : entries())
            out.push_back({e.label, e.default_on, e.is_check, e.formula, e.message});
        return out;
    }();
    return reg;
}

const LabelInfo* find_label(const std::string& label) {
    for (const LabelInfo& li : label_registry())
        if (li.label == label) return &li;
    return nullptr;
}

Violation make_violation(const std::string& label,
                         std::vector<std::pair<std::string, std::string>> witnesses) {
    const LabelInfo* li = find_label(label);
    return Violation{label, std::move(witnesses), li ? li->note : ""};
}

std::string render_text_report(const std::vector<Violation>& vs) {
    std::ostringstream os;
    for (const Violation& v : vs) {
        os << v.label << " [";
        for (std::size_t i = 0; i < v.witnesses.size(); ++i) {
            if (i) os << " ";
            os << v.witnesses[i].first << "=" << v.witnesses[i].second;
        }
        os << "] " << v.message << "\n";
    }
    os << vs.size() << (vs.size() == 1 ? " violation" : " violations") << "\n";
    return os.str();
}

std::string render_json_report(const std::vector<Violation>& vs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Violation& v : vs) {
        nlohmann::ordered_json w = nlohmann::ordered_json::object();
        for (const auto& [k, val] : v.witnesses) w[k] = val;
        arr.push_back(nlohmann::ordered_json{
            {"label", v.label}, {"witnesses", std::move(w)}, {"message", v.message}});
    }
    return arr.dump(2) + "\n";
}

}  // namespace dolce
