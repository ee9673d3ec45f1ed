#include "taxonomy.hpp"

#include <functional>

namespace dolce {

namespace {

void check_symbol(const Sexpr& e, const char* what) {
    if (!e.is_symbol()) throw SyntaxError(e.pos, std::string(what) + " must be a symbol");
}

}  // namespace

Taxonomy Taxonomy::from_forms(const std::vector<Sexpr>& forms) {
    Taxonomy t;
    t.extend(forms);
    return t;
}

Taxonomy Taxonomy::from_text(const std::string& text, const std::string& path) {
    SourceDocument doc = parse_document(text, path);
    return from_forms(doc.forms);
}

void Taxonomy::add_category(const Sexpr& form) {
    if (form.size() < 2) throw SyntaxError(form.pos, "(category <name> <parent>...) expects a name");
    check_symbol(form.at(1), "category name");
    const std::string& name = form.at(1).text;
    if (parents_.count(name))
        throw SyntaxError(form.at(1).pos, "duplicate category '" + name + "'");
    std::vector<std::string> ps;
    for (std::size_t i = 2; i < form.size(); ++i) {
        check_symbol(form.at(i), "category parent");
        ps.push_back(form.at(i).text);
    }
    parents_[name] = ps;
    decl_pos_[name] = form.pos;
}

void Taxonomy::extend(const std::vector<Sexpr>& forms) {
    for (const Sexpr& form : forms) {
        const std::string& head = form.at(0).text;
        if (head == "category") {
            add_category(form);
        } else if (head == "disjoint") {
            std::vector<std::string> group;
            for (std::size_t i = 1; i < form.size(); ++i) {
                check_symbol(form.at(i), "disjoint member");
                group.push_back(form.at(i).text);
            }
            if (group.size() < 2) throw SyntaxError(form.pos, "(disjoint ...) needs at least two categories");
            disjoint_groups_.push_back(group);
        } else if (head == "quality-leaf") {
            for (std::size_t i = 1; i < form.size(); ++i) {
                check_symbol(form.at(i), "quality-leaf member");
                quality_leaves_.insert(form.at(i).text);
            }
        }
    }
    validate();
}

void Taxonomy::validate() {
    children_.clear();
    for (const auto& [cat, ps] : parents_) {
        for (const std::string& p : ps) {
            if (!parents_.count(p))
                throw SyntaxError(decl_pos_.at(cat), "unknown parent category '" + p + "' of '" + cat + "'");
            children_[p].push_back(cat);
        }
    }

    // Cycle detection and ancestor closure by DFS.
    ancestors_.clear();
    std::map<std::string, int> state;  // 0 unvisited, 1 in progress, 2 done
    std::function<void(const std::string&)> visit = [&](const std::string& cat) {
        int& st = state[cat];
        if (st == 2) return;
        if (st == 1) throw SyntaxError(decl_pos_.at(cat), "cycle in isa edges through '" + cat + "'");
        st = 1;
        std::set<std::string> anc = {cat};
        for (const std::string& p : parents_.at(cat)) {
            visit(p);
            const std::set<std::string>& pa = ancestors_.at(p);
            anc.insert(pa.begin(), pa.end());
        }
        ancestors_[cat] = std::move(anc);
        st = 2;
    };
    for (const auto& [cat, ps] : parents_) visit(cat);

    for (const std::vector<std::string>& group : disjoint_groups_)
        for (const std::string& c : group)
            if (!parents_.count(c))
                throw SyntaxError({}, "disjoint group names unknown category '" + c + "'");

    // No category may sit under two members of one disjoint group; otherwise
    // any entity typed by it would breach disjointness.
    for (const auto& [cat, anc] : ancestors_) {
        for (const std::vector<std::string>& group : disjoint_groups_) {
            int hits = 0;
            std::string first, second;
            for (const std::string& g : group)
                if (anc.count(g)) {
                    ++hits;
                    (hits == 1 ? first : second) = g;
                }
            if (hits > 1)
                throw SyntaxError(decl_pos_.at(cat), "category '" + cat + "' falls under disjoint categories '" +
                                                         first + "' and '" + second + "'");
        }
    }

    for (const std::string& leaf : quality_leaves_) {
        if (!parents_.count(leaf))
            throw SyntaxError({}, "quality-leaf mark on unknown category '" + leaf + "'");
        if (!ancestors_.at(leaf).count("Q"))
            throw SyntaxError(decl_pos_.at(leaf),
                              "quality-leaf mark on '" + leaf + "' which is outside the quality branch");
        if (children_.count(leaf) && !children_.at(leaf).empty())
            throw SyntaxError(decl_pos_.at(leaf), "quality-leaf '" + leaf + "' has children");
    }
}

bool Taxonomy::subsumes(const std::string& ancestor, const std::string& descendant) const {
    if (!has(ancestor)) throw SyntaxError({}, "unknown category '" + ancestor + "'");
    if (!has(descendant)) throw SyntaxError({}, "unknown category '" + descendant + "'");
    return ancestors_.at(descendant).count(ancestor) != 0;
}

const std::set<std::string>& Taxonomy::ancestors_of(const std::string& category) const {
    auto it = ancestors_.find(category);
    if (it == ancestors_.end()) throw SyntaxError({}, "unknown category '" + category + "'");
    return it->second;
}

std::vector<std::string> Taxonomy::categories() const {
    std::vector<std::string> out;
    for (const auto& [cat, ps] : parents_) out.push_back(cat);
    return out;
}

const std::string& default_taxonomy_text() {
    static const std::string text = R"TAX(; Default category system: the DOLCE taxonomy extended with the
; subcategories used by the bundled cases.

; Branch roots
(category ED)
(category PD)
(category Q)
(category AB)
(disjoint ED PD Q AB)

; Endurants
(category PED ED)
(category NPED ED)
(category AS ED)
(disjoint PED NPED AS)
(category M PED)
(category F PED)
(category POB PED)
(disjoint M F POB)
(category APO POB)
(category NAPO POB)
(disjoint APO NAPO)
(category Artefact NAPO)
(category NPOB NPED)
(category MOB NPOB)
(category SOB NPOB)
(disjoint MOB SOB)
(category ASO SOB)
(category NASO SOB)
(disjoint ASO NASO)
(category SAG ASO)
(category SC ASO)
(category C NASO)
(category RL C)

; Perdurants
(category EV PD)
(category STV PD)
(disjoint EV STV)
(category ACH EV)
(category ACC EV)
(disjoint ACH ACC)
(category ST STV)
(category PRO STV)
(disjoint ST PRO)

; Qualities
(category TQ Q)
(category PQ Q)
(category AQ Q)
(disjoint TQ PQ AQ)
(category TL TQ)
(category SL PQ)

; Abstracts
(category FACT AB)
(category SET AB)
(category R AB)
(disjoint FACT SET R)
(category TR R)
(category PR R)
(category AR R)
(disjoint TR PR AR)
(category T TR)
(category S PR)

; Case subcategories
(category Table Artefact)
(category Tabletop Artefact)
(category Leg Artefact)
(category Wood M)
(category Person APO)
(category Flower POB)
(category SocRelationship SOB)
(category Plan C)
(category SocMarriage C)
(category LegMarriage C)
(category Walk PRO)
(category Run PRO)
(category SpeedUp ACC)
(category Turn ACC)
(category ColorQuality PQ)
(category SpeedQuality TQ)
(category DirectionQuality TQ)
(category ColorSpace PR)
(category SpeedSpace TR)

(quality-leaf TL SL ColorQuality SpeedQuality DirectionQuality)
)TAX";
    return text;
}

const Taxonomy& default_taxonomy() {
    static const Taxonomy t = Taxonomy::from_text(default_taxonomy_text(), "<default-taxonomy>");
    return t;
}

}  // namespace dolce
