#include "kb.hpp"

#include <algorithm>
#include <deque>

namespace dolce {

Term Term::entity(std::string id) {
    Term t;
    t.kind = Kind::Entity;
    t.name = std::move(id);
    return t;
}

Term Term::time_term(InstantSet s, std::string display) {
    Term t;
    t.kind = Kind::Time;
    t.time = std::move(s);
    t.name = std::move(display);
    return t;
}

std::string Term::key() const {
    switch (kind) {
        case Kind::Entity: return "e:" + name;
        case Kind::Time: return "t:" + render_instants(time);
        case Kind::Point: return "p:" + name;
        case Kind::SpaceRegion: return "r:" + name;
        case Kind::Space: return "s:" + name;
        case Kind::EntitySum: {
            std::string k = "sum:";
            for (std::size_t i = 0; i < operands.size(); ++i) {
                if (i) k += "+";
                k += operands[i];
            }
            return k;
        }
        case Kind::Fusion: return "fusion:" + operands.at(0);
    }
    return "";
}

std::string Literal::key() const {
    std::string k = rel;
    for (const Term& a : args) {
        k += " ";
        k += a.key();
    }
    return k;
}

bool SpaceDef::adjacent(const std::string& a, const std::string& b) const {
    auto p = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    return adjacency.count(p) != 0;
}

int SpaceDef::distance(const std::string& a, const std::string& b) const {
    if (has_order) return std::abs(order_index.at(a) - order_index.at(b));
    if (a == b) return 0;
    std::map<std::string, int> dist;
    std::deque<std::string> queue;
    dist[a] = 0;
    queue.push_back(a);
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        for (const std::string& next : points) {
            if (dist.count(next) || !adjacent(cur, next)) continue;
            dist[next] = dist[cur] + 1;
            if (next == b) return dist[next];
            queue.push_back(next);
        }
    }
    return -1;
}

const Entity& KnowledgeBase::entity(const std::string& id) const {
    auto it = entities.find(id);
    if (it == entities.end()) throw SyntaxError({}, "unknown entity '" + id + "'");
    return it->second;
}

bool KnowledgeBase::instance_of(const std::string& id, const std::string& cat) const {
    return taxonomy.subsumes(cat, entity(id).leaf_category);
}

const ConceptFlags& KnowledgeBase::flags_of(const std::string& id) const {
    static const ConceptFlags none;
    auto it = flags.find(id);
    return it == flags.end() ? none : it->second;
}

const SchemaDef* KnowledgeBase::schema_for(const std::string& leaf_category) const {
    for (const SchemaDef& s : schemas)
        if (s.category == leaf_category) return &s;
    return nullptr;
}

std::string KnowledgeBase::render_region(const InstantSet& s) const {
    for (const auto& [name, set] : times)
        if (set == s) return name;
    return render_instants(s);
}

namespace {

class Builder {
public:
    Builder(const SourceDocument& doc, const Taxonomy& base) : doc_(doc) { kb_.taxonomy = base; }

    KnowledgeBase run() {
        std::vector<Sexpr> tax_forms;
        for (const Sexpr& f : doc_.forms) {
            const std::string& head = f.at(0).text;
            if (head == "category" || head == "disjoint" || head == "quality-leaf")
                tax_forms.push_back(f);
        }
        if (!tax_forms.empty()) kb_.taxonomy.extend(tax_forms);

        // Declarations before assertions, so literal arguments resolve
        // regardless of order in the file.
        for (const Sexpr& f : doc_.forms) {
            const std::string& head = f.at(0).text;
            if (head == "entity") declare_entity(f);
            else if (head == "time") declare_time(f);
            else if (head == "space") declare_space(f);
            else if (head == "relation") declare_relation(f);
        }
        for (const Sexpr& f : doc_.forms) {
            const std::string& head = f.at(0).text;
            if (head == "schema") declare_schema(f);
            else if (head == "concept-flags") declare_flags(f);
            else if (head == "cover") declare_cover(f);
            else if (head == "requires") declare_requires(f);
            else if (head == "assert") add_assert(f);
        }
        for (const auto& [name, set] : kb_.times)
            kb_.timeline_size = std::max(kb_.timeline_size, set.max() + 1);
        return std::move(kb_);
    }

private:
    const SourceDocument& doc_;
    KnowledgeBase kb_;
    std::set<std::string> names_;                 // one namespace for all ids
    std::map<std::string, bool> literal_polarity_;  // literal key -> polarity

    [[noreturn]] void fail(SourcePos pos, const std::string& msg) { throw SyntaxError(pos, msg); }

    void claim_name(const Sexpr& at, const std::string& name, const char* what) {
        if (!at.is_symbol() && !at.is_number()) fail(at.pos, std::string(what) + " must be a symbol");
        if (names_.count(name)) fail(at.pos, std::string("duplicate id '") + name + "'");
        if (name.find('+') != std::string::npos)
            fail(at.pos, "'+' is reserved for temporal sum sugar");
        if (name.find('?') != std::string::npos) fail(at.pos, "'?' is reserved for query variables");
        names_.insert(name);
    }

    const std::string& sym(const Sexpr& e, const char* what) {
        if (!e.is_symbol()) fail(e.pos, std::string(what) + " must be a symbol");
        return e.text;
    }

    void expect_size(const Sexpr& f, std::size_t n, const char* usage) {
        if (f.size() != n) fail(f.pos, std::string("expected ") + usage);
    }

    void declare_entity(const Sexpr& f) {
        expect_size(f, 3, "(entity <id> <category>)");
        const std::string& id = sym(f.at(1), "entity id");
        const std::string& cat = sym(f.at(2), "entity category");
        claim_name(f.at(1), id, "entity id");
        if (!kb_.taxonomy.has(cat)) fail(f.at(2).pos, "unknown category '" + cat + "'");
        kb_.entities[id] = Entity{id, cat, false};
    }

    void declare_time(const Sexpr& f) {
        if (f.size() != 4 && f.size() != 3)
            fail(f.pos, "expected (time <id> <lo> <hi>) or (time <id> (instants i...))");
        const std::string& id = sym(f.at(1), "time id");
        claim_name(f.at(1), id, "time id");
        if (f.size() == 4) {
            if (!f.at(2).is_number() || !f.at(3).is_number()) fail(f.pos, "time bounds must be numbers");
            long lo = f.at(2).number, hi = f.at(3).number;
            if (lo > hi) fail(f.pos, "bad time range: lo > hi");
            kb_.times[id] = InstantSet::range(static_cast<Instant>(lo), static_cast<Instant>(hi));
        } else {
            const Sexpr& lst = f.at(2);
            if (!lst.is_list() || lst.size() < 2 || !lst.at(0).is_symbol("instants"))
                fail(f.at(2).pos, "expected (instants i...)");
            std::vector<Instant> xs;
            for (std::size_t i = 1; i < lst.size(); ++i) {
                if (!lst.at(i).is_number()) fail(lst.at(i).pos, "instant must be a number");
                xs.push_back(static_cast<Instant>(lst.at(i).number));
            }
            kb_.times[id] = InstantSet(std::move(xs));
        }
    }

    void declare_space(const Sexpr& f) {
        if (f.size() < 3) fail(f.pos, "expected (space <name> (points ...) ...)");
        SpaceDef sp;
        sp.name = sym(f.at(1), "space name");
        claim_name(f.at(1), sp.name, "space name");
        for (std::size_t i = 2; i < f.size(); ++i) {
            const Sexpr& clause = f.at(i);
            if (!clause.is_list() || clause.items.empty() || !clause.at(0).is_symbol())
                fail(clause.pos, "space clause must be a list");
            const std::string& ch = clause.at(0).text;
            if (ch == "points") {
                for (std::size_t j = 1; j < clause.size(); ++j) {
                    const std::string& p = sym(clause.at(j), "point");
                    claim_name(clause.at(j), p, "point");
                    sp.points.push_back(p);
                    kb_.point_space[p] = sp.name;
                }
            } else if (ch == "adjacent") {
                expect_size(clause, 3, "(adjacent <p> <q>)");
                const std::string& a = sym(clause.at(1), "point");
                const std::string& b = sym(clause.at(2), "point");
                for (const std::string* p : {&a, &b})
                    if (std::find(sp.points.begin(), sp.points.end(), *p) == sp.points.end())
                        fail(clause.pos, "adjacency names unknown point '" + *p + "'");
                sp.adjacency.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
            } else if (ch == "region") {
                if (clause.size() < 3) fail(clause.pos, "expected (region <name> <point>...)");
                const std::string& rn = sym(clause.at(1), "region name");
                claim_name(clause.at(1), rn, "region name");
                std::set<std::string> members;
                for (std::size_t j = 2; j < clause.size(); ++j) {
                    const std::string& p = sym(clause.at(j), "point");
                    if (std::find(sp.points.begin(), sp.points.end(), p) == sp.points.end())
                        fail(clause.at(j).pos, "region names unknown point '" + p + "'");
                    members.insert(p);
                }
                sp.regions[rn] = std::move(members);
                kb_.region_space[rn] = sp.name;
            } else if (ch == "order") {
                if (clause.size() != sp.points.size() + 1)
                    fail(clause.pos, "order must list every point of the space exactly once");
                sp.has_order = true;
                for (std::size_t j = 1; j < clause.size(); ++j) {
                    const std::string& p = sym(clause.at(j), "point");
                    if (std::find(sp.points.begin(), sp.points.end(), p) == sp.points.end())
                        fail(clause.at(j).pos, "order names unknown point '" + p + "'");
                    if (sp.order_index.count(p)) fail(clause.at(j).pos, "point repeated in order");
                    sp.order_index[p] = static_cast<int>(j - 1);
                }
            } else {
                fail(clause.pos, "unknown space clause '" + ch + "'");
            }
        }
        if (sp.points.empty()) fail(f.pos, "space has no points");
        kb_.spaces[sp.name] = std::move(sp);
    }

    void declare_relation(const Sexpr& f) {
        expect_size(f, 3, "(relation <name> <arity>)");
        const std::string& name = sym(f.at(1), "relation name");
        if (!f.at(2).is_number() || f.at(2).number < 1 || f.at(2).number > 4)
            fail(f.at(2).pos, "relation arity must be 1..4");
        static const std::set<std::string> reserved = {"P",  "PC", "K",  "CF",           "qt", "ql",
                                                       "PRE", "PCC", "ExecutesPlan", "<",  "<=", "="};
        if (reserved.count(name)) fail(f.at(1).pos, "'" + name + "' is a built-in relation");
        if (kb_.user_relations.count(name)) fail(f.at(1).pos, "duplicate relation '" + name + "'");
        kb_.user_relations[name] = static_cast<int>(f.at(2).number);
    }

    void declare_schema(const Sexpr& f) {
        if (f.size() != 4 && f.size() != 5)
            fail(f.pos, "expected (schema <category> <kind> <space> [<target>])");
        SchemaDef sd;
        sd.pos = f.pos;
        sd.category = sym(f.at(1), "schema category");
        if (!kb_.taxonomy.has(sd.category)) fail(f.at(1).pos, "unknown category '" + sd.category + "'");
        const std::string& kind = sym(f.at(2), "schema kind");
        if (kind == "stable") sd.kind = SchemaDef::Kind::Stable;
        else if (kind == "monotone") sd.kind = SchemaDef::Kind::Monotone;
        else if (kind == "turning") sd.kind = SchemaDef::Kind::Turning;
        else if (kind == "continuous") sd.kind = SchemaDef::Kind::Continuous;
        else fail(f.at(2).pos, "schema kind must be stable|monotone|turning|continuous");
        sd.space = sym(f.at(3), "schema space");
        auto it = kb_.spaces.find(sd.space);
        if (it == kb_.spaces.end()) fail(f.at(3).pos, "unknown space '" + sd.space + "'");
        if (sd.kind == SchemaDef::Kind::Monotone && !it->second.has_order)
            fail(f.pos, "monotone schema needs a space with a declared order");
        if (sd.kind == SchemaDef::Kind::Turning) {
            if (f.size() != 5) fail(f.pos, "turning schema needs a target point");
            sd.target = sym(f.at(4), "turning target");
            if (kb_.point_space.find(sd.target) == kb_.point_space.end() ||
                kb_.point_space.at(sd.target) != sd.space)
                fail(f.at(4).pos, "turning target must be a point of the schema space");
            if (!it->second.has_order && it->second.adjacency.empty())
                fail(f.pos, "turning schema needs an order or adjacency for distances");
        } else if (f.size() == 5) {
            fail(f.at(4).pos, "only turning schemas take a target");
        }
        kb_.schemas.push_back(std::move(sd));
    }

    void declare_flags(const Sexpr& f) {
        if (f.size() < 3) fail(f.pos, "expected (concept-flags <entity> (<flag>)...)");
        const std::string& id = sym(f.at(1), "concept");
        if (!kb_.has_entity(id)) fail(f.at(1).pos, "unknown entity '" + id + "'");
        ConceptFlags& fl = kb_.flags[id];
        for (std::size_t i = 2; i < f.size(); ++i) {
            const Sexpr& c = f.at(i);
            if (!c.is_list() || c.size() != 1 || !c.at(0).is_symbol())
                fail(c.pos, "flag must be (founded), (functional) or (presence-coupled)");
            const std::string& flag = c.at(0).text;
            if (flag == "founded") fl.founded = true;
            else if (flag == "functional") fl.functional = true;
            else if (flag == "presence-coupled") fl.presence_coupled = true;
            else fail(c.pos, "unknown concept flag '" + flag + "'");
        }
        if (!kb_.instance_of(id, "C"))
            fail(f.at(1).pos, "concept flags apply to entities in category C");
    }

    void declare_cover(const Sexpr& f) {
        expect_size(f, 4, "(cover <whole> (<part>...) <time>)");
        CoverDef cv;
        cv.pos = f.pos;
        cv.whole = resolve_entity_name(f.at(1));
        const Sexpr& parts = f.at(2);
        if (!parts.is_list() || parts.items.empty()) fail(parts.pos, "cover needs a nonempty part list");
        for (const Sexpr& p : parts.items) cv.parts.push_back(resolve_entity_name(p));
        Term t = resolve_term(f.at(3));
        if (t.kind != Term::Kind::Time) fail(f.at(3).pos, "cover time must be a time region");
        cv.time = t.time;
        cv.time_display = t.name;
        kb_.covers.push_back(std::move(cv));
    }

    void declare_requires(const Sexpr& f) {
        expect_size(f, 4, "(requires <concept> <required-concept> <time>)");
        RequiresDef rq;
        rq.pos = f.pos;
        rq.subject = resolve_entity_name(f.at(1));
        rq.required = resolve_entity_name(f.at(2));
        for (const std::string* c : {&rq.subject, &rq.required})
            if (!kb_.instance_of(*c, "C"))
                fail(f.pos, "requires applies to concepts; '" + *c + "' is not in C");
        Term t = resolve_term(f.at(3));
        if (t.kind != Term::Kind::Time) fail(f.at(3).pos, "requires time must be a time region");
        rq.time = t.time;
        rq.time_display = t.name;
        kb_.requires_decls.push_back(std::move(rq));
    }

    std::string resolve_entity_name(const Sexpr& e) {
        const std::string& id = sym(e, "entity");
        if (!kb_.has_entity(id)) fail(e.pos, "unknown entity '" + id + "'");
        return id;
    }

    Term resolve_name(const Sexpr& e) {
        const std::string& id = sym(e, "argument");
        if (id.find('+') != std::string::npos) return resolve_sum_sugar(e);
        Term t;
        t.name = id;
        if (kb_.entities.count(id)) t.kind = Term::Kind::Entity;
        else if (kb_.times.count(id)) {
            t.kind = Term::Kind::Time;
            t.time = kb_.times.at(id);
        } else if (kb_.point_space.count(id)) t.kind = Term::Kind::Point;
        else if (kb_.region_space.count(id)) t.kind = Term::Kind::SpaceRegion;
        else if (kb_.spaces.count(id)) t.kind = Term::Kind::Space;
        else fail(e.pos, "unresolved identifier '" + id + "'");
        return t;
    }

    Term resolve_sum_sugar(const Sexpr& e) {
        // "t1+t2" shorthand: the temporal sum of named regions.
        std::vector<std::string> parts;
        std::string cur;
        for (char c : e.text) {
            if (c == '+') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        parts.push_back(cur);
        InstantSet acc;
        for (const std::string& p : parts) {
            if (p.empty()) fail(e.pos, "malformed temporal sum '" + e.text + "'");
            auto it = kb_.times.find(p);
            if (it == kb_.times.end())
                fail(e.pos, "temporal sum sugar needs named time regions; '" + p + "' is not one");
            acc.add(it->second);
        }
        return Term::time_term(acc, e.text);
    }

    Term resolve_term(const Sexpr& e) {
        if (e.is_symbol()) return resolve_name(e);
        if (e.is_list() && !e.items.empty() && e.at(0).is_symbol("sum")) {
            if (e.size() < 3) fail(e.pos, "(sum ...) needs at least two operands");
            std::vector<Term> ops;
            for (std::size_t i = 1; i < e.size(); ++i) ops.push_back(resolve_term(e.at(i)));
            bool all_times = true, all_entities = true;
            for (const Term& o : ops) {
                all_times &= o.kind == Term::Kind::Time;
                all_entities &= o.kind == Term::Kind::Entity;
            }
            if (all_times) {
                InstantSet acc;
                std::string display;
                for (std::size_t i = 0; i < ops.size(); ++i) {
                    acc.add(ops[i].time);
                    if (i) display += "+";
                    display += ops[i].name;
                }
                return Term::time_term(acc, display);
            }
            if (all_entities) {
                Term t;
                t.kind = Term::Kind::EntitySum;
                for (const Term& o : ops) t.operands.push_back(o.name);
                std::sort(t.operands.begin(), t.operands.end());
                t.operands.erase(std::unique(t.operands.begin(), t.operands.end()), t.operands.end());
                t.name = t.key().substr(4);
                return t;
            }
            fail(e.pos, "(sum ...) operands must be all times or all entities");
        }
        if (e.is_list() && !e.items.empty() && e.at(0).is_symbol("fusion")) {
            expect_size(e, 2, "(fusion <category>)");
            const std::string& cat = sym(e.at(1), "fusion category");
            if (!kb_.taxonomy.has(cat)) fail(e.at(1).pos, "unknown category '" + cat + "'");
            Term t;
            t.kind = Term::Kind::Fusion;
            t.operands = {cat};
            t.name = "fusion:" + cat;
            return t;
        }
        fail(e.pos, "expected an identifier, (sum ...) or (fusion ...)");
    }

    bool kind_in(const Term& t, std::initializer_list<Term::Kind> ks) {
        for (Term::Kind k : ks)
            if (t.kind == k) return true;
        return false;
    }

    void add_assert(const Sexpr& f) {
        expect_size(f, 2, "(assert <literal>) or (assert (not <literal>))");
        const Sexpr* lit = &f.at(1);
        bool positive = true;
        if (lit->is_list() && !lit->items.empty() && lit->at(0).is_symbol("not")) {
            if (lit->size() != 2) fail(lit->pos, "expected (not <literal>)");
            positive = false;
            lit = &lit->at(1);
        }
        if (!lit->is_list() || lit->items.empty() || !lit->at(0).is_symbol())
            fail(lit->pos, "literal must be (<relation> <arg>...)");
        Literal out;
        out.rel = lit->at(0).text;
        out.positive = positive;
        out.pos = lit->pos;
        for (std::size_t i = 1; i < lit->size(); ++i) out.args.push_back(resolve_term(lit->at(i)));
        validate_literal(out, *lit);
        std::string k = out.key();
        auto [it, fresh] = literal_polarity_.emplace(k, positive);
        if (!fresh) {
            if (it->second != positive)
                fail(lit->pos, "conflicting literal: '" + k + "' already asserted with opposite polarity");
            return;  // exact duplicate, keep the first
        }
        kb_.literals.push_back(std::move(out));
    }

    void validate_literal(const Literal& l, const Sexpr& at) {
        auto entityish = [&](const Term& t) {
            return kind_in(t, {Term::Kind::Entity, Term::Kind::EntitySum, Term::Kind::Fusion});
        };
        auto spatial = [&](const Term& t) {
            return kind_in(t, {Term::Kind::Point, Term::Kind::SpaceRegion, Term::Kind::Space});
        };
        const std::string& r = l.rel;
        auto arity = [&](std::initializer_list<std::size_t> ok, const char* usage) {
            for (std::size_t n : ok)
                if (l.args.size() == n) return;
            fail(at.pos, std::string("arity mismatch: ") + usage);
        };
        if (r == "P") {
            arity({2, 3}, "P takes (part whole) or (part whole time)");
            if (l.args.size() == 3) {
                if (!entityish(l.args[0]) || !entityish(l.args[1]) || l.args[2].kind != Term::Kind::Time)
                    fail(at.pos, "P/3 takes two entities and a time region");
            } else {
                bool tt = l.args[0].kind == Term::Kind::Time && l.args[1].kind == Term::Kind::Time;
                bool ss = spatial(l.args[0]) && spatial(l.args[1]);
                bool ee = entityish(l.args[0]) && entityish(l.args[1]);
                if (!tt && !ss && !ee)
                    fail(at.pos, "P/2 takes two entities, two time regions, or two space members");
            }
        } else if (r == "PC" || r == "K" || r == "CF") {
            arity({3}, (r + " takes (x y time)").c_str());
            if (!entityish(l.args[0]) || !entityish(l.args[1]) || l.args[2].kind != Term::Kind::Time)
                fail(at.pos, r + " takes two entities and a time region");
        } else if (r == "qt") {
            arity({2}, "qt takes (quality bearer)");
            if (!entityish(l.args[0]) || !entityish(l.args[1]))
                fail(at.pos, "qt takes two entities");
        } else if (r == "ql") {
            arity({2, 3}, "ql takes (position quality) or (position quality time)");
            const Term& p = l.args[0];
            if (l.args.size() == 3) {
                if (!kind_in(p, {Term::Kind::Point, Term::Kind::SpaceRegion}))
                    fail(at.pos, "ql/3 position must be a space point or region");
                if (l.args[2].kind != Term::Kind::Time) fail(at.pos, "ql/3 third argument must be a time");
            } else {
                if (!kind_in(p, {Term::Kind::Point, Term::Kind::SpaceRegion, Term::Kind::Time}))
                    fail(at.pos, "ql/2 position must be a space point, a region or a time region");
            }
            if (!entityish(l.args[1])) fail(at.pos, "ql quality must be an entity");
        } else if (r == "PRE") {
            arity({2}, "PRE takes (entity time)");
            if (!entityish(l.args[0]) || l.args[1].kind != Term::Kind::Time)
                fail(at.pos, "PRE takes an entity and a time region");
        } else if (r == "ExecutesPlan") {
            arity({2}, "ExecutesPlan takes (perdurant plan)");
            if (!entityish(l.args[0]) || !entityish(l.args[1]))
                fail(at.pos, "ExecutesPlan takes two entities");
        } else if (r == "PCC") {
            arity({2}, "PCC takes (endurant perdurant)");
            if (!entityish(l.args[0]) || !entityish(l.args[1]))
                fail(at.pos, "PCC takes two entities");
        } else if (r == "<" || r == "<=") {
            arity({2}, "time order takes (t1 t2)");
            if (l.args[0].kind != Term::Kind::Time || l.args[1].kind != Term::Kind::Time)
                fail(at.pos, r + " takes two time regions");
        } else if (r == "=") {
            arity({2}, "= takes (x <sum-or-fusion>) or (t <time-sum>)");
            bool times = l.args[0].kind == Term::Kind::Time && l.args[1].kind == Term::Kind::Time;
            bool ent = l.args[0].kind == Term::Kind::Entity &&
                       kind_in(l.args[1], {Term::Kind::EntitySum, Term::Kind::Fusion});
            if (!times && !ent)
                fail(at.pos, "= takes a time and a temporal sum, or an entity and a sum/fusion term");
        } else if (kb_.user_relations.count(r)) {
            arity({static_cast<std::size_t>(kb_.user_relations.at(r))}, "user relation arity");
        } else {
            fail(at.pos, "unknown relation '" + r + "'");
        }
    }
};

}  // namespace

KnowledgeBase build_kb(const SourceDocument& doc, const Taxonomy& base) {
    return Builder(doc, base).run();
}

namespace {

std::vector<std::string> split_mutation(const std::string& m) {
    char sep = m.find(':') != std::string::npos ? ':' : '-';
    std::vector<std::string> parts;
    std::string cur;
    for (char c : m) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

void apply_mutation(KnowledgeBase& kb, const std::string& mutation) {
    std::vector<std::string> parts = split_mutation(mutation);
    if (parts.size() < 3) throw SyntaxError({}, "malformed mutation '" + mutation + "'");
    const std::string& op = parts[0];
    const std::string& rel = parts[1];

    std::string text = "(" + rel;
    for (std::size_t i = 2; i < parts.size(); ++i) text += " " + parts[i];
    text += ")";
    const Sexpr lit = parse_expression(text);
    Literal target;
    target.rel = rel;
    target.positive = true;
    for (std::size_t i = 1; i < lit.size(); ++i) {
        const Sexpr& a = lit.at(i);
        const std::string& id = a.text;
        Term t;
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
                if (it == kb.times.end()) throw SyntaxError({}, "mutation: unknown time '" + n + "'");
                acc.add(it->second);
            }
            t = Term::time_term(acc, id);
        } else if (kb.entities.count(id)) {
            t = Term::entity(id);
        } else if (kb.times.count(id)) {
            t = Term::time_term(kb.times.at(id), id);
        } else if (kb.point_space.count(id)) {
            t.kind = Term::Kind::Point;
            t.name = id;
        } else if (kb.region_space.count(id)) {
            t.kind = Term::Kind::SpaceRegion;
            t.name = id;
        } else if (kb.spaces.count(id)) {
            t.kind = Term::Kind::Space;
            t.name = id;
        } else {
            throw SyntaxError({}, "mutation: unresolved identifier '" + id + "'");
        }
        target.args.push_back(t);
    }

    auto find = [&]() {
        std::string key = target.key();
        for (std::size_t i = 0; i < kb.literals.size(); ++i)
            if (kb.literals[i].positive && kb.literals[i].key() == key) return i;
        throw SyntaxError({}, "mutation: no asserted literal matches '" + mutation + "'");
    };

    if (op == "drop") {
        kb.literals.erase(kb.literals.begin() + static_cast<long>(find()));
    } else if (op == "add") {
        for (const Literal& l : kb.literals)
            if (l.key() == target.key() && l.positive != target.positive)
                throw SyntaxError({}, "mutation: conflicts with an asserted negative literal");
        kb.literals.push_back(target);
    } else if (op == "swap") {
        std::size_t i = find();
        if (kb.literals[i].args.size() < 2) throw SyntaxError({}, "mutation: swap needs two arguments");
        std::swap(kb.literals[i].args[0], kb.literals[i].args[1]);
    } else {
        throw SyntaxError({}, "mutation op must be drop, add or swap");
    }
}

}  // namespace dolce

