#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sexpr.hpp"
#include "taxonomy.hpp"
#include "timeline.hpp"

namespace dolce {

// Resolved literal argument. Times carry both the instant set and the
// spelling they had in the source (named region or "t+t'" sugar), which is
// what reports print.
struct Term {
    enum class Kind { Entity, Time, Point, SpaceRegion, Space, EntitySum, Fusion };
    Kind kind = Kind::Entity;
    std::string name;                    // id / point / region / space / display
    InstantSet time;                     // Kind::Time
    std::vector<std::string> operands;   // EntitySum (sorted); Fusion holds {category}

    static Term entity(std::string id);
    static Term time_term(InstantSet s, std::string display);
    std::string key() const;  // canonical spelling for ground-atom identity
};

struct Literal {
    std::string rel;
    std::vector<Term> args;
    bool positive = true;
    SourcePos pos;

    std::string key() const;  // relation + argument keys, polarity excluded
};

struct Entity {
    std::string id;
    std::string leaf_category;
    bool derived = false;  // skolem sums, life events
};

struct SpaceDef {
    std::string name;
    std::vector<std::string> points;  // declaration order
    std::set<std::pair<std::string, std::string>> adjacency;  // stored sorted pairwise
    std::map<std::string, std::set<std::string>> regions;
    bool has_order = false;
    std::map<std::string, int> order_index;

    bool adjacent(const std::string& a, const std::string& b) const;
    // Shortest path length in the adjacency graph; order-index distance when a
    // total order is declared. -1 when unreachable.
    int distance(const std::string& a, const std::string& b) const;
};

struct SchemaDef {
    enum class Kind { Stable, Monotone, Turning, Continuous };
    std::string category;
    Kind kind;
    std::string space;
    std::string target;  // Turning only
    SourcePos pos;
};

struct ConceptFlags {
    bool founded = false;
    bool functional = false;
    bool presence_coupled = false;
};

struct CoverDef {
    std::string whole;
    std::vector<std::string> parts;
    InstantSet time;
    std::string time_display;
    SourcePos pos;
};

struct RequiresDef {
    std::string subject;  // the evolving concept
    std::string required;
    InstantSet time;
    std::string time_display;
    SourcePos pos;
};

// Immutable after build; all checker modules take read-only access.
struct KnowledgeBase {
    Taxonomy taxonomy;
    std::map<std::string, Entity> entities;
    std::map<std::string, InstantSet> times;
    int timeline_size = 0;
    std::map<std::string, SpaceDef> spaces;
    std::map<std::string, std::string> point_space;   // point -> space
    std::map<std::string, std::string> region_space;  // named region -> space
    std::vector<Literal> literals;
    std::vector<SchemaDef> schemas;
    std::map<std::string, ConceptFlags> flags;
    std::vector<CoverDef> covers;
    std::vector<RequiresDef> requires_decls;
    std::map<std::string, int> user_relations;  // name -> arity

    bool has_entity(const std::string& id) const { return entities.count(id) != 0; }
    const Entity& entity(const std::string& id) const;
    // True iff the entity's leaf category is cat or one of its descendants.
    bool instance_of(const std::string& id, const std::string& cat) const;
    const ConceptFlags& flags_of(const std::string& id) const;
    const SchemaDef* schema_for(const std::string& leaf_category) const;

    // Named region whose instants equal s, if any (ties broken by name).
    std::string render_region(const InstantSet& s) const;
};

// Resolves a parsed document against the given taxonomy (extended by any
// taxonomy forms carried in the document itself). Throws SyntaxError on
// unresolved identifiers, arity or sort mismatches, duplicate ids, bad
// region bounds and literal polarity conflicts.
KnowledgeBase build_kb(const SourceDocument& doc, const Taxonomy& base);

// Single-literal mutation hook for the test harness:
//   drop-REL-arg1-...   remove an asserted positive literal
//   add-REL-arg1-...    insert a positive literal
//   swap-REL-arg1-...   swap the first two arguments of a literal
// ':' may be used instead of '-' as the separator.
void apply_mutation(KnowledgeBase& kb, const std::string& mutation);

}  // namespace dolce
