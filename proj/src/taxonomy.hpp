#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sexpr.hpp"

namespace dolce {

// The DOLCE category DAG with subsumption, disjointness and the markers for
// the leaves of the quality branch. Category names are opaque symbols; the
// four branch roots are ED, PD, Q and AB.
class Taxonomy {
public:
    // Builds from (category ...) / (disjoint ...) / (quality-leaf ...) forms
    // and validates. Throws SyntaxError on cycles, unknown parents, a quality
    // leaf outside the quality branch or under a disjointness clash.
    static Taxonomy from_forms(const std::vector<Sexpr>& forms);
    static Taxonomy from_text(const std::string& text, const std::string& path = "<taxonomy>");

    bool has(const std::string& category) const { return parents_.count(category) != 0; }

    // Reflexive-transitive subsumption. Throws SyntaxError on unknown categories.
    bool subsumes(const std::string& ancestor, const std::string& descendant) const;

    const std::set<std::string>& ancestors_of(const std::string& category) const;
    const std::set<std::string>& quality_leaves() const { return quality_leaves_; }
    const std::vector<std::vector<std::string>>& disjoint_groups() const { return disjoint_groups_; }
    std::vector<std::string> categories() const;

    bool is_quality_leaf(const std::string& category) const {
        return quality_leaves_.count(category) != 0;
    }

    // Merges extra declarations (used when a knowledge-base document extends
    // the loaded taxonomy) and revalidates.
    void extend(const std::vector<Sexpr>& forms);

private:
    void add_category(const Sexpr& form);
    void validate();

    std::map<std::string, std::vector<std::string>> parents_;
    std::map<std::string, std::vector<std::string>> children_;
    std::vector<std::vector<std::string>> disjoint_groups_;
    std::set<std::string> quality_leaves_;
    std::map<std::string, std::set<std::string>> ancestors_;  // reflexive-transitive
    std::map<std::string, SourcePos> decl_pos_;
};

// The shipped default taxonomy: the DOLCE category tree extended with the
// case-specific subcategories (Table, Leg, Wood, Person, Walk, Run, SpeedUp,
// Turn, Plan, SocMarriage, LegMarriage, SocRelationship, the quality and
// space subcategories). Mirrored as a config file in data/.
const std::string& default_taxonomy_text();
const Taxonomy& default_taxonomy();

}  // namespace dolce
