#include <doctest.h>

#include "helpers.hpp"
#include "taxonomy.hpp"

using namespace dolce;
using namespace dolce::testing;

TEST_CASE("default taxonomy shape") {
    const Taxonomy& tax = default_taxonomy();
    CHECK(tax.subsumes("PED", "Artefact"));  // Artefact -> NAPO -> POB -> PED
    CHECK(tax.subsumes("PD", "ACC"));        // accomplishments are eventive perdurants
    CHECK(tax.subsumes("C", "C"));           // reflexive
    CHECK_FALSE(tax.subsumes("ED", "PD"));
    CHECK(tax.is_quality_leaf("TL"));
    CHECK(tax.is_quality_leaf("ColorQuality"));
    CHECK_FALSE(tax.is_quality_leaf("PQ"));
    CHECK_THROWS_AS(tax.subsumes("ED", "NoSuchCategory"), SyntaxError);
}

TEST_CASE("property: subsumption is reflexive, transitive, antisymmetric") {
    const Taxonomy& tax = default_taxonomy();
    std::vector<std::string> cats = tax.categories();
    for (const std::string& a : cats) {
        CHECK(tax.subsumes(a, a));
        for (const std::string& b : cats) {
            if (tax.subsumes(a, b) && tax.subsumes(b, a)) CHECK(a == b);
            for (const std::string& c : cats)
                if (tax.subsumes(a, b) && tax.subsumes(b, c)) CHECK(tax.subsumes(a, c));
        }
    }
}

TEST_CASE("cycle in isa edges is rejected") {
    CHECK_THROWS_WITH_AS(Taxonomy::from_text("(category X X)"),
                         doctest::Contains("cycle"), SyntaxError);
    CHECK_THROWS_WITH_AS(Taxonomy::from_text("(category A B)\n(category B A)"),
                         doctest::Contains("cycle"), SyntaxError);
}

TEST_CASE("unknown parent is rejected") {
    CHECK_THROWS_WITH_AS(Taxonomy::from_text("(category A Nowhere)"),
                         doctest::Contains("unknown parent"), SyntaxError);
}

TEST_CASE("quality-leaf marks outside the quality branch are rejected") {
    CHECK_THROWS_WITH_AS(
        Taxonomy::from_text("(category ED)\n(category Q)\n(category X ED)\n(quality-leaf X)"),
        doctest::Contains("outside the quality branch"), SyntaxError);
    CHECK_THROWS_WITH_AS(Taxonomy::from_text("(category Q)\n(category A Q)\n(category B A)\n"
                                             "(quality-leaf A)"),
                         doctest::Contains("has children"), SyntaxError);
}

TEST_CASE("a category under two disjoint parents is rejected") {
    CHECK_THROWS_WITH_AS(
        Taxonomy::from_text("(category A)\n(category B)\n(disjoint A B)\n(category X A B)"),
        doctest::Contains("disjoint"), SyntaxError);
}

TEST_CASE("instance_of follows the leaf category upward") {
    ClosedKB ckb = closed_fixture("case1_table.dkb");
    CHECK(ckb.kb.instance_of("T", "PED"));
    CHECK(ckb.kb.instance_of("T", "Table"));
    CHECK_FALSE(ckb.kb.instance_of("T", "Wood"));
    CHECK_THROWS_AS(ckb.kb.instance_of("nobody", "PED"), SyntaxError);
}

TEST_CASE("no entity instantiates two categories of one disjoint group") {
    ClosedKB ckb = closed_fixture("case1_table.dkb");
    for (const auto& [id, e] : ckb.kb.entities)
        for (const auto& group : ckb.kb.taxonomy.disjoint_groups()) {
            int hits = 0;
            for (const std::string& c : group)
                if (ckb.kb.instance_of(id, c)) ++hits;
            CHECK(hits <= 1);
        }
}

TEST_CASE("shipped config file matches the embedded default") {
    std::string file = read_file(std::string(DOLCE_DATA_DIR) + "/default_taxonomy.dkb");
    CHECK(file == default_taxonomy_text());
}
