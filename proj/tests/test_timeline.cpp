#include <doctest.h>

#include <random>

#include "timeline.hpp"

using namespace dolce;

namespace {

TimeRegion rg(std::initializer_list<Instant> xs) { return TimeRegion(InstantSet(xs)); }

InstantSet random_set(std::mt19937& rng, int timeline) {
    std::vector<Instant> xs;
    for (Instant i = 0; i < timeline; ++i)
        if (rng() % 2) xs.push_back(i);
    if (xs.empty()) xs.push_back(static_cast<Instant>(rng() % timeline));
    return InstantSet(xs);
}

}  // namespace

TEST_CASE("region_part is inclusion") {
    CHECK(region_part(rg({0}), rg({0, 1, 2})));
    CHECK(region_part(rg({1, 2}), rg({1, 2})));        // reflexive
    CHECK_FALSE(region_part(rg({1, 3}), rg({1, 2})));  // set-inclusion oracle
}

TEST_CASE("region_sum unions instants") {
    CHECK(region_sum(rg({1, 2}), rg({2, 3})) == rg({1, 2, 3}));
    std::vector<TimeRegion> single = {rg({4, 5})};
    CHECK(region_sum(single) == rg({4, 5}));  // idempotent
    std::vector<TimeRegion> none;
    CHECK_THROWS_AS(region_sum(none), std::invalid_argument);
}

TEST_CASE("strictly_before") {
    CHECK(strictly_before(TimeRegion::range(0, 1), TimeRegion::range(2, 3)));
    CHECK_FALSE(strictly_before(rg({1, 2}), rg({2, 3})));  // overlap at 2
    CHECK_FALSE(strictly_before(rg({0}), rg({0})));        // irreflexive
    CHECK_THROWS_AS(strictly_before(rg({0, 2}), rg({3})), std::invalid_argument);
}

TEST_CASE("weakly_before") {
    CHECK(weakly_before(rg({1, 2, 3}), rg({3, 4, 5})));        // residues {1,2} < {4,5}
    CHECK_FALSE(weakly_before(rg({1, 2, 3, 4}), rg({2, 3})));  // containment
    CHECK_FALSE(weakly_before(rg({2, 3}), rg({1, 2, 3, 4})));
    CHECK_FALSE(weakly_before(rg({1, 2}), rg({1, 2})));
    // strictly_before implies weakly_before (empty overlap case)
    CHECK(weakly_before(rg({0, 1}), rg({3, 4})));
}

TEST_CASE("convexity") {
    CHECK(rg({2, 3, 4}).convex());
    CHECK(rg({7}).convex());
    CHECK_FALSE(rg({1, 3}).convex());
    CHECK_THROWS_AS(TimeRegion(InstantSet{}), std::invalid_argument);
    CHECK_THROWS_AS(TimeRegion::range(5, 3), std::invalid_argument);
}

TEST_CASE("runs split maximal consecutive blocks") {
    InstantSet s({0, 1, 3, 5, 6, 7});
    auto runs = s.runs();
    REQUIRE(runs.size() == 3);
    CHECK(runs[0] == std::pair<Instant, Instant>{0, 1});
    CHECK(runs[1] == std::pair<Instant, Instant>{3, 3});
    CHECK(runs[2] == std::pair<Instant, Instant>{5, 7});
}

TEST_CASE("property: region_part is a partial order and region_sum its join") {
    std::mt19937 rng(7);
    for (int round = 0; round < 500; ++round) {
        TimeRegion a{random_set(rng, 8)}, b{random_set(rng, 8)}, c{random_set(rng, 8)};
        CHECK(region_part(a, a));
        if (region_part(a, b) && region_part(b, a)) CHECK(a == b);
        if (region_part(a, b) && region_part(b, c)) CHECK(region_part(a, c));
        TimeRegion s = region_sum(a, b);
        CHECK(region_part(a, s));
        CHECK(region_part(b, s));
        // least upper bound: any other upper bound contains the sum
        if (region_part(a, c) && region_part(b, c)) CHECK(region_part(s, c));
        CHECK(region_sum(a, b) == region_sum(b, a));
        CHECK(region_sum(s, a) == s);
        CHECK(region_sum(region_sum(a, b), c) == region_sum(a, region_sum(b, c)));
    }
}

TEST_CASE("property: strictly_before vs brute-force intersection") {
    std::mt19937 rng(11);
    for (int round = 0; round < 500; ++round) {
        Instant a1 = static_cast<Instant>(rng() % 8), a2 = static_cast<Instant>(rng() % 8);
        Instant b1 = static_cast<Instant>(rng() % 8), b2 = static_cast<Instant>(rng() % 8);
        TimeRegion a = TimeRegion::range(std::min(a1, a2), std::max(a1, a2));
        TimeRegion b = TimeRegion::range(std::min(b1, b2), std::max(b1, b2));
        if (strictly_before(a, b)) {
            bool overlap = false;
            for (Instant i : a.set().instants()) overlap = overlap || b.set().contains(i);
            CHECK_FALSE(overlap);
            CHECK_FALSE(strictly_before(b, a));  // asymmetry
        }
        Instant c1 = static_cast<Instant>(rng() % 8), c2 = static_cast<Instant>(rng() % 8);
        TimeRegion c = TimeRegion::range(std::min(c1, c2), std::max(c1, c2));
        if (strictly_before(a, b) && strictly_before(b, c)) CHECK(strictly_before(a, c));
    }
}
