#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dolce {

using Instant = int;

// Set of instant indices, possibly empty. Sorted, unique.
class InstantSet {
public:
    InstantSet() = default;
    explicit InstantSet(std::vector<Instant> xs);
    InstantSet(std::initializer_list<Instant> xs) : InstantSet(std::vector<Instant>(xs)) {}

    static InstantSet range(Instant lo, Instant hi);

    bool empty() const { return xs_.empty(); }
    std::size_t size() const { return xs_.size(); }
    Instant min() const { return xs_.front(); }
    Instant max() const { return xs_.back(); }
    bool contains(Instant i) const;
    bool subset_of(const InstantSet& other) const;
    bool intersects(const InstantSet& other) const;
    bool convex() const;

    InstantSet unite(const InstantSet& other) const;
    InstantSet intersect(const InstantSet& other) const;
    InstantSet minus(const InstantSet& other) const;
    void add(const InstantSet& other);
    void add(Instant i);

    const std::vector<Instant>& instants() const { return xs_; }
    // Maximal runs of consecutive indices, in ascending order.
    std::vector<std::pair<Instant, Instant>> runs() const;

    bool operator==(const InstantSet&) const = default;
    auto operator<=>(const InstantSet&) const = default;

private:
    std::vector<Instant> xs_;
};

// Nonempty time region over the discrete timeline.
class TimeRegion {
public:
    explicit TimeRegion(InstantSet s);
    static TimeRegion range(Instant lo, Instant hi);
    static TimeRegion single(Instant i) { return range(i, i); }

    const InstantSet& set() const { return set_; }
    bool convex() const { return set_.convex(); }
    Instant min() const { return set_.min(); }
    Instant max() const { return set_.max(); }

    bool operator==(const TimeRegion&) const = default;
    auto operator<=>(const TimeRegion&) const = default;

private:
    InstantSet set_;
};

// P on times: inclusion.
bool region_part(const TimeRegion& t1, const TimeRegion& t2);

// Sum (fusion) of times: union. Throws std::invalid_argument on an empty list.
TimeRegion region_sum(std::span<const TimeRegion> ts);
TimeRegion region_sum(const TimeRegion& a, const TimeRegion& b);

bool region_overlap(const TimeRegion& t1, const TimeRegion& t2);

// t1 < t2: ordered and non-overlapping. Both arguments must be convex.
bool strictly_before(const TimeRegion& t1, const TimeRegion& t2);

// t1 <= t2: ordered, properly overlapping or disjoint; containment is false.
// Both arguments must be convex.
bool weakly_before(const TimeRegion& t1, const TimeRegion& t2);

// "{0,2,5}" or "0..3" textual form, used when no declared name matches.
std::string render_instants(const InstantSet& s);

}  // namespace dolce
