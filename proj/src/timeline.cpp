#include "timeline.hpp"

namespace dolce {

InstantSet::InstantSet(std::vector<Instant> xs) : xs_(std::move(xs)) {
    std::sort(xs_.begin(), xs_.end());
    xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
}

InstantSet InstantSet::range(Instant lo, Instant hi) {
    InstantSet s;
    for (Instant i = lo; i <= hi; ++i) s.xs_.push_back(i);
    return s;
}

bool InstantSet::contains(Instant i) const {
    return std::binary_search(xs_.begin(), xs_.end(), i);
}

bool InstantSet::subset_of(const InstantSet& other) const {
    return std::includes(other.xs_.begin(), other.xs_.end(), xs_.begin(), xs_.end());
}

bool InstantSet::intersects(const InstantSet& other) const {
    auto a = xs_.begin();
    auto b = other.xs_.begin();
    while (a != xs_.end() && b != other.xs_.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a; else ++b;
    }
    return false;
}

bool InstantSet::convex() const {
    if (xs_.empty()) return false;
    return xs_.back() - xs_.front() + 1 == static_cast<Instant>(xs_.size());
}

InstantSet InstantSet::unite(const InstantSet& other) const {
    InstantSet out;
    std::set_union(xs_.begin(), xs_.end(), other.xs_.begin(), other.xs_.end(),
                   std::back_inserter(out.xs_));
    return out;
}

InstantSet InstantSet::intersect(const InstantSet& other) const {
    InstantSet out;
    std::set_intersection(xs_.begin(), xs_.end(), other.xs_.begin(), other.xs_.end(),
                          std::back_inserter(out.xs_));
    return out;
}

InstantSet InstantSet::minus(const InstantSet& other) const {
    InstantSet out;
    std::set_difference(xs_.begin(), xs_.end(), other.xs_.begin(), other.xs_.end(),
                        std::back_inserter(out.xs_));
    return out;
}

void InstantSet::add(const InstantSet& other) {
    if (other.empty()) return;
    *this = unite(other);
}

void InstantSet::add(Instant i) {
    if (contains(i)) return;
    xs_.push_back(i);
    std::sort(xs_.begin(), xs_.end());
}

std::vector<std::pair<Instant, Instant>> InstantSet::runs() const {
    std::vector<std::pair<Instant, Instant>> out;
    for (std::size_t k = 0; k < xs_.size();) {
        std::size_t j = k;
        while (j + 1 < xs_.size() && xs_[j + 1] == xs_[j] + 1) ++j;
        out.emplace_back(xs_[k], xs_[j]);
        k = j + 1;
    }
    return out;
}

TimeRegion::TimeRegion(InstantSet s) : set_(std::move(s)) {
    if (set_.empty()) throw std::invalid_argument("time region must be nonempty");
}

TimeRegion TimeRegion::range(Instant lo, Instant hi) {
    if (lo > hi) throw std::invalid_argument("bad time range");
    return TimeRegion(InstantSet::range(lo, hi));
}

bool region_part(const TimeRegion& t1, const TimeRegion& t2) {
    return t1.set().subset_of(t2.set());
}

TimeRegion region_sum(std::span<const TimeRegion> ts) {
    if (ts.empty()) throw std::invalid_argument("region_sum of an empty list");
    InstantSet acc = ts.front().set();
    for (std::size_t i = 1; i < ts.size(); ++i) acc.add(ts[i].set());
    return TimeRegion(acc);
}

TimeRegion region_sum(const TimeRegion& a, const TimeRegion& b) {
    const TimeRegion ts[] = {a, b};
    return region_sum(std::span<const TimeRegion>(ts));
}

bool region_overlap(const TimeRegion& t1, const TimeRegion& t2) {
    return t1.set().intersects(t2.set());
}

static void require_convex(const TimeRegion& t, const char* rel) {
    if (!t.convex())
        throw std::invalid_argument(std::string(rel) + " requires convex regions");
}

bool strictly_before(const TimeRegion& t1, const TimeRegion& t2) {
    require_convex(t1, "<");
    require_convex(t2, "<");
    return t1.max() < t2.min();
}

bool weakly_before(const TimeRegion& t1, const TimeRegion& t2) {
    require_convex(t1, "<=");
    require_convex(t2, "<=");
    if (t1 == t2) return false;
    if (!region_overlap(t1, t2)) return strictly_before(t1, t2);
    if (region_part(t1, t2) || region_part(t2, t1)) return false;
    // Proper overlap: the residues t1-t and t2-t must be ordered.
    InstantSet ov = t1.set().intersect(t2.set());
    InstantSet r1 = t1.set().minus(ov);
    InstantSet r2 = t2.set().minus(ov);
    if (r1.empty() || r2.empty()) return false;
    return r1.max() < r2.min();
}

std::string render_instants(const InstantSet& s) {
    if (s.empty()) return "{}";
    if (s.convex()) {
        if (s.min() == s.max()) return std::to_string(s.min());
        return std::to_string(s.min()) + ".." + std::to_string(s.max());
    }
    std::string out = "{";
    bool first = true;
    for (Instant i : s.instants()) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    }
    out += "}";
    return out;
}

}  // namespace dolce
