#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rgather/model.hpp"
#include "rgather/objective.hpp"

namespace rgather {

/// A facility picked to serve a group, with the resulting max distance.
template <Coordinate T>
struct FacilityChoice {
    Objective<T> cost = Objective<T>::infeasible();
    std::size_t facility = 0;
};

template <Coordinate T>
FacilityChoice<T> better(const FacilityChoice<T>& a, const FacilityChoice<T>& b) {
    return b.cost < a.cost ? b : a;
}

/// Facilities grouped per leg in ascending coordinate order, plus the two
/// facilities nearest the center on distinct legs. The latter answers "nearest
/// facility to the center that is not on leg l" in O(1).
template <Coordinate T>
class FacilityIndex {
public:
    struct Entry {
        T x;
        std::size_t id;
        int leg;
    };

    FacilityIndex() = default;

    FacilityIndex(const std::vector<PointOnSpider<T>>& facilities, int legs) : per_leg_(legs + 1) {
        for (std::size_t i = 0; i < facilities.size(); ++i) {
            const auto& f = facilities[i];
            per_leg_.at(f.leg).push_back({f.x, i, f.leg});
        }
        for (auto& row : per_leg_) {
            std::stable_sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.x < b.x; });
        }
        for (const auto& row : per_leg_) {
            if (row.empty()) continue;
            const Entry& e = row.front();
            if (!nearest_ || e.x < nearest_->x) {
                second_ = nearest_;
                nearest_ = e;
            } else if (!second_ || e.x < second_->x) {
                second_ = e;
            }
        }
    }

    bool empty() const noexcept { return !nearest_.has_value(); }

    const std::vector<Entry>& on_leg(int leg) const {
        static const std::vector<Entry> none;
        return leg >= 0 && static_cast<std::size_t>(leg) < per_leg_.size() ? per_leg_[leg] : none;
    }

    /// Facility closest to the center among those not on `leg`.
    std::optional<Entry> nearest_off_leg(int leg) const {
        if (nearest_ && nearest_->leg != leg) return nearest_;
        return second_;
    }

    /// The facilities on `leg` adjacent to the point at doubled coordinate
    /// `target2`: the first one with 2y >= target2 and its predecessor.
    template <class Fn>
    void for_each_adjacent(int leg, const T& target2, Fn&& fn) const {
        const auto& row = on_leg(leg);
        auto it = std::lower_bound(row.begin(), row.end(), target2,
                                   [](const Entry& e, const T& t) { return T(e.x + e.x) < t; });
        if (it != row.end()) fn(*it);
        if (it != row.begin()) fn(*std::prev(it));
    }

private:
    std::vector<std::vector<Entry>> per_leg_;
    std::optional<Entry> nearest_;
    std::optional<Entry> second_;
};

/// Diameter bound for a multi-leg cluster whose ball part ends at `u` and
/// whose segment part ends at `v`. Equals distance(u, v) when their legs
/// differ and overestimates otherwise.
template <Coordinate T>
T cost_clustering(const PointOnSpider<T>& u, const PointOnSpider<T>& v) {
    return u.x + v.x;
}

/// Gathering cost of a multi-leg cluster with ball end `u` and segment end `v`
/// (x(u) <= x(v)). Either the facility lies off leg l(v), where the one
/// nearest the center is best, or it lies on l(v), where the best one is
/// adjacent to y* = (x(v) - x(u)) / 2.
template <Coordinate T>
FacilityChoice<T> cost_gathering(const PointOnSpider<T>& u, const PointOnSpider<T>& v,
                                 const FacilityIndex<T>& index) {
    FacilityChoice<T> best;
    if (auto off = index.nearest_off_leg(v.leg)) best = {Objective<T>(off->x + v.x), off->id};
    index.for_each_adjacent(v.leg, T(v.x - u.x), [&](const auto& e) {
        T c = std::max(T(u.x + e.x), abs_diff(v.x, e.x));
        best = better(best, {Objective<T>(c), e.id});
    });
    return best;
}

}  // namespace rgather
