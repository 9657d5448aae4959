#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "rgather/cost_oracle.hpp"
#include "rgather/model.hpp"
#include "rgather/objective.hpp"

namespace rgather {

/// Optimal single-leg objective for every suffix of one leg's users.
///
/// cost[k] covers the last k users (cost[0] = 0). first_group[k] is the size
/// of the group holding the innermost of those k users in an optimal split,
/// and facility[k] the facility serving it (gathering only).
template <Coordinate T>
struct SuffixRow {
    std::vector<Objective<T>> cost;
    std::vector<int> first_group;
    std::vector<std::size_t> facility;

    std::size_t size() const noexcept { return cost.size() - 1; }
};

/// One contiguous single-leg group, as offsets into the leg's user list.
struct LegGroup {
    std::size_t begin = 0;
    std::size_t count = 0;
    std::size_t facility = 0;
};

namespace detail {

template <Coordinate T, class GroupCost>
SuffixRow<T> suffix_dp(std::size_t n, int r, GroupCost&& group_cost) {
    SuffixRow<T> row;
    row.cost.assign(n + 1, Objective<T>::infeasible());
    row.first_group.assign(n + 1, 0);
    row.facility.assign(n + 1, 0);
    row.cost[0] = Objective<T>(T{0});
    const auto max_group = static_cast<std::size_t>(2 * r - 1);
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t begin = n - k;
        for (std::size_t t = static_cast<std::size_t>(r); t <= std::min(max_group, k); ++t) {
            if (!row.cost[k - t]) continue;
            FacilityChoice<T> g = group_cost(begin, begin + t - 1);
            auto c = max_of(g.cost, row.cost[k - t]);
            if (c < row.cost[k]) {
                row.cost[k] = c;
                row.first_group[k] = static_cast<int>(t);
                row.facility[k] = g.facility;
            }
        }
    }
    return row;
}

}  // namespace detail

/// Cost of serving users at x_a <= x_b (and everything between them) on
/// `leg` from one facility: either the facility nearest the center off the
/// leg, or an on-leg facility adjacent to the midpoint.
template <Coordinate T>
FacilityChoice<T> group_cost_gathering(int leg, const T& x_a, const T& x_b, const FacilityIndex<T>& index) {
    FacilityChoice<T> best;
    if (auto off = index.nearest_off_leg(leg)) best = {Objective<T>(off->x + x_b), off->id};
    index.for_each_adjacent(leg, T(x_a + x_b), [&](const auto& e) {
        T c = std::max(abs_diff(x_a, e.x), abs_diff(x_b, e.x));
        best = better(best, {Objective<T>(c), e.id});
    });
    return best;
}

/// Suffix table for clustering on one leg; `coords` ascending. Groups hold
/// r..2r-1 consecutive users and cost their span.
template <Coordinate T>
SuffixRow<T> suffix_costs_clustering(std::span<const T> coords, int r) {
    return detail::suffix_dp<T>(coords.size(), r, [&](std::size_t a, std::size_t b) {
        return FacilityChoice<T>{Objective<T>(T(coords[b] - coords[a])), 0};
    });
}

template <Coordinate T>
SuffixRow<T> suffix_costs_gathering(std::span<const T> coords, int leg, const FacilityIndex<T>& index, int r) {
    return detail::suffix_dp<T>(coords.size(), r, [&](std::size_t a, std::size_t b) {
        return group_cost_gathering(leg, coords[a], coords[b], index);
    });
}

/// Recover the groups realizing row.cost[k]; offsets are into the leg's full
/// (ascending) user list of length row.size().
template <Coordinate T>
std::vector<LegGroup> split_suffix(const SuffixRow<T>& row, std::size_t k) {
    std::vector<LegGroup> groups;
    const std::size_t n = row.size();
    while (k > 0) {
        const auto t = static_cast<std::size_t>(row.first_group[k]);
        groups.push_back({n - k, t, row.facility[k]});
        k -= t;
    }
    return groups;
}

/// Users of a normalized instance grouped by leg. users[l] lists global
/// (sorted) user indices on leg l in ascending order; position[g] is the
/// offset of user g inside its leg's list.
template <Coordinate T>
struct LegLayout {
    std::vector<std::vector<std::size_t>> users;
    std::vector<std::size_t> position;

    explicit LegLayout(const SpiderInstance<T>& inst) : users(inst.legs + 1), position(inst.users.size()) {
        for (std::size_t g = 0; g < inst.users.size(); ++g) {
            auto& row = users.at(inst.users[g].leg);
            position[g] = row.size();
            row.push_back(g);
        }
    }

    std::vector<T> coordinates(const SpiderInstance<T>& inst, int leg) const {
        std::vector<T> xs;
        xs.reserve(users[leg].size());
        for (auto g : users[leg]) xs.push_back(inst.users[g].x);
        return xs;
    }
};

/// Per-leg suffix rows (index 0 unused) for the requested problem.
template <Coordinate T>
struct SuffixCostTable {
    std::vector<SuffixRow<T>> legs;

    /// Optimal value for the users on u's leg that come after u.
    const Objective<T>& after(const LegLayout<T>& layout, int leg, std::size_t g) const {
        const auto& row = legs[leg];
        return row.cost[row.size() - layout.position[g] - 1];
    }

    /// Same, but including u itself.
    const Objective<T>& from(const LegLayout<T>& layout, int leg, std::size_t g) const {
        const auto& row = legs[leg];
        return row.cost[row.size() - layout.position[g]];
    }
};

template <Coordinate T>
SuffixCostTable<T> build_suffix_table(const SpiderInstance<T>& inst, const LegLayout<T>& layout, ProblemKind kind,
                                      const FacilityIndex<T>& index) {
    SuffixCostTable<T> table;
    table.legs.resize(inst.legs + 1);
    for (int l = 1; l <= inst.legs; ++l) {
        auto xs = layout.coordinates(inst, l);
        table.legs[l] = kind == ProblemKind::Clustering
                            ? suffix_costs_clustering<T>(xs, inst.r)
                            : suffix_costs_gathering<T>(xs, l, index, inst.r);
    }
    return table;
}

}  // namespace rgather
