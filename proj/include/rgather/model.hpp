#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rgather/error.hpp"
#include "rgather/objective.hpp"

namespace rgather {

/// A point (leg, x) on a spider: distance x from the center along leg `leg`.
/// Legs are numbered from 1. Every (l, 0) is the center.
template <Coordinate T = std::int64_t>
struct PointOnSpider {
    int leg = 1;
    T x{0};

    friend bool operator==(const PointOnSpider&, const PointOnSpider&) = default;
};

template <Coordinate T = std::int64_t>
struct SpiderInstance {
    int legs = 1;
    std::vector<PointOnSpider<T>> users;
    std::vector<PointOnSpider<T>> facilities;  // empty: no facilities
    int r = 1;
};

/// A partition of the users into clusters. For gathering, `facility_of[c]`
/// names the facility serving cluster c.
template <Coordinate T = std::int64_t>
struct Solution {
    std::vector<std::vector<std::size_t>> clusters;
    std::optional<std::vector<std::size_t>> facility_of;
    T value{0};
};

enum class ProblemKind { Clustering, Gathering };

template <Coordinate T>
T distance(const PointOnSpider<T>& p, const PointOnSpider<T>& q) {
    if (p.leg == q.leg) return abs_diff(p.x, q.x);
    return p.x + q.x;
}

namespace detail {

template <Coordinate T>
void check_point(const PointOnSpider<T>& p, int legs, const char* what, std::size_t index) {
    if (p.leg < 1 || p.leg > legs) {
        throw Error(ErrorKind::MalformedInstance, std::string(what) + " " + std::to_string(index) +
                                                      " has leg " + std::to_string(p.leg) +
                                                      " outside 1.." + std::to_string(legs));
    }
    if (p.x < T{0}) {
        throw Error(ErrorKind::MalformedInstance,
                    std::string(what) + " " + std::to_string(index) + " has a negative coordinate");
    }
}

}  // namespace detail

/// Throws MalformedInstance unless every point lies on a leg in 1..legs with a
/// non-negative coordinate and r >= 1.
template <Coordinate T>
void check_instance(const SpiderInstance<T>& inst) {
    if (inst.legs < 1) throw Error(ErrorKind::MalformedInstance, "legs must be >= 1");
    if (inst.r < 1) throw Error(ErrorKind::MalformedInstance, "r must be >= 1");
    for (std::size_t i = 0; i < inst.users.size(); ++i) detail::check_point(inst.users[i], inst.legs, "user", i);
    for (std::size_t i = 0; i < inst.facilities.size(); ++i)
        detail::check_point(inst.facilities[i], inst.legs, "facility", i);
}

/// An instance in canonical form plus the maps back to the caller's indexing.
///
/// Users are sorted by (x, leg, input order). Legs carrying users are
/// renumbered 1..user_legs in their original order; legs carrying only
/// facilities follow them. Facilities are sorted the same way as users.
template <Coordinate T = std::int64_t>
struct NormalizedInstance {
    SpiderInstance<T> instance;
    int user_legs = 0;
    std::vector<std::size_t> user_to_original;
    std::vector<std::size_t> user_from_original;
    std::vector<std::size_t> facility_to_original;
    std::vector<std::size_t> facility_from_original;
    std::vector<int> leg_to_original;  // index: new leg - 1

    /// Re-express a solution of `instance` in the original indexing, with
    /// clusters sorted by their smallest member.
    Solution<T> to_original(const Solution<T>& sol) const {
        std::vector<std::pair<std::vector<std::size_t>, std::size_t>> items;
        items.reserve(sol.clusters.size());
        for (std::size_t c = 0; c < sol.clusters.size(); ++c) {
            std::vector<std::size_t> members;
            members.reserve(sol.clusters[c].size());
            for (auto u : sol.clusters[c]) members.push_back(user_to_original.at(u));
            std::sort(members.begin(), members.end());
            std::size_t fac = sol.facility_of ? facility_to_original.at(sol.facility_of->at(c)) : 0;
            items.emplace_back(std::move(members), fac);
        }
        std::sort(items.begin(), items.end());
        Solution<T> out;
        out.value = sol.value;
        if (sol.facility_of) out.facility_of.emplace();
        for (auto& [members, fac] : items) {
            out.clusters.push_back(std::move(members));
            if (out.facility_of) out.facility_of->push_back(fac);
        }
        return out;
    }
};

template <Coordinate T>
NormalizedInstance<T> normalize(const SpiderInstance<T>& inst) {
    check_instance(inst);
    NormalizedInstance<T> out;

    std::vector<bool> has_user(inst.legs + 1, false), has_facility(inst.legs + 1, false);
    for (const auto& u : inst.users) has_user[u.leg] = true;
    for (const auto& f : inst.facilities) has_facility[f.leg] = true;

    std::vector<int> new_leg(inst.legs + 1, 0);
    for (int l = 1; l <= inst.legs; ++l) {
        if (has_user[l]) {
            out.leg_to_original.push_back(l);
            new_leg[l] = static_cast<int>(out.leg_to_original.size());
        }
    }
    out.user_legs = static_cast<int>(out.leg_to_original.size());
    for (int l = 1; l <= inst.legs; ++l) {
        if (!has_user[l] && has_facility[l]) {
            out.leg_to_original.push_back(l);
            new_leg[l] = static_cast<int>(out.leg_to_original.size());
        }
    }

    auto sorted_order = [&](const std::vector<PointOnSpider<T>>& pts) {
        std::vector<std::size_t> order(pts.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
            return new_leg[pts[a].leg] < new_leg[pts[b].leg];
        });
        return order;
    };

    out.instance.r = inst.r;
    out.instance.legs = std::max(1, static_cast<int>(out.leg_to_original.size()));

    out.user_to_original = sorted_order(inst.users);
    out.user_from_original.assign(inst.users.size(), 0);
    for (std::size_t i = 0; i < out.user_to_original.size(); ++i) {
        const auto& u = inst.users[out.user_to_original[i]];
        out.instance.users.push_back({new_leg[u.leg], u.x});
        out.user_from_original[out.user_to_original[i]] = i;
    }

    out.facility_to_original = sorted_order(inst.facilities);
    out.facility_from_original.assign(inst.facilities.size(), 0);
    for (std::size_t i = 0; i < out.facility_to_original.size(); ++i) {
        const auto& f = inst.facilities[out.facility_to_original[i]];
        out.instance.facilities.push_back({new_leg[f.leg], f.x});
        out.facility_from_original[out.facility_to_original[i]] = i;
    }
    return out;
}

namespace detail {

template <Coordinate T>
void check_partition(const SpiderInstance<T>& inst, const Solution<T>& sol) {
    std::vector<bool> seen(inst.users.size(), false);
    std::size_t covered = 0;
    for (std::size_t c = 0; c < sol.clusters.size(); ++c) {
        for (auto u : sol.clusters[c]) {
            if (u >= inst.users.size())
                throw Error(ErrorKind::NotAPartition, "cluster " + std::to_string(c) + " names unknown user " +
                                                          std::to_string(u));
            if (seen[u])
                throw Error(ErrorKind::NotAPartition, "user " + std::to_string(u) + " appears twice");
            seen[u] = true;
            ++covered;
        }
    }
    if (covered != inst.users.size())
        throw Error(ErrorKind::NotAPartition, std::to_string(inst.users.size() - covered) + " users uncovered");
    for (std::size_t c = 0; c < sol.clusters.size(); ++c) {
        if (sol.clusters[c].size() < static_cast<std::size_t>(inst.r))
            throw Error(ErrorKind::SizeViolation, "cluster " + std::to_string(c) + " has " +
                                                      std::to_string(sol.clusters[c].size()) + " < r = " +
                                                      std::to_string(inst.r) + " users");
    }
}

template <Coordinate T>
void check_value(const T& recomputed, const T& claimed) {
    if (recomputed != claimed) {
        throw Error(ErrorKind::ValueMismatch, "recomputed objective differs from the reported value");
    }
}

}  // namespace detail

/// Largest pairwise distance inside a set of users.
template <Coordinate T>
T diameter(const SpiderInstance<T>& inst, const std::vector<std::size_t>& cluster) {
    T best{0};
    for (std::size_t a = 0; a < cluster.size(); ++a)
        for (std::size_t b = a + 1; b < cluster.size(); ++b)
            best = std::max(best, distance(inst.users[cluster[a]], inst.users[cluster[b]]));
    return best;
}

/// Largest distance from a member of `cluster` to `facility`.
template <Coordinate T>
T radius(const SpiderInstance<T>& inst, const std::vector<std::size_t>& cluster, const PointOnSpider<T>& facility) {
    T best{0};
    for (auto u : cluster) best = std::max(best, distance(inst.users[u], facility));
    return best;
}

/// Recomputes the clustering objective from scratch. Throws NotAPartition,
/// SizeViolation or ValueMismatch.
template <Coordinate T>
T validate_clustering(const SpiderInstance<T>& inst, const Solution<T>& sol) {
    detail::check_partition(inst, sol);
    T value{0};
    for (const auto& c : sol.clusters) value = std::max(value, diameter(inst, c));
    detail::check_value(value, sol.value);
    return value;
}

/// Recomputes the gathering objective from scratch. Two clusters naming the
/// same facility are accepted.
template <Coordinate T>
T validate_gathering(const SpiderInstance<T>& inst, const Solution<T>& sol) {
    detail::check_partition(inst, sol);
    if (!sol.facility_of || sol.facility_of->size() != sol.clusters.size())
        throw Error(ErrorKind::MissingFacility, "every cluster needs an assigned facility");
    T value{0};
    for (std::size_t c = 0; c < sol.clusters.size(); ++c) {
        auto f = (*sol.facility_of)[c];
        if (f >= inst.facilities.size())
            throw Error(ErrorKind::MissingFacility, "cluster " + std::to_string(c) + " names unknown facility " +
                                                        std::to_string(f));
        value = std::max(value, radius(inst, sol.clusters[c], inst.facilities[f]));
    }
    detail::check_value(value, sol.value);
    return value;
}

template <Coordinate T>
T validate(const SpiderInstance<T>& inst, const Solution<T>& sol, ProblemKind kind) {
    return kind == ProblemKind::Clustering ? validate_clustering(inst, sol) : validate_gathering(inst, sol);
}

}  // namespace rgather
