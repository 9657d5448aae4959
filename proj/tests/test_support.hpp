#pragma once

// Small, deliberately naive reference implementations used as test oracles.
// They share nothing with the library beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "rgather/arrears.hpp"
#include "rgather/model.hpp"
#include "rgather/reductions.hpp"

namespace naive {

using Point = rgather::PointOnSpider<std::int64_t>;
using Instance = rgather::SpiderInstance<std::int64_t>;

inline std::int64_t dist(const Point& a, const Point& b) {
    if (a.leg == b.leg) return a.x > b.x ? a.x - b.x : b.x - a.x;
    return a.x + b.x;
}

inline std::int64_t block_diameter(const Instance& inst, const std::vector<int>& block) {
    std::int64_t d = 0;
    for (int a : block)
        for (int b : block) d = std::max(d, dist(inst.users[a], inst.users[b]));
    return d;
}

inline std::optional<std::int64_t> block_gather(const Instance& inst, const std::vector<int>& block) {
    std::optional<std::int64_t> best;
    for (const auto& f : inst.facilities) {
        std::int64_t c = 0;
        for (int u : block) c = std::max(c, dist(inst.users[u], f));
        if (!best || c < *best) best = c;
    }
    return best;
}

/// Minimum over partitions of {0..n-1} into blocks of size >= r (and at most
/// max_block) of the largest block cost. The block holding the smallest free
/// element is chosen as a subset of the free elements.
inline std::optional<std::int64_t> min_partition(int n, int r, const std::function<std::optional<std::int64_t>(const std::vector<int>&)>& cost,
                                                 int max_block = std::numeric_limits<int>::max()) {
    std::optional<std::int64_t> best;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<void(std::int64_t)> rec = [&](std::int64_t cur) {
        int first = -1;
        for (int i = 0; i < n; ++i)
            if (!used[i]) {
                first = i;
                break;
            }
        if (first < 0) {
            if (!best || cur < *best) best = cur;
            return;
        }
        std::vector<int> rest;
        for (int i = first + 1; i < n; ++i)
            if (!used[i]) rest.push_back(i);
        const auto m = rest.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            std::vector<int> block{first};
            for (std::size_t b = 0; b < m; ++b)
                if (mask >> b & 1u) block.push_back(rest[b]);
            if (static_cast<int>(block.size()) < r || static_cast<int>(block.size()) > max_block) continue;
            auto c = cost(block);
            if (!c) continue;
            for (int u : block) used[u] = true;
            rec(std::max(cur, *c));
            for (int u : block) used[u] = false;
        }
    };
    if (n > 0) rec(0);
    return best;
}

inline std::optional<std::int64_t> clustering(const Instance& inst) {
    return min_partition(static_cast<int>(inst.users.size()), inst.r,
                         [&](const std::vector<int>& b) { return std::optional<std::int64_t>(block_diameter(inst, b)); });
}

inline std::optional<std::int64_t> gathering(const Instance& inst) {
    return min_partition(static_cast<int>(inst.users.size()), inst.r,
                         [&](const std::vector<int>& b) { return block_gather(inst, b); });
}

inline bool arrears_feasible(const rgather::ArrearsInstance& inst) {
    const auto n = inst.duties.size();
    std::vector<std::size_t> z(n, 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == n) {
            for (const auto& b : inst.budgets) {
                rgather::BigInt paid = 0;
                for (std::size_t t = 0; t < n; ++t)
                    if (inst.duties[t][z[t]].day <= b.day) paid += inst.duties[t][z[t]].amount;
                if (paid > b.cap) return false;
            }
            return true;
        }
        for (z[i] = 0; z[i] < inst.duties[i].size(); ++z[i])
            if (rec(i + 1)) return true;
        return false;
    };
    return rec(0);
}

inline bool one_in_three(const rgather::CnfFormula& f, std::uint64_t mask) {
    for (const auto& c : f.clauses) {
        int t = 0;
        for (int lit : c) {
            const bool v = (mask >> (std::abs(lit) - 1)) & 1u;
            if ((lit > 0) == v) ++t;
        }
        if (t != 1) return false;
    }
    return true;
}

inline Instance random_instance(std::mt19937_64& rng, int max_users, int max_legs, int max_facilities,
                                std::int64_t max_coord = 100) {
    Instance inst;
    inst.legs = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_legs));
    inst.r = 2 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_users));
    auto point = [&] {
        return Point{1 + static_cast<int>(rng() % static_cast<std::uint64_t>(inst.legs)),
                     static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_coord + 1))};
    };
    for (int i = 0; i < n; ++i) inst.users.push_back(point());
    const int nf = max_facilities > 0 ? 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_facilities)) : 0;
    for (int i = 0; i < nf; ++i) inst.facilities.push_back(point());
    return inst;
}

}  // namespace naive
