#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "rgather/line_suffix.hpp"
#include "test_support.hpp"

using namespace rgather;
using Obj = Objective<std::int64_t>;

namespace {

std::vector<std::int64_t> xs(std::initializer_list<std::int64_t> v) { return v; }

// Best split of the last k sorted coordinates into groups of size >= r, by
// full partition enumeration (not only contiguous groups).
std::optional<std::int64_t> brute_suffix(const std::vector<std::int64_t>& c, std::size_t k, int r, int max_block,
                                         const std::vector<PointOnSpider<>>& facilities, bool gather) {
    naive::Instance inst;
    inst.legs = 2;
    inst.r = r;
    for (std::size_t i = c.size() - k; i < c.size(); ++i) inst.users.push_back({1, c[i]});
    inst.facilities = facilities;
    if (k == 0) return 0;
    return naive::min_partition(static_cast<int>(k), r, [&](const std::vector<int>& b) -> std::optional<std::int64_t> {
        if (gather) return naive::block_gather(inst, b);
        return naive::block_diameter(inst, b);
    }, max_block);
}

Obj as_obj(const std::optional<std::int64_t>& v) { return v ? Obj(*v) : Obj::infeasible(); }

}  // namespace

TEST(SuffixClustering, TwoPairs) {
    auto c = xs({1, 2, 5, 6});
    auto row = suffix_costs_clustering<std::int64_t>(c, 2);
    EXPECT_EQ(row.cost[4], Obj(1));
}

TEST(SuffixClustering, OddSuffixTakesTriple) {
    auto c = xs({1, 2, 5, 6});
    auto row = suffix_costs_clustering<std::int64_t>(c, 2);
    EXPECT_EQ(row.cost[3], Obj(4));
}

TEST(SuffixClustering, EmptySuffixIsZero) {
    auto c = xs({3, 9});
    auto row = suffix_costs_clustering<std::int64_t>(c, 2);
    EXPECT_EQ(row.cost[0], Obj(0));
    EXPECT_FALSE(row.cost[1]);
}

TEST(SuffixGathering, FacilityBetween) {
    auto c = xs({2, 4});
    FacilityIndex<std::int64_t> idx({{1, 3}}, 2);
    auto row = suffix_costs_gathering<std::int64_t>(c, 1, idx, 2);
    EXPECT_EQ(row.cost[2], Obj(1));
    EXPECT_EQ(row.cost[0], Obj(0));
}

TEST(SuffixGathering, OffLegFacility) {
    auto c = xs({2, 4});
    FacilityIndex<std::int64_t> idx({{2, 1}}, 2);
    auto row = suffix_costs_gathering<std::int64_t>(c, 1, idx, 2);
    EXPECT_EQ(row.cost[2], Obj(5));
}

TEST(SuffixGathering, NoFacilitiesIsInfeasible) {
    auto c = xs({2, 4});
    FacilityIndex<std::int64_t> idx({}, 2);
    auto row = suffix_costs_gathering<std::int64_t>(c, 1, idx, 2);
    EXPECT_FALSE(row.cost[2]);
}

TEST(GroupCostGathering, TwoOnLeg) {
    FacilityIndex<std::int64_t> idx({{1, 3}, {1, 5}}, 1);
    EXPECT_EQ(group_cost_gathering<std::int64_t>(1, 2, 6, idx).cost, Obj(3));
}

TEST(GroupCostGathering, CoLocated) {
    FacilityIndex<std::int64_t> idx({{1, 2}}, 1);
    EXPECT_EQ(group_cost_gathering<std::int64_t>(1, 2, 2, idx).cost, Obj(0));
}

TEST(GroupCostGathering, OffLegOnly) {
    FacilityIndex<std::int64_t> idx({{2, 1}}, 2);
    EXPECT_EQ(group_cost_gathering<std::int64_t>(1, 1, 2, idx).cost, Obj(3));
}

TEST(GroupCostGathering, MatchesLinearScan) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5000; ++t) {
        const int legs = 1 + static_cast<int>(rng() % 3);
        std::vector<PointOnSpider<>> fac;
        const int nf = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < nf; ++i)
            fac.push_back({1 + static_cast<int>(rng() % legs), static_cast<std::int64_t>(rng() % 30)});
        FacilityIndex<std::int64_t> idx(fac, legs);
        std::int64_t a = rng() % 30, b = rng() % 30;
        if (a > b) std::swap(a, b);
        std::int64_t expect = std::numeric_limits<std::int64_t>::max();
        for (const auto& f : fac)
            expect = std::min(expect, std::max(naive::dist({1, a}, f), naive::dist({1, b}, f)));
        auto got = group_cost_gathering<std::int64_t>(1, a, b, idx);
        ASSERT_EQ(got.cost, Obj(expect));
        EXPECT_EQ(std::max(naive::dist({1, a}, fac[got.facility]), naive::dist({1, b}, fac[got.facility])), expect);
    }
}

TEST(SuffixClustering, MatchesPartitionEnumeration) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        const int r = 1 + static_cast<int>(rng() % 3);
        const std::size_t n = rng() % 10;
        std::vector<std::int64_t> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back(static_cast<std::int64_t>(rng() % 50));
        std::sort(c.begin(), c.end());
        auto row = suffix_costs_clustering<std::int64_t>(c, r);
        for (std::size_t k = 0; k <= n; ++k) {
            ASSERT_EQ(row.cost[k], as_obj(brute_suffix(c, k, r, 2 * r - 1, {}, false)));
            // Allowing larger blocks never helps.
            ASSERT_EQ(row.cost[k], as_obj(brute_suffix(c, k, r, 1 << 20, {}, false)));
        }
    }
}

TEST(SuffixGathering, MatchesPartitionEnumeration) {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 300; ++t) {
        const int r = 1 + static_cast<int>(rng() % 3);
        const std::size_t n = rng() % 9;
        std::vector<std::int64_t> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back(static_cast<std::int64_t>(rng() % 50));
        std::sort(c.begin(), c.end());
        std::vector<PointOnSpider<>> fac;
        const int nf = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < nf; ++i) fac.push_back({1 + static_cast<int>(rng() % 2), static_cast<std::int64_t>(rng() % 50)});
        FacilityIndex<std::int64_t> idx(fac, 2);
        auto row = suffix_costs_gathering<std::int64_t>(c, 1, idx, r);
        for (std::size_t k = 0; k <= n; ++k) {
            ASSERT_EQ(row.cost[k], as_obj(brute_suffix(c, k, r, 2 * r - 1, fac, true)));
            ASSERT_EQ(row.cost[k], as_obj(brute_suffix(c, k, r, 1 << 20, fac, true)));
        }
    }
}

TEST(SplitSuffix, GroupsRealizeTheCost) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        const int r = 1 + static_cast<int>(rng() % 3);
        const std::size_t n = rng() % 12;
        std::vector<std::int64_t> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back(static_cast<std::int64_t>(rng() % 50));
        std::sort(c.begin(), c.end());
        auto row = suffix_costs_clustering<std::int64_t>(c, r);
        for (std::size_t k = 0; k <= n; ++k) {
            if (!row.cost[k]) continue;
            std::size_t covered = 0;
            std::int64_t worst = 0;
            for (const auto& g : split_suffix(row, k)) {
                EXPECT_GE(g.count, static_cast<std::size_t>(r));
                EXPECT_EQ(g.begin, n - k + covered);
                covered += g.count;
                worst = std::max(worst, c[g.begin + g.count - 1] - c[g.begin]);
            }
            EXPECT_EQ(covered, k);
            EXPECT_EQ(Obj(worst), row.cost[k]);
        }
    }
}
