#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "rgather/arrears.hpp"
#include "rgather/error.hpp"
#include "rgather/model.hpp"
#include "rgather/reductions.hpp"

namespace rgather {

struct SpiderGenParams {
    int users = 8;
    int legs = 3;
    int r = 2;
    int facilities = 0;
    std::int64_t max_coord = 100;
};

namespace detail {

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace detail

/// Users and facilities on uniformly chosen legs with coordinates in [0, max_coord].
inline SpiderInstance<> random_spider(std::uint64_t seed, const SpiderGenParams& p) {
    if (p.users < 0 || p.legs < 1 || p.r < 1 || p.facilities < 0 || p.max_coord < 0)
        throw Error(ErrorKind::MalformedInstance, "invalid spider generator parameters");
    std::mt19937_64 rng(seed);
    SpiderInstance<> inst;
    inst.legs = p.legs;
    inst.r = p.r;
    auto point = [&] {
        return PointOnSpider<>{static_cast<int>(detail::uniform(rng, 1, p.legs)), detail::uniform(rng, 0, p.max_coord)};
    };
    for (int i = 0; i < p.users; ++i) inst.users.push_back(point());
    for (int i = 0; i < p.facilities; ++i) inst.facilities.push_back(point());
    return inst;
}

struct ArrearsGenParams {
    int duties = 3;
    int max_options = 2;
    int budgets = 2;
    std::int64_t max_value = 4;
};

/// Options per duty with strictly increasing days and amounts, and budgets
/// with strictly increasing days and caps, all within [0, max_value]. Fewer
/// options or budgets are produced when the value range is too narrow.
inline ArrearsInstance random_arrears(std::uint64_t seed, const ArrearsGenParams& p) {
    if (p.duties < 0 || p.max_options < 1 || p.budgets < 0 || p.max_value < 0)
        throw Error(ErrorKind::MalformedInstance, "invalid arrears generator parameters");
    std::mt19937_64 rng(seed);
    auto increasing = [&](int count) {
        std::set<std::int64_t> picked;
        const auto want = std::min<std::int64_t>(count, p.max_value + 1);
        while (static_cast<std::int64_t>(picked.size()) < want) picked.insert(detail::uniform(rng, 0, p.max_value));
        return std::vector<std::int64_t>(picked.begin(), picked.end());
    };
    ArrearsInstance inst;
    for (int i = 0; i < p.duties; ++i) {
        const int k = static_cast<int>(detail::uniform(rng, 1, p.max_options));
        auto days = increasing(k);
        auto amounts = increasing(static_cast<int>(days.size()));
        std::vector<PaymentOption> options;
        for (std::size_t t = 0; t < days.size(); ++t) options.push_back({BigInt(days[t]), BigInt(amounts[t])});
        inst.duties.push_back(std::move(options));
    }
    if (p.budgets > 0) {
        auto days = increasing(p.budgets);
        auto caps = increasing(static_cast<int>(days.size()));
        for (std::size_t t = 0; t < days.size(); ++t) inst.budgets.push_back({BigInt(days[t]), BigInt(caps[t])});
    }
    return inst;
}

struct SatGenParams {
    int vars = 3;
    int clauses = 1;
};

/// Clauses over three distinct variables with random signs.
inline CnfFormula random_sat(std::uint64_t seed, const SatGenParams& p) {
    if (p.vars < 3 || p.clauses < 1)
        throw Error(ErrorKind::MalformedInstance, "need at least 3 variables and 1 clause");
    std::mt19937_64 rng(seed);
    CnfFormula f;
    f.num_vars = p.vars;
    std::vector<int> vars(static_cast<std::size_t>(p.vars));
    std::iota(vars.begin(), vars.end(), 1);
    for (int c = 0; c < p.clauses; ++c) {
        std::array<int, 3> clause{};
        for (std::size_t k = 0; k < 3; ++k) {
            const auto pick = static_cast<std::size_t>(detail::uniform(rng, static_cast<std::int64_t>(k), p.vars - 1));
            std::swap(vars[k], vars[pick]);
            clause[k] = detail::uniform(rng, 0, 1) ? vars[k] : -vars[k];
        }
        f.clauses.push_back(clause);
    }
    return f;
}

}  // namespace rgather
