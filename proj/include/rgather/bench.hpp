#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <vector>

#include "rgather/fpt_solver.hpp"
#include "rgather/generators.hpp"

namespace rgather {

struct BenchParams {
    int legs_min = 8;
    int legs_max = 14;
    int trials = 5;
    int users_per_leg = 3;
    int r = 2;
    std::int64_t max_coord = 100;
    std::uint64_t seed = 1;
};

struct BenchRow {
    int legs = 0;
    std::size_t users = 0;
    int r = 0;
    double mean_ms = 0;
    double states = 0;  // mean over trials
};

/// Clustering instances with exactly users_per_leg users on every leg.
inline SpiderInstance<> bench_instance(std::uint64_t seed, int legs, const BenchParams& p) {
    std::mt19937_64 rng(seed);
    SpiderInstance<> inst;
    inst.legs = legs;
    inst.r = p.r;
    for (int l = 1; l <= legs; ++l)
        for (int k = 0; k < p.users_per_leg; ++k) inst.users.push_back({l, detail::uniform(rng, 1, p.max_coord)});
    return inst;
}

inline std::vector<BenchRow> run_bench(const BenchParams& p) {
    std::vector<BenchRow> rows;
    for (int d = p.legs_min; d <= p.legs_max; ++d) {
        BenchRow row{d, static_cast<std::size_t>(d) * static_cast<std::size_t>(p.users_per_leg), p.r, 0, 0};
        for (int t = 0; t < p.trials; ++t) {
            const auto inst = bench_instance(p.seed * 1'000'003 + static_cast<std::uint64_t>(d) * 1000 + t, d, p);
            const auto start = std::chrono::steady_clock::now();
            const auto res = solve(inst, ProblemKind::Clustering);
            row.mean_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            row.states += static_cast<double>(res.states);
        }
        if (p.trials > 0) {
            row.mean_ms /= p.trials;
            row.states /= p.trials;
        }
        rows.push_back(row);
    }
    return rows;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << "d,n,r,mean_ms,states\n";
    char buf[160];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%d,%zu,%d,%.3f,%.1f\n", row.legs, row.users, row.r, row.mean_ms, row.states);
        os << buf;
    }
}

/// Geometric mean of states[d+1] / states[d] over consecutive rows.
inline double geometric_growth(const std::vector<BenchRow>& rows) {
    if (rows.size() < 2 || rows.front().states <= 0) return 0;
    return std::pow(rows.back().states / rows.front().states, 1.0 / static_cast<double>(rows.size() - 1));
}

}  // namespace rgather
