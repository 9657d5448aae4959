// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rgather/bench.hpp"
#include "rgather/exact_oracle.hpp"
#include "rgather/fpt_solver.hpp"
#include "rgather/generators.hpp"
#include "rgather/reductions.hpp"

using namespace rgather;
using Obj = Objective<std::int64_t>;

namespace {

constexpr int kClusteringInstances = 500;
constexpr double kClusteringSeconds = 60;
constexpr int kGatheringInstances = 500;
constexpr double kGatheringSeconds = 120;
constexpr int kEnumerationInstances = 200;
constexpr int kPruningInstances = 200;
constexpr int kMidpointInstances = 100;
constexpr int kArrearsInstances = 200;
constexpr int kRandomFormulasForward = 10;
constexpr int kRandomFormulasIdentity = 25;
constexpr double kGrowthLow = 1.7;
constexpr double kGrowthHigh = 2.3;

struct Closure {
    std::size_t checked = 0;
    std::size_t failed = 0;
};

Closure closure;

// Recheck a solver output from scratch; every criterion 1-6 feeds this.
void validate_output(const SpiderInstance<>& inst, const SolveResult<std::int64_t>& res, ProblemKind kind) {
    if (!res.value) return;
    ++closure.checked;
    try {
        if (!res.solution || validate(inst, *res.solution, kind) != res.value.value()) ++closure.failed;
    } catch (const Error&) {
        ++closure.failed;
    }
}

Obj oracle_value(const std::optional<Solution<>>& s) { return s ? Obj(s->value) : Obj::infeasible(); }

SpiderGenParams random_params(std::mt19937_64& rng, int max_users, int max_facilities) {
    SpiderGenParams p;
    p.users = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_users));
    p.legs = 1 + static_cast<int>(rng() % 4);
    p.r = 2 + static_cast<int>(rng() % 2);
    p.facilities = max_facilities > 0 ? 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_facilities)) : 0;
    p.max_coord = 100;
    return p;
}

bool report(int id, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << detail << std::endl;
    return ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool oracle_equivalence(int id, ProblemKind kind, int instances, double budget_s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int mismatches = 0, feasible = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int t = 0; t < instances; ++t) {
        auto inst = random_spider(rng(), random_params(rng, 9, kind == ProblemKind::Gathering ? 5 : 0));
        auto res = solve(inst, kind);
        validate_output(inst, res, kind);
        const auto expect = oracle_value(brute_solve(inst, kind));
        if (res.value != expect) ++mismatches;
        feasible += expect.feasible();
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << instances << " instances (" << feasible << " feasible), " << mismatches << " mismatches, " << secs << " s (limit "
      << budget_s << " s)";
    return report(id, mismatches == 0 && secs < budget_s, d.str());
}

bool enumeration_crosscheck() {
    std::mt19937_64 rng(3003);
    int mismatches = 0, runs = 0;
    for (int t = 0; t < kEnumerationInstances; ++t) {
        auto inst = random_spider(rng(), random_params(rng, 14, 4));
        for (auto kind : {ProblemKind::Clustering, ProblemKind::Gathering}) {
            auto res = solve(inst, kind);
            if (res.value != enumerate_suffix_special(inst, kind)) ++mismatches;
            ++runs;
        }
    }
    std::ostringstream d;
    d << kEnumerationInstances << " instances, " << runs << " comparisons, " << mismatches << " mismatches";
    return report(3, mismatches == 0, d.str());
}

bool pruning_soundness() {
    std::mt19937_64 rng(4004);
    int mismatches = 0, pruned_active = 0;
    for (int t = 0; t < kPruningInstances; ++t) {
        auto p = random_params(rng, 40, 4);
        p.users = 10 + static_cast<int>(rng() % 31);
        p.legs = 1 + static_cast<int>(rng() % 3);
        auto inst = random_spider(rng(), p);
        for (auto kind : {ProblemKind::Clustering, ProblemKind::Gathering}) {
            SolveOptions off;
            off.prune = false;
            auto a = solve(inst, kind);
            auto b = solve(inst, kind, off);
            validate_output(inst, a, kind);
            validate_output(inst, b, kind);
            if (a.value != b.value) ++mismatches;
            if (a.processed_users < b.processed_users) ++pruned_active;
        }
    }
    std::ostringstream d;
    d << kPruningInstances << " instances, " << mismatches << " mismatches, pruning removed users in " << pruned_active
      << " runs";
    return report(4, mismatches == 0 && pruned_active > 0, d.str());
}

bool midpoint_reduction() {
    std::mt19937_64 rng(5005);
    int mismatches = 0;
    for (int t = 0; t < kMidpointInstances; ++t) {
        auto inst = random_spider(rng(), random_params(rng, 12, 0));
        auto doubled = inst;
        for (auto& u : doubled.users) u.x *= 2;
        for (std::size_t a = 0; a < inst.users.size(); ++a) {
            doubled.facilities.push_back(doubled.users[a]);
            for (std::size_t b = a + 1; b < inst.users.size(); ++b) {
                const auto& u = inst.users[a];
                const auto& v = inst.users[b];
                if (u.leg == v.leg) {
                    doubled.facilities.push_back({u.leg, u.x + v.x});
                } else {
                    const auto& far = u.x >= v.x ? u : v;
                    const auto& near = u.x >= v.x ? v : u;
                    doubled.facilities.push_back({far.leg, far.x - near.x});
                }
            }
        }
        auto g = solve(doubled, ProblemKind::Gathering);
        auto c = solve(doubled, ProblemKind::Clustering);
        auto c0 = solve(inst, ProblemKind::Clustering);
        validate_output(doubled, g, ProblemKind::Gathering);
        validate_output(doubled, c, ProblemKind::Clustering);
        validate_output(inst, c0, ProblemKind::Clustering);
        const bool ok = g.value.feasible() == c.value.feasible() && c.value.feasible() == c0.value.feasible() &&
                        (!g.value || (2 * g.value.value() == c.value.value() && c.value.value() == 2 * c0.value.value()));
        if (!ok) ++mismatches;
    }
    std::ostringstream d;
    d << kMidpointInstances << " instances, " << mismatches << " mismatches";
    return report(5, mismatches == 0, d.str());
}

bool arrears_equivalence() {
    std::mt19937_64 rng(6006);
    int mismatches = 0, feasible = 0;
    for (int t = 0; t < kArrearsInstances; ++t) {
        ArrearsGenParams p;
        p.duties = 1 + static_cast<int>(rng() % 3);
        p.max_options = 1 + static_cast<int>(rng() % 3);
        p.budgets = static_cast<int>(rng() % 4);
        p.max_value = 4;
        auto inst = random_arrears(rng(), p);
        const bool expect = brute_arrears(inst).has_value();
        feasible += expect;
        auto red = arrears_to_spider(inst);
        auto res = solve(red.instance, ProblemKind::Clustering);
        validate_output(red.instance, res, ProblemKind::Clustering);
        const bool got = res.value && res.value.value() <= red.threshold;
        if (got != expect) ++mismatches;
    }
    std::ostringstream d;
    d << kArrearsInstances << " instances (" << feasible << " feasible), " << mismatches << " disagreements";
    return report(6, mismatches == 0, d.str());
}

bool exactly_one_true(const CnfFormula& f, std::uint64_t mask) {
    for (const auto& c : f.clauses) {
        int t = 0;
        for (int lit : c) t += ((lit > 0) == (((mask >> (std::abs(lit) - 1)) & 1u) != 0)) ? 1 : 0;
        if (t != 1) return false;
    }
    return true;
}

bool gadget_forward() {
    std::vector<CnfFormula> formulas;
    for (int signs = 0; signs < 8; ++signs) {
        CnfFormula f{3, {{(signs & 1) ? -1 : 1, (signs & 2) ? -2 : 2, (signs & 4) ? -3 : 3}}};
        formulas.push_back(f);
    }
    std::mt19937_64 rng(7007);
    for (int t = 0; t < kRandomFormulasForward; ++t)
        formulas.push_back(random_sat(rng(), {3 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2)}));
    int mismatches = 0, assignments = 0, satisfying = 0;
    for (const auto& f : formulas) {
        auto red = sat_to_arrears(f);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
            std::vector<bool> a(static_cast<std::size_t>(f.num_vars));
            for (int v = 0; v < f.num_vars; ++v) a[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
            const bool expect = exactly_one_true(f, mask);
            satisfying += expect;
            if (check_arrears(red.instance, assignment_to_choice(red, a)).feasible != expect) ++mismatches;
            ++assignments;
        }
    }
    std::ostringstream d;
    d << formulas.size() << " formulas, " << assignments << " assignments (" << satisfying << " one-in-three), "
      << mismatches << " mismatches";
    return report(7, mismatches == 0, d.str());
}

bool gadget_identities() {
    std::mt19937_64 rng(8008);
    int failures = 0;
    for (int t = 0; t < kRandomFormulasIdentity; ++t) {
        const int n = 3 + static_cast<int>(rng() % 3);
        const int m = 1 + static_cast<int>(rng() % 3);
        auto red = sat_to_arrears(random_sat(rng(), {n, m}));
        const BigInt B = BigInt(100) * n * n * m * m;
        const BigInt N = BigInt(3) * m * (m + 2) + 1;
        std::vector<BigInt> pos(static_cast<std::size_t>(n), 0), neg(static_cast<std::size_t>(n), 0);
        std::vector<std::size_t> count(static_cast<std::size_t>(n), 0);
        std::array<BigInt, 5> digits{};
        for (std::size_t y = 0; y < red.items.size(); ++y) {
            const auto v = static_cast<std::size_t>(red.items[y].variable - 1);
            BigInt p = red.instance.duties[y][0].amount;
            ++count[v];
            (red.items[y].positive_side ? pos : neg)[v] += p;
            for (std::size_t k = 0; k < 4; ++k) {
                digits[k] += p % B;
                p /= B;
            }
            digits[4] += p;
        }
        BigInt half = 0;
        for (int i = 1; i <= n; ++i) {
            const auto v = static_cast<std::size_t>(i - 1);
            const BigInt ri = N * (B * B + i) * (B + 1) * B + BigInt(3) * m * (m + 1);
            half += ri;
            if (pos[v] != ri || neg[v] != ri) ++failures;
            if (count[v] != static_cast<std::size_t>(6 * m * (m + 2) + 2)) ++failures;
        }
        const BigInt closed = N * (B + 1) * (BigInt(n) * B * B + BigInt(n) * (n + 1) / 2) * B + BigInt(3) * m * (m + 1) * n;
        if (half != closed) ++failures;
        const auto& budgets = red.instance.budgets;
        if (budgets.size() != static_cast<std::size_t>(n + m + 2)) {
            ++failures;
        } else {
            if (budgets[static_cast<std::size_t>(n - 1)].cap != closed) ++failures;
            if (budgets.back().cap != 3 * closed) ++failures;
        }
        for (const auto& s : digits)
            if (!(s < B)) ++failures;
        for (const auto& c : verify_gadget(red))
            if (!c.passed) ++failures;
    }
    std::ostringstream d;
    d << kRandomFormulasIdentity << " formulas (n <= 5, m <= 3), " << failures << " identity failures";
    return report(8, failures == 0, d.str());
}

bool scaling() {
    const std::string cmd = std::string(RGATHER_CLI) + " bench --legs-range 8..14 --trials 5 --users-per-leg 3 --r 2 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return report(9, false, "could not start the bench command");
    std::string csv;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) csv.append(buf.data(), got);
    const int status = pclose(pipe);
    std::vector<BenchRow> rows;
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    const bool header_ok = line == "d,n,r,mean_ms,states";
    while (std::getline(ss, line)) {
        BenchRow row;
        char c = 0;
        std::istringstream ls(line);
        ls >> row.legs >> c >> row.users >> c >> row.r >> c >> row.mean_ms >> c >> row.states;
        if (ls) rows.push_back(row);
    }
    const double growth = geometric_growth(rows);
    std::ostringstream d;
    d << "states per d:";
    for (const auto& r : rows) d << " " << r.legs << "=" << static_cast<long long>(r.states) << "(" << r.mean_ms << " ms)";
    d << "; geometric growth " << growth << " (band [" << kGrowthLow << ", " << kGrowthHigh << "])";
    const bool ok = status == 0 && header_ok && rows.size() == 7 && growth >= kGrowthLow && growth <= kGrowthHigh;
    return report(9, ok, d.str());
}

}  // namespace

int main() {
    int failed = 0;
    failed += !oracle_equivalence(1, ProblemKind::Clustering, kClusteringInstances, kClusteringSeconds, 1001);
    failed += !oracle_equivalence(2, ProblemKind::Gathering, kGatheringInstances, kGatheringSeconds, 2002);
    failed += !enumeration_crosscheck();
    failed += !pruning_soundness();
    failed += !midpoint_reduction();
    failed += !arrears_equivalence();
    failed += !gadget_forward();
    failed += !gadget_identities();
    failed += !scaling();
    {
        std::ostringstream d;
        d << closure.checked << " solver outputs revalidated, " << closure.failed << " failures";
        failed += !report(10, closure.failed == 0 && closure.checked > 0, d.str());
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
