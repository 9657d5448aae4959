// rgather: solve, check, reduce, generate and benchmark spider r-gather instances.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rgather/bench.hpp"
#include "rgather/exact_oracle.hpp"
#include "rgather/fpt_solver.hpp"
#include "rgather/generators.hpp"
#include "rgather/io.hpp"
#include "rgather/reductions.hpp"

namespace {

using namespace rgather;
using io::json;

enum Exit { kOk = 0, kInvalid = 1, kParse = 2, kOversized = 3 };

std::size_t env_limit(const char* name, std::size_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v, &end, 10);
    if (*end != '\0') throw Error(ErrorKind::MalformedInstance, std::string(name) + " must be a non-negative integer");
    return static_cast<std::size_t>(x);
}

OracleOptions oracle_options() {
    OracleOptions o;
    o.max_users = env_limit("RGATHER_ORACLE_MAX_USERS", o.max_users);
    o.max_arrears_vectors = env_limit("RGATHER_ARREARS_MAX_VECTORS", o.max_arrears_vectors);
    return o;
}

ReductionOptions reduction_options() {
    ReductionOptions o;
    o.max_users = env_limit("RGATHER_REDUCE_MAX_USERS", o.max_users);
    return o;
}

ProblemKind parse_problem(const std::string& s) {
    return s == "gathering" ? ProblemKind::Gathering : ProblemKind::Clustering;
}

// --- solve ------------------------------------------------------------------

struct SolveArgs {
    std::string path;
    std::string problem = "clustering";
    bool no_prune = false;
    bool oracle = false;
};

template <Coordinate T>
int solve_typed(const SpiderInstance<T>& inst, const SolveArgs& a) {
    const auto kind = parse_problem(a.problem);
    Objective<T> value = Objective<T>::infeasible();
    std::optional<Solution<T>> sol;
    if (a.oracle) {
        sol = brute_solve(inst, kind, oracle_options());
        if (sol) value = sol->value;
    } else {
        SolveOptions opts;
        opts.prune = !a.no_prune;
        auto res = solve(inst, kind, opts);
        value = res.value;
        sol = std::move(res.solution);
    }
    std::cout << io::dump(io::write_solution(value, sol)) << "\n";
    if (!value) {
        std::cerr << "infeasible\n";
        return kInvalid;
    }
    return kOk;
}

int cmd_solve(const SolveArgs& a) {
    auto inst = io::read_spider(io::load(a.path));
    if (io::fits_int64(inst)) return solve_typed(io::convert<std::int64_t>(inst), a);
    return solve_typed(inst, a);
}

// --- check ------------------------------------------------------------------

struct CheckArgs {
    std::string instance;
    std::string solution;
    std::string problem;
};

int cmd_check(const CheckArgs& a) {
    auto inst = io::read_spider(io::load(a.instance));
    auto sol = io::read_solution(io::load(a.solution));
    if (!sol) {
        std::cout << "infeasible\n";
        return kInvalid;
    }
    ProblemKind kind = sol->facility_of ? ProblemKind::Gathering : ProblemKind::Clustering;
    if (!a.problem.empty()) kind = parse_problem(a.problem);
    try {
        const auto value = validate(inst, *sol, kind);
        std::cout << "valid " << value << "\n";
        return kOk;
    } catch (const Error& e) {
        std::cout << "invalid " << e.what() << "\n";
        return kInvalid;
    }
}

struct CheckArrearsArgs {
    std::string instance;
    std::vector<std::string> z;
};

int cmd_check_arrears(const CheckArrearsArgs& a) {
    auto inst = io::read_arrears(io::load(a.instance));
    std::vector<std::size_t> z;
    for (auto token : a.z) {
        for (auto& c : token)
            if (c == ',') c = ' ';
        std::istringstream ss(token);
        long long v = 0;
        while (ss >> v) {
            if (v < 1) throw Error(ErrorKind::IndexError, "option indices start at 1");
            z.push_back(static_cast<std::size_t>(v));
        }
        if (!ss.eof()) throw Error(ErrorKind::MalformedInstance, "choice vector must be integers");
    }
    const auto res = check_arrears(inst, z);
    if (res.feasible) {
        std::cout << "feasible\n";
        return kOk;
    }
    std::cout << "violated budget j=" << *res.violated << " (paid " << res.paid << " > cap "
              << inst.budgets[*res.violated - 1].cap << ")\n";
    return kInvalid;
}

// --- reduce -----------------------------------------------------------------

struct ReduceArgs {
    std::string path;
    std::string from;
    std::string to;
    bool report = false;
};

int cmd_reduce(const ReduceArgs& a) {
    const json src = io::load(a.path);
    json out;
    ArrearsInstance arrears;
    if (a.from == "sat") {
        const auto formula = io::read_sat(src);
        auto red = sat_to_arrears(formula);
        if (a.to == "arrears") {
            out = io::write_arrears(red.instance);
        } else {
            arrears = red.instance;
        }
        if (a.report) out["report"] = io::write_report(red.report, verify_gadget(red));
    } else {
        if (a.to != "spider") throw Error(ErrorKind::MalformedInstance, "arrears sources reduce to spider only");
        arrears = io::read_arrears(src);
    }
    if (a.to == "spider") {
        auto sp = arrears_to_spider(arrears, reduction_options());
        json report = out.contains("report") ? out["report"] : json();
        out = io::write_spider(sp.instance);
        out["threshold"] = sp.threshold;
        if (!report.is_null()) out["report"] = std::move(report);
        if (sp.normalized.log.changed() || sp.day_shift) {
            std::cerr << "normalized: " << sp.normalized.log.removed_budgets << " budgets removed, "
                      << sp.normalized.log.removed_options << " options removed, " << sp.normalized.log.freed_options
                      << " options freed, day shift " << sp.day_shift << "\n";
        }
    }
    std::cout << io::dump(out) << "\n";
    return kOk;
}

// --- gen --------------------------------------------------------------------

struct GenArgs {
    std::string kind = "spider";
    std::uint64_t seed = 1;
    SpiderGenParams spider;
    ArrearsGenParams arrears;
    SatGenParams sat;
};

int cmd_gen(const GenArgs& a) {
    json out;
    if (a.kind == "spider") {
        out = io::write_spider(random_spider(a.seed, a.spider));
    } else if (a.kind == "arrears") {
        out = io::write_arrears(random_arrears(a.seed, a.arrears));
    } else {
        out = io::write_sat(random_sat(a.seed, a.sat));
    }
    std::cout << io::dump(out) << "\n";
    return kOk;
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
    std::string range = "8..14";
    std::string out;
    BenchParams params;
};

int cmd_bench(BenchArgs a) {
    int lo = 0, hi = -1;
    char sep1 = 0, sep2 = 0;
    std::istringstream ss(a.range);
    if (!(ss >> lo >> sep1 >> sep2 >> hi) || sep1 != '.' || sep2 != '.')
        throw Error(ErrorKind::MalformedInstance, "--legs-range expects LO..HI");
    if (lo < 1 || hi > 32) throw Error(ErrorKind::MalformedInstance, "leg counts must lie in 1..32");
    a.params.legs_min = lo;
    a.params.legs_max = hi;
    const auto rows = run_bench(a.params);
    if (a.out.empty()) {
        write_bench_csv(std::cout, rows);
    } else {
        std::ofstream f(a.out);
        if (!f) throw Error(ErrorKind::MalformedInstance, "cannot write " + a.out);
        write_bench_csv(f, rows);
    }
    if (rows.size() >= 2) std::cerr << "geometric state growth per leg: " << geometric_growth(rows) << "\n";
    return kOk;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::SizeGuard:
        case ErrorKind::Overflow: return kOversized;
        case ErrorKind::MalformedInstance:
        case ErrorKind::IndexError: return kParse;
        default: return kInvalid;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact min-max r-gather clustering and r-gathering on spiders"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a spider instance");
    solve_cmd->add_option("instance", solve_args.path, "Instance JSON")->required();
    solve_cmd->add_option("--problem", solve_args.problem)->check(CLI::IsMember({"clustering", "gathering"}));
    solve_cmd->add_flag("--no-prune", solve_args.no_prune, "Use every user as a ball candidate");
    solve_cmd->add_flag("--oracle", solve_args.oracle, "Brute-force partition enumeration");

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Validate a solution against an instance");
    check_cmd->add_option("instance", check_args.instance)->required();
    check_cmd->add_option("solution", check_args.solution)->required();
    check_cmd->add_option("--problem", check_args.problem)->check(CLI::IsMember({"clustering", "gathering"}));

    CheckArrearsArgs ca_args;
    auto* ca_cmd = app.add_subcommand("check-arrears", "Evaluate a choice vector (1-based option indices)");
    ca_cmd->add_option("instance", ca_args.instance)->required();
    ca_cmd->add_option("z", ca_args.z, "Option indices, space or comma separated")->required();

    ReduceArgs reduce_args;
    auto* reduce_cmd = app.add_subcommand("reduce", "Apply a hardness construction");
    reduce_cmd->add_option("instance", reduce_args.path)->required();
    reduce_cmd->add_option("--from", reduce_args.from)->required()->check(CLI::IsMember({"sat", "arrears"}));
    reduce_cmd->add_option("--to", reduce_args.to)->required()->check(CLI::IsMember({"arrears", "spider"}));
    reduce_cmd->add_flag("--report", reduce_args.report, "Attach the gadget report (sat sources)");

    GenArgs gen_args;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
    gen_cmd->add_option("--kind", gen_args.kind)->check(CLI::IsMember({"spider", "arrears", "sat"}));
    gen_cmd->add_option("--seed", gen_args.seed);
    gen_cmd->add_option("--users", gen_args.spider.users);
    gen_cmd->add_option("--legs", gen_args.spider.legs);
    gen_cmd->add_option("--r", gen_args.spider.r);
    gen_cmd->add_option("--facilities", gen_args.spider.facilities);
    gen_cmd->add_option("--max-coord", gen_args.spider.max_coord);
    gen_cmd->add_option("--duties", gen_args.arrears.duties);
    gen_cmd->add_option("--options", gen_args.arrears.max_options);
    gen_cmd->add_option("--budgets", gen_args.arrears.budgets);
    gen_cmd->add_option("--max-value", gen_args.arrears.max_value);
    gen_cmd->add_option("--vars", gen_args.sat.vars);
    gen_cmd->add_option("--clauses", gen_args.sat.clauses);

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Time the DP over a range of leg counts");
    bench_cmd->add_option("--legs-range", bench_args.range, "LO..HI");
    bench_cmd->add_option("--trials", bench_args.params.trials)->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--users-per-leg", bench_args.params.users_per_leg)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--r", bench_args.params.r)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_args.params.seed);
    bench_cmd->add_option("--out", bench_args.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve_args);
        if (*check_cmd) return cmd_check(check_args);
        if (*ca_cmd) return cmd_check_arrears(ca_args);
        if (*reduce_cmd) return cmd_reduce(reduce_args);
        if (*gen_cmd) return cmd_gen(gen_args);
        if (*bench_cmd) return cmd_bench(bench_args);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    }
    return kParse;
}
