#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rgather/arrears.hpp"
#include "rgather/error.hpp"
#include "rgather/model.hpp"

namespace rgather {

// ---------------------------------------------------------------------------
// Arrears -> spider clustering
// ---------------------------------------------------------------------------

struct ReductionOptions {
    /// The spider construction is pseudo-polynomial; refuse to build more users.
    std::size_t max_users = 100'000;
};

/// A clustering instance that admits a solution of value <= threshold iff the
/// source arrears instance is feasible.
struct SpiderReduction {
    SpiderInstance<std::int64_t> instance;
    std::int64_t unit = 0;       // L
    std::int64_t threshold = 0;  // 2L
    /// Added to every day before building; 1 when some option falls on day 0.
    int day_shift = 0;
    /// Legs 1..long_legs carry the duties; the rest hold one user each.
    int long_legs = 0;
    NormalizedArrears normalized;
};

namespace detail {

inline std::int64_t to_int64(const BigInt& v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorKind::Overflow, std::string(what) + " does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// Builds the spider instance: one long leg per duty whose user layout encodes
/// the payment options, one short leg per unit of budget, and r filler legs of
/// length L. The instance is normalized first.
inline SpiderReduction arrears_to_spider(const ArrearsInstance& input, const ReductionOptions& opts = {}) {
    SpiderReduction out;
    out.normalized = normalize_arrears(input);
    ArrearsInstance inst = out.normalized.instance;
    for (const auto& duty : inst.duties)
        for (const auto& o : duty)
            if (o.day == 0) out.day_shift = 1;
    if (out.day_shift) {
        for (auto& duty : inst.duties)
            for (auto& o : duty) o.day += out.day_shift;
        for (auto& b : inst.budgets) b.day += out.day_shift;
    }

    BigInt max_day = 0, max_amount = 0;
    for (const auto& duty : inst.duties) {
        max_day = std::max(max_day, duty.back().day);
        max_amount = std::max(max_amount, duty.back().amount);
    }
    const BigInt last_budget_day = inst.budgets.empty() ? BigInt(0) : inst.budgets.back().day;
    const BigInt last_cap = inst.budgets.empty() ? BigInt(0) : inst.budgets.back().cap;
    const BigInt L = std::max(max_day, last_budget_day) + 1;
    const BigInt r = std::max(max_amount, last_cap) + 1;

    BigInt users = last_cap + r;
    for (const auto& duty : inst.duties) users += 2 * r - duty.front().amount;
    if (users > opts.max_users) {
        throw Error(ErrorKind::Overflow, "construction needs " + users.str() + " users, limit is " +
                                             std::to_string(opts.max_users));
    }

    const std::int64_t l64 = detail::to_int64(L, "L");
    detail::to_int64(4 * L + 1, "leg length");
    const auto r64 = detail::to_int64(r, "r");
    if (r64 > std::numeric_limits<int>::max()) throw Error(ErrorKind::Overflow, "r does not fit in int");

    auto& spider = out.instance;
    spider.r = static_cast<int>(r64);
    out.unit = l64;
    out.threshold = 2 * l64;
    out.long_legs = static_cast<int>(inst.duties.size());

    auto put = [&](int leg, const BigInt& x, const BigInt& count) {
        const auto xx = detail::to_int64(x, "coordinate");
        for (BigInt c = 0; c < count; ++c) spider.users.push_back({leg, xx});
    };

    int leg = 0;
    for (const auto& duty : inst.duties) {
        ++leg;
        const auto& last = duty.back();
        put(leg, 4 * L - last.day + 1, r);
        for (std::size_t k = 0; k + 1 < duty.size(); ++k)
            put(leg, 2 * L - duty[k].day, duty[k + 1].amount - duty[k].amount);
        put(leg, 2 * L - last.day, r - last.amount);
    }
    BigInt prev_day = 0, prev_cap = 0;
    for (const auto& b : inst.budgets) {
        for (BigInt c = 0; c < b.cap - prev_cap; ++c) put(++leg, prev_day + 1, 1);
        prev_day = b.day;
        prev_cap = b.cap;
    }
    for (BigInt c = 0; c < r; ++c) put(++leg, L, 1);
    spider.legs = std::max(leg, 1);
    return out;
}

// ---------------------------------------------------------------------------
// 1-in-3 SAT -> arrears
// ---------------------------------------------------------------------------

/// Clauses of exactly three literals; literal v > 0 is x_v, -v its negation.
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;
};

inline void check_formula(const CnfFormula& f) {
    if (f.num_vars < 1) throw Error(ErrorKind::MalformedInstance, "formula needs at least one variable");
    if (f.clauses.empty()) throw Error(ErrorKind::MalformedInstance, "formula needs at least one clause");
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        for (int lit : f.clauses[j]) {
            if (lit == 0 || lit > f.num_vars || lit < -f.num_vars)
                throw Error(ErrorKind::MalformedInstance,
                            "clause " + std::to_string(j + 1) + " has invalid literal " + std::to_string(lit));
        }
    }
}

/// True iff every clause has exactly one true literal. assignment[v-1] is x_v.
inline bool satisfies_one_in_three(const CnfFormula& f, const std::vector<bool>& assignment) {
    for (const auto& clause : f.clauses) {
        int truths = 0;
        for (int lit : clause) {
            const bool value = assignment.at(static_cast<std::size_t>(std::abs(lit) - 1));
            truths += (lit > 0) == value ? 1 : 0;
        }
        if (truths != 1) return false;
    }
    return true;
}

/// Base-B digits of an amount, least significant first; the top digit keeps
/// whatever does not fit below B^4.
using Digits = std::array<BigInt, 5>;

inline Digits to_digits(BigInt v, const BigInt& base) {
    Digits d;
    for (std::size_t k = 0; k < 4; ++k) {
        d[k] = v % base;
        v /= base;
    }
    d[4] = v;
    return d;
}

inline BigInt from_digits(const Digits& d, const BigInt& base) {
    BigInt v = 0;
    for (std::size_t k = 5; k-- > 0;) v = v * base + d[k];
    return v;
}

/// One two-option duty of the gadget.
struct GadgetItem {
    enum class Kind { Literal, NegatedLiteral, Filler, NegatedFiller };

    int variable = 0;
    Kind kind = Kind::Literal;
    int clause = 0;    // Literal kinds: 1..m
    int position = 0;  // Literal kinds: 1..3
    int filler = 0;    // Filler kinds: 1..3m(m+1)+1
    /// True for items on the side chosen when the variable is true.
    bool positive_side = true;
    /// Coefficients of the first-option amount, from the construction table.
    Digits coefficients;
};

struct GadgetReport {
    int num_vars = 0;
    int num_clauses = 0;
    BigInt base;       // 100 n^2 m^2
    BigInt side_size;  // items per side and variable, 3m(m+2)+1
    std::vector<std::size_t> items_per_variable;
    /// Sum of the constant coefficients over the positive / negative literal items.
    std::vector<BigInt> clause_weight, clause_weight_negated;
    std::vector<BigInt> positive_side_sum, negative_side_sum;
    /// Closed-form value both side sums should equal, per variable.
    std::vector<BigInt> side_sum;
    BigInt half_total;              // sum of side_sum
    BigInt half_total_closed_form;  // R
    Digits digit_sums;              // over all first-option amounts
    std::vector<BigInt> budget_caps;
    std::vector<Digits> budget_digits;
};

struct SatReduction {
    CnfFormula formula;
    ArrearsInstance instance;
    std::vector<GadgetItem> items;  // parallel to instance.duties
    GadgetReport report;
};

/// Builds the arrears instance whose canonical choice vectors encode truth
/// assignments; every duty pays p on its variable's day or 2p in the second
/// period, which spans the days n+1..n+m+2.
inline SatReduction sat_to_arrears(const CnfFormula& formula) {
    check_formula(formula);
    SatReduction out;
    out.formula = formula;
    const int n = formula.num_vars;
    const int m = static_cast<int>(formula.clauses.size());
    const BigInt B = BigInt(100) * n * n * m * m;
    const BigInt N = BigInt(3) * m * (m + 2) + 1;
    const int fillers = 3 * m * (m + 1) + 1;

    auto& rep = out.report;
    rep.num_vars = n;
    rep.num_clauses = m;
    rep.base = B;
    rep.side_size = N;

    auto add = [&](GadgetItem item, const BigInt& late_day) {
        const auto& c = item.coefficients;
        BigInt p = from_digits(c, B);
        out.instance.duties.push_back({{BigInt(item.variable), p}, {late_day, 2 * p}});
        out.items.push_back(std::move(item));
    };

    for (int i = 1; i <= n; ++i) {
        const BigInt bi = i;
        const Digits full{0, bi, bi, 1, 1};      // (B^2+i)(B+1)B
        const Digits half{0, 0, bi, 0, 1};       // (B^2+i)B^2
        const Digits last{0, bi * N, bi, N, 1};  // (B^2+i)(B+N)B
        BigInt weight = 0, weight_neg = 0;

        for (int negated = 0; negated < 2; ++negated) {
            for (int j = 1; j <= m; ++j) {
                for (int k = 1; k <= 3; ++k) {
                    const int lit = formula.clauses[j - 1][k - 1];
                    const bool matched = negated ? lit == -i : lit == i;
                    GadgetItem item;
                    item.variable = i;
                    item.kind = negated ? GadgetItem::Kind::NegatedLiteral : GadgetItem::Kind::Literal;
                    item.clause = j;
                    item.position = k;
                    item.positive_side = !negated;
                    item.coefficients = negated ? half : full;
                    if (matched) {
                        item.coefficients[0] = j + 1;
                        (negated ? weight_neg : weight) += j + 1;
                    }
                    add(std::move(item), matched ? BigInt(n + 2 + j) : BigInt(n + 1));
                }
            }
        }
        rep.clause_weight.push_back(weight);
        rep.clause_weight_negated.push_back(weight_neg);

        for (int negated = 0; negated < 2; ++negated) {
            const BigInt bumped = BigInt(fillers - 1) - (negated ? weight_neg : weight);
            for (int l = 1; l <= fillers; ++l) {
                GadgetItem item;
                item.variable = i;
                item.kind = negated ? GadgetItem::Kind::NegatedFiller : GadgetItem::Kind::Filler;
                item.filler = l;
                item.positive_side = !negated;
                const bool plus_one = BigInt(l) <= bumped;
                if (negated && l == fillers) {
                    item.coefficients = last;
                } else {
                    item.coefficients = negated ? half : full;
                    if (plus_one) item.coefficients[0] = 1;
                }
                add(std::move(item), plus_one ? BigInt(n + 2) : BigInt(n + 1));
            }
        }
    }

    // Budgets, days 1..n+m+2.
    const BigInt B3 = B * B * B, B4 = B3 * B;
    const BigInt R = N * (B + 1) * (BigInt(n) * B * B + BigInt(n) * (n + 1) / 2) * B + BigInt(3) * m * (m + 1) * n;
    rep.half_total_closed_form = R;
    for (int day = 1; day <= n + m + 2; ++day) {
        BigInt q;
        if (day <= n - 1) {
            q = N * (B + 1) * day * B3 + (B3 - 1);
        } else if (day == n) {
            q = R;
        } else if (day == n + 1) {
            q = (N * n + 6 * m * n + 2 * n + m * (m + 1)) * B4 + (B4 - 1);
        } else if (day <= n + m + 1) {
            q = (3 * N * n - 2 * (n + m + 2 - day)) * B4 + (B4 - 1);
        } else {
            q = 3 * R;
        }
        out.instance.budgets.push_back({BigInt(day), q});
        rep.budget_caps.push_back(q);
        rep.budget_digits.push_back(to_digits(q, B));
    }

    // Report sums.
    rep.items_per_variable.assign(static_cast<std::size_t>(n), 0);
    rep.positive_side_sum.assign(static_cast<std::size_t>(n), 0);
    rep.negative_side_sum.assign(static_cast<std::size_t>(n), 0);
    for (auto& d : rep.digit_sums) d = 0;
    for (std::size_t y = 0; y < out.items.size(); ++y) {
        const auto& item = out.items[y];
        const auto v = static_cast<std::size_t>(item.variable - 1);
        const BigInt& p = out.instance.duties[y][0].amount;
        ++rep.items_per_variable[v];
        (item.positive_side ? rep.positive_side_sum : rep.negative_side_sum)[v] += p;
        const auto digits = to_digits(p, B);
        for (std::size_t k = 0; k < 5; ++k) rep.digit_sums[k] += digits[k];
    }
    rep.half_total = 0;
    for (int i = 1; i <= n; ++i) {
        BigInt ri = N * (B * B + i) * (B + 1) * B + BigInt(3) * m * (m + 1);
        rep.half_total += ri;
        rep.side_sum.push_back(std::move(ri));
    }
    return out;
}

/// Canonical choice vector of an assignment: the late option for every item
/// on the side matching the variable's value, the early option elsewhere.
inline std::vector<std::size_t> assignment_to_choice(const SatReduction& red, const std::vector<bool>& assignment) {
    if (assignment.size() != static_cast<std::size_t>(red.formula.num_vars))
        throw Error(ErrorKind::IndexError, "assignment length differs from the variable count");
    std::vector<std::size_t> z;
    z.reserve(red.items.size());
    for (const auto& item : red.items) {
        const bool value = assignment[static_cast<std::size_t>(item.variable - 1)];
        z.push_back(item.positive_side == value ? 2 : 1);
    }
    return z;
}

struct IdentityCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    /// Enumerating assignments costs 2^n arrears checks.
    int max_vars = 12;
};

/// Re-derives the gadget's arithmetic identities and, for small formulas,
/// checks every assignment: the canonical choice vector is feasible iff the
/// assignment makes exactly one literal per clause true.
inline std::vector<IdentityCheck> verify_gadget(const SatReduction& red, const VerifyOptions& opts = {}) {
    const auto& rep = red.report;
    const auto& inst = red.instance;
    const int n = rep.num_vars;
    const int m = rep.num_clauses;
    const BigInt& B = rep.base;
    std::vector<IdentityCheck> checks;
    auto record = [&](std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok, std::move(detail)});
    };

    {
        const std::size_t expected = static_cast<std::size_t>(6 * m * (m + 2) + 2);
        bool ok = rep.items_per_variable.size() == static_cast<std::size_t>(n);
        for (auto c : rep.items_per_variable) ok = ok && c == expected;
        record("items-per-variable", ok, "expected " + std::to_string(expected));
    }
    {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < n; ++i) {
            const auto v = static_cast<std::size_t>(i);
            if (rep.positive_side_sum[v] != rep.side_sum[v] || rep.negative_side_sum[v] != rep.side_sum[v]) {
                ok = false;
                detail = "variable " + std::to_string(i + 1);
                break;
            }
        }
        record("side-sums-equal", ok, detail);
    }
    record("half-total-closed-form", rep.half_total == rep.half_total_closed_form);
    const auto& caps = rep.budget_caps;
    const auto days = static_cast<std::size_t>(n + m + 2);
    record("budget-count", caps.size() == days, "expected " + std::to_string(days));
    if (caps.size() == days) {
        record("budget-day-n-equals-half-total", caps[static_cast<std::size_t>(n - 1)] == rep.half_total_closed_form);
        record("final-budget-equals-three-half-totals", caps.back() == 3 * rep.half_total_closed_form);
    }
    {
        bool ok = true;
        for (std::size_t y = 0; y < red.items.size() && ok; ++y)
            ok = to_digits(inst.duties[y][0].amount, B) == red.items[y].coefficients;
        record("amount-digits-match-coefficients", ok);
    }
    {
        bool below = true, bound = true, margin = true;
        const BigInt limit = BigInt(20) * m * m * n * n;
        for (const auto& s : rep.digit_sums) {
            below = below && s < B;
            bound = bound && s <= limit;
            margin = margin && 3 * s < B;
        }
        record("digit-sums-below-base", below);
        record("digit-sums-within-20m2n2", bound);
        record("tripled-digit-sums-below-base", margin);
    }
    {
        bool ok = true;
        for (std::size_t j = 1; j < inst.budgets.size(); ++j)
            ok = ok && inst.budgets[j - 1].day < inst.budgets[j].day && inst.budgets[j - 1].cap < inst.budgets[j].cap;
        for (const auto& duty : inst.duties)
            for (std::size_t k = 1; k < duty.size(); ++k)
                ok = ok && duty[k - 1].day < duty[k].day && duty[k - 1].amount < duty[k].amount;
        record("strictly-increasing", ok);
    }
    if (n <= opts.max_vars) {
        bool ok = true;
        std::string detail;
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t mask = 0; mask < total && ok; ++mask) {
            std::vector<bool> assignment(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) assignment[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
            const bool sat = satisfies_one_in_three(red.formula, assignment);
            const bool feasible = check_arrears(inst, assignment_to_choice(red, assignment)).feasible;
            if (sat != feasible) {
                ok = false;
                detail = "assignment mask " + std::to_string(mask);
            }
        }
        record("canonical-choice-iff-one-in-three", ok, detail);
    } else {
        record("canonical-choice-iff-one-in-three", false,
               "skipped: " + std::to_string(n) + " variables exceed " + std::to_string(opts.max_vars));
    }
    return checks;
}

}  // namespace rgather
