#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rgather/error.hpp"

namespace rgather {

using BigInt = boost::multiprecision::cpp_int;

/// One way to settle a duty: pay `amount` on day `day`.
struct PaymentOption {
    BigInt day;
    BigInt amount;

    friend bool operator==(const PaymentOption&, const PaymentOption&) = default;
};

/// At most `cap` may have been paid by the end of day `day`.
struct Budget {
    BigInt day;
    BigInt cap;

    friend bool operator==(const Budget&, const Budget&) = default;
};

/// Choose one option per duty so that every budget holds.
struct ArrearsInstance {
    std::vector<std::vector<PaymentOption>> duties;
    std::vector<Budget> budgets;
};

struct ArrearsCheck {
    bool feasible = true;
    /// 1-based index of the first violated budget, in input order.
    std::optional<std::size_t> violated;
    /// Amount paid by the violated budget's day.
    BigInt paid;
};

/// Evaluate a choice vector; z[i] is the 1-based option index for duty i.
inline ArrearsCheck check_arrears(const ArrearsInstance& inst, const std::vector<std::size_t>& z) {
    if (z.size() != inst.duties.size()) {
        throw Error(ErrorKind::IndexError, "choice vector has " + std::to_string(z.size()) + " entries for " +
                                               std::to_string(inst.duties.size()) + " duties");
    }
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] < 1 || z[i] > inst.duties[i].size()) {
            throw Error(ErrorKind::IndexError, "duty " + std::to_string(i + 1) + " has no option " + std::to_string(z[i]));
        }
    }
    ArrearsCheck out;
    for (std::size_t j = 0; j < inst.budgets.size(); ++j) {
        const auto& budget = inst.budgets[j];
        BigInt paid = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const auto& opt = inst.duties[i][z[i] - 1];
            if (opt.day <= budget.day) paid += opt.amount;
        }
        if (paid > budget.cap) {
            out.feasible = false;
            out.violated = j + 1;
            out.paid = std::move(paid);
            return out;
        }
    }
    return out;
}

inline void check_arrears_instance(const ArrearsInstance& inst) {
    for (std::size_t i = 0; i < inst.duties.size(); ++i) {
        if (inst.duties[i].empty())
            throw Error(ErrorKind::MalformedInstance, "duty " + std::to_string(i + 1) + " has no options");
        for (const auto& o : inst.duties[i]) {
            if (o.day < 0 || o.amount < 0)
                throw Error(ErrorKind::MalformedInstance, "duty " + std::to_string(i + 1) + " has a negative value");
        }
    }
    for (const auto& b : inst.budgets) {
        if (b.day < 0 || b.cap < 0) throw Error(ErrorKind::MalformedInstance, "budget with a negative value");
    }
}

/// What normalization changed.
struct ArrearsNormalizationLog {
    std::size_t removed_budgets = 0;
    std::size_t removed_options = 0;
    /// Options dated after the last budget day (or any option when there are
    /// no budgets) are unconstrained and were rewritten to pay 0 on that day.
    std::size_t freed_options = 0;

    bool changed() const { return removed_budgets + removed_options + freed_options > 0; }
};

struct NormalizedArrears {
    ArrearsInstance instance;
    /// origin[i][k]: 0-based index in the input of normalized option k of duty i.
    std::vector<std::vector<std::size_t>> origin;
    ArrearsNormalizationLog log;

    /// Map a choice vector for `instance` to one for the input.
    std::vector<std::size_t> to_original(const std::vector<std::size_t>& z) const {
        std::vector<std::size_t> out(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) out[i] = origin.at(i).at(z[i] - 1) + 1;
        return out;
    }
};

/// Bring an instance into the form where budget days and caps are strictly
/// increasing, and within every duty option days and amounts are strictly
/// increasing, without changing feasibility.
///
/// A budget is dropped when a later-or-equal day has a smaller-or-equal cap.
/// An option is dropped when another option of the same duty is no earlier
/// and no larger.
inline NormalizedArrears normalize_arrears(const ArrearsInstance& input) {
    check_arrears_instance(input);
    NormalizedArrears out;

    std::vector<Budget> budgets = input.budgets;
    std::sort(budgets.begin(), budgets.end(), [](const Budget& a, const Budget& b) {
        if (a.day != b.day) return a.day > b.day;
        return a.cap < b.cap;
    });
    std::optional<BigInt> min_cap;
    for (auto& b : budgets) {
        if (!min_cap || b.cap < *min_cap) {
            min_cap = b.cap;
            out.instance.budgets.push_back(std::move(b));
        }
    }
    std::reverse(out.instance.budgets.begin(), out.instance.budgets.end());
    out.log.removed_budgets = input.budgets.size() - out.instance.budgets.size();

    const bool unconstrained_all = out.instance.budgets.empty();
    const BigInt last_day = unconstrained_all ? BigInt(0) : out.instance.budgets.back().day;

    for (const auto& duty : input.duties) {
        std::vector<std::pair<PaymentOption, std::size_t>> opts;
        for (std::size_t k = 0; k < duty.size(); ++k) {
            PaymentOption o = duty[k];
            if (unconstrained_all || o.day > last_day) {
                o = {last_day, 0};
                ++out.log.freed_options;
            }
            opts.emplace_back(std::move(o), k);
        }
        std::stable_sort(opts.begin(), opts.end(), [](const auto& a, const auto& b) {
            if (a.first.day != b.first.day) return a.first.day > b.first.day;
            return a.first.amount < b.first.amount;
        });
        std::vector<PaymentOption> kept;
        std::vector<std::size_t> origin;
        std::optional<BigInt> min_amount;
        for (auto& [o, k] : opts) {
            if (!min_amount || o.amount < *min_amount) {
                min_amount = o.amount;
                kept.push_back(o);
                origin.push_back(k);
            }
        }
        std::reverse(kept.begin(), kept.end());
        std::reverse(origin.begin(), origin.end());
        out.log.removed_options += duty.size() - kept.size();
        out.instance.duties.push_back(std::move(kept));
        out.origin.push_back(std::move(origin));
    }
    return out;
}

}  // namespace rgather
