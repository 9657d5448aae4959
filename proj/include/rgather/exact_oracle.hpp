#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgather/arrears.hpp"
#include "rgather/error.hpp"
#include "rgather/model.hpp"
#include "rgather/objective.hpp"

namespace rgather {

/// Enumerates set partitions of {0..n-1} whose blocks all have at least r
/// elements, as restricted growth strings. Branches that can no longer fill
/// their undersized blocks are cut early.
class PartitionIterator {
public:
    PartitionIterator(std::size_t n, std::size_t r) : n_(n), r_(r), label_(n, -1), size_(n + 1, 0) {}

    /// Advance to the next qualifying partition; false when exhausted.
    bool next() {
        if (done_) return false;
        std::ptrdiff_t i;
        if (!started_) {
            started_ = true;
            if (n_ == 0) {
                done_ = true;
                return true;
            }
            i = 0;
        } else {
            i = static_cast<std::ptrdiff_t>(n_) - 1;
        }
        while (i >= 0) {
            const auto pos = static_cast<std::size_t>(i);
            if (label_[pos] >= 0) unassign(pos);
            const int next_label = label_[pos] + 1;
            if (next_label > blocks_) {
                label_[pos] = -1;
                --i;
                continue;
            }
            assign(pos, next_label);
            if (deficit_ > n_ - 1 - pos) continue;
            if (pos + 1 == n_) return true;
            ++i;
            label_[pos + 1] = -1;
        }
        done_ = true;
        return false;
    }

    /// Block label of every element in the current partition.
    const std::vector<int>& labels() const noexcept { return label_; }
    int block_count() const noexcept { return blocks_; }

    std::vector<std::vector<std::size_t>> blocks() const {
        std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(blocks_));
        for (std::size_t e = 0; e < n_; ++e) out[static_cast<std::size_t>(label_[e])].push_back(e);
        return out;
    }

private:
    std::size_t short_of(std::size_t size) const { return size < r_ ? r_ - size : 0; }

    void assign(std::size_t pos, int b) {
        label_[pos] = b;
        auto& s = size_[static_cast<std::size_t>(b)];
        if (s == 0) {
            ++blocks_;
        } else {
            deficit_ -= short_of(s);
        }
        ++s;
        deficit_ += short_of(s);
    }

    // Removes pos from its block but leaves label_[pos] set, so the caller
    // can resume from the next label.
    void unassign(std::size_t pos) {
        auto& s = size_[static_cast<std::size_t>(label_[pos])];
        deficit_ -= short_of(s);
        --s;
        if (s == 0) {
            --blocks_;
        } else {
            deficit_ += short_of(s);
        }
    }

    std::size_t n_, r_;
    std::vector<int> label_;
    std::vector<std::size_t> size_;
    int blocks_ = 0;
    std::size_t deficit_ = 0;
    bool started_ = false;
    bool done_ = false;
};

struct OracleOptions {
    std::size_t max_users = 12;
    std::uint64_t max_arrears_vectors = 2'000'000;
};

namespace detail {

template <Coordinate T, class BlockCost>
std::optional<Solution<T>> brute_partition(const SpiderInstance<T>& inst, const OracleOptions& opts,
                                           BlockCost&& block_cost, bool with_facilities) {
    check_instance(inst);
    if (inst.users.size() > opts.max_users) {
        throw Error(ErrorKind::SizeGuard, std::to_string(inst.users.size()) + " users exceed the brute-force limit of " +
                                              std::to_string(opts.max_users));
    }
    if (inst.users.empty()) return std::nullopt;
    PartitionIterator it(inst.users.size(), static_cast<std::size_t>(inst.r));
    std::optional<Solution<T>> best;
    while (it.next()) {
        auto blocks = it.blocks();
        Solution<T> cand;
        if (with_facilities) cand.facility_of.emplace();
        bool ok = true;
        for (const auto& blk : blocks) {
            auto [cost, fac] = block_cost(blk);
            if (!cost) {
                ok = false;
                break;
            }
            cand.value = std::max(cand.value, cost.value());
            if (with_facilities) cand.facility_of->push_back(fac);
        }
        if (!ok) continue;
        if (!best || cand.value < best->value) {
            cand.clusters = std::move(blocks);
            best = std::move(cand);
        }
    }
    return best;
}

}  // namespace detail

/// Exact clustering optimum by enumerating every partition with blocks of
/// size >= r. nullopt when no such partition exists.
template <Coordinate T>
std::optional<Solution<T>> brute_clustering(const SpiderInstance<T>& inst, const OracleOptions& opts = {}) {
    return detail::brute_partition(
        inst, opts,
        [&](const std::vector<std::size_t>& blk) { return std::pair{Objective<T>(diameter(inst, blk)), std::size_t{0}}; },
        false);
}

/// Exact gathering optimum. Each block independently takes its best facility;
/// blocks sharing a facility merge without raising the objective, so this
/// equals the assignment formulation.
template <Coordinate T>
std::optional<Solution<T>> brute_gathering(const SpiderInstance<T>& inst, const OracleOptions& opts = {}) {
    if (inst.facilities.empty()) {
        check_instance(inst);
        return std::nullopt;
    }
    return detail::brute_partition(
        inst, opts,
        [&](const std::vector<std::size_t>& blk) {
            auto best = Objective<T>::infeasible();
            std::size_t arg = 0;
            for (std::size_t f = 0; f < inst.facilities.size(); ++f) {
                Objective<T> c(radius(inst, blk, inst.facilities[f]));
                if (c < best) {
                    best = c;
                    arg = f;
                }
            }
            return std::pair{best, arg};
        },
        true);
}

template <Coordinate T>
std::optional<Solution<T>> brute_solve(const SpiderInstance<T>& inst, ProblemKind kind, const OracleOptions& opts = {}) {
    return kind == ProblemKind::Clustering ? brute_clustering(inst, opts) : brute_gathering(inst, opts);
}

/// Try every choice vector in lexicographic order; return the first feasible
/// one (1-based option indices), or nullopt.
inline std::optional<std::vector<std::size_t>> brute_arrears(const ArrearsInstance& inst,
                                                             const OracleOptions& opts = {}) {
    check_arrears_instance(inst);
    std::uint64_t total = 1;
    for (const auto& d : inst.duties) {
        total *= d.size();
        if (total > opts.max_arrears_vectors) {
            throw Error(ErrorKind::SizeGuard, "arrears search space exceeds " +
                                                  std::to_string(opts.max_arrears_vectors) + " choice vectors");
        }
    }
    std::vector<std::size_t> z(inst.duties.size(), 1);
    while (true) {
        if (check_arrears(inst, z).feasible) return z;
        std::size_t i = z.size();
        while (i > 0 && z[i - 1] == inst.duties[i - 1].size()) z[--i] = 1;
        if (i == 0) return std::nullopt;
        ++z[i - 1];
    }
}

}  // namespace rgather
