#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rgather/cost_oracle.hpp"
#include "rgather/error.hpp"
#include "rgather/line_suffix.hpp"
#include "rgather/model.hpp"
#include "rgather/objective.hpp"

namespace rgather {

struct SolveOptions {
    /// Restrict ball candidates to the first (2r-1)d users of each leg.
    bool prune = true;
    /// Subset enumeration is exponential in the number of user-bearing legs.
    int max_legs = 32;
};

template <Coordinate T>
struct SolveResult {
    Objective<T> value = Objective<T>::infeasible();
    /// Present iff value is feasible; indices refer to the caller's instance.
    std::optional<Solution<T>> solution;
    /// Number of DP states stored over all layers.
    std::size_t states = 0;
    std::size_t processed_users = 0;
};

/// Number of legs that carry at least one user.
template <Coordinate T>
int user_leg_count(const SpiderInstance<T>& inst) {
    std::vector<bool> seen(inst.legs + 1, false);
    int count = 0;
    for (const auto& u : inst.users) {
        if (!seen.at(u.leg)) {
            seen[u.leg] = true;
            ++count;
        }
    }
    return count;
}

/// Users eligible for ball parts: those among the first (2r-1)d users of
/// their leg, where d counts user-bearing legs. Indices are positions in
/// `inst.users`, which must be sorted by coordinate (see normalize).
template <Coordinate T>
std::vector<std::size_t> prune(const SpiderInstance<T>& inst) {
    const auto limit = static_cast<std::size_t>(2 * inst.r - 1) * static_cast<std::size_t>(user_leg_count(inst));
    std::vector<std::size_t> seen(inst.legs + 1, 0), kept;
    for (std::size_t g = 0; g < inst.users.size(); ++g) {
        if (seen.at(inst.users[g].leg)++ < limit) kept.push_back(g);
    }
    return kept;
}

namespace detail {

using LegMask = std::uint32_t;

/// Packed DP state (S, j, k): S in the high 32 bits, then 8 bits of ball
/// size, then 24 bits holding k + 1 for the last ball user (0 = none).
struct StateKey {
    static constexpr std::uint64_t kNone = 0;

    static std::uint64_t pack(LegMask open, unsigned ball, std::uint64_t last_slot) {
        return (std::uint64_t{open} << 32) | (std::uint64_t{ball} << 24) | last_slot;
    }
    static LegMask open(std::uint64_t key) { return static_cast<LegMask>(key >> 32); }
    static unsigned ball(std::uint64_t key) { return static_cast<unsigned>((key >> 24) & 0xffu); }
    static std::uint64_t last_slot(std::uint64_t key) { return key & 0xffffffu; }
};

enum class Action : std::uint8_t { Init, BallAdd, DiscardLeg, Carry, CloseCluster };

template <Coordinate T>
struct DpEntry {
    Objective<T> value;
    std::uint64_t pred = 0;
    Action action = Action::Init;
    std::uint16_t leg = 0;  // CloseCluster: segment leg
    std::uint16_t take = 0; // CloseCluster: segment size p
};

template <Coordinate T>
class FptDp {
public:
    FptDp(const SpiderInstance<T>& inst, ProblemKind kind, const SolveOptions& opts)
        : inst_(inst),
          kind_(kind),
          layout_(inst),
          index_(inst.facilities, inst.legs),
          table_(build_suffix_table(inst, layout_, kind, index_)),
          r_(inst.r) {
        user_legs_ = user_leg_count(inst);
        if (user_legs_ > opts.max_legs || user_legs_ > 32) {
            throw Error(ErrorKind::SizeGuard, std::to_string(user_legs_) + " user-bearing legs exceed the limit of " +
                                                  std::to_string(std::min(opts.max_legs, 32)));
        }
        if (inst.users.size() >= (std::size_t{1} << 24) - 1) {
            throw Error(ErrorKind::SizeGuard, "too many users for the packed state key");
        }
        if (opts.prune) {
            processed_ = prune(inst);
        } else {
            processed_.resize(inst.users.size());
            for (std::size_t g = 0; g < processed_.size(); ++g) processed_[g] = g;
        }
    }

    void run() {
        layers_.assign(processed_.size() + 1, {});
        LegMask all = 0;
        for (int l = 1; l <= inst_.legs; ++l) {
            if (!layout_.users[l].empty()) all |= bit(l);
        }
        layers_[0][StateKey::pack(all, 0, StateKey::kNone)] = DpEntry<T>{Objective<T>(T{0})};

        const unsigned max_ball = static_cast<unsigned>(2 * r_ - 1);
        for (std::size_t i = 1; i <= processed_.size(); ++i) {
            const std::size_t g = processed_[i - 1];
            const int leg = inst_.users[g].leg;
            const LegMask b = bit(leg);
            const bool last_on_leg = layout_.position[g] + 1 == layout_.users[leg].size();
            const auto& prev = layers_[i - 1];
            auto& cur = layers_[i];

            for (const auto& [key, e] : prev) {
                const LegMask open = StateKey::open(key);
                const unsigned j = StateKey::ball(key);
                if (open & b) {
                    if (j + 1 <= max_ball) {
                        // A leg whose final user joins a ball has nothing left to offer.
                        LegMask next = last_on_leg ? (open & ~b) : open;
                        relax(cur, StateKey::pack(next, j + 1, g + 1), e.value, key, Action::BallAdd);
                    }
                    auto discard = max_of(e.value, table_.from(layout_, leg, g));
                    relax(cur, StateKey::pack(open & ~b, j, StateKey::last_slot(key)), discard, key,
                          Action::DiscardLeg);
                } else {
                    relax(cur, key, e.value, key, Action::Carry);
                }
            }

            std::vector<std::pair<std::uint64_t, Objective<T>>> closable;
            for (const auto& [key, e] : cur) {
                if (StateKey::ball(key) >= 1) closable.emplace_back(key, e.value);
            }
            for (const auto& [key, value] : closable) close_cluster(cur, g, key, value);
        }
    }

    Objective<T> answer() const {
        const auto& last = layers_.back();
        auto it = last.find(StateKey::pack(0, 0, StateKey::kNone));
        return it == last.end() ? Objective<T>::infeasible() : it->second.value;
    }

    std::size_t states() const {
        std::size_t total = 0;
        for (const auto& layer : layers_) total += layer.size();
        return total;
    }

    std::size_t processed_users() const { return processed_.size(); }

    /// Walk predecessor records back from the answer and rebuild the clusters
    /// in normalized indexing.
    Solution<T> reconstruct() const {
        struct Step {
            std::size_t layer;
            DpEntry<T> entry;
        };
        std::vector<Step> steps;
        std::size_t layer = processed_.size();
        std::uint64_t key = StateKey::pack(0, 0, StateKey::kNone);
        while (true) {
            const auto& e = layers_[layer].at(key);
            if (e.action == Action::Init) break;
            steps.push_back({layer, e});
            key = e.pred;
            if (e.action != Action::CloseCluster) --layer;
        }
        std::reverse(steps.begin(), steps.end());

        Solution<T> sol;
        sol.value = answer().value();
        if (kind_ == ProblemKind::Gathering) sol.facility_of.emplace();
        std::vector<std::size_t> ball;

        auto emit_groups = [&](int leg, std::size_t k) {
            for (const auto& grp : split_suffix(table_.legs[leg], k)) {
                std::vector<std::size_t> members(layout_.users[leg].begin() + grp.begin,
                                                 layout_.users[leg].begin() + grp.begin + grp.count);
                sol.clusters.push_back(std::move(members));
                if (sol.facility_of) sol.facility_of->push_back(grp.facility);
            }
        };

        for (const auto& step : steps) {
            const std::size_t g = processed_[step.layer - 1];
            switch (step.entry.action) {
                case Action::BallAdd:
                    ball.push_back(g);
                    break;
                case Action::DiscardLeg: {
                    const int leg = inst_.users[g].leg;
                    emit_groups(leg, layout_.users[leg].size() - layout_.position[g]);
                    break;
                }
                case Action::CloseCluster: {
                    const int leg = step.entry.leg;
                    const auto& row = layout_.users[leg];
                    const std::size_t first = first_after(leg, g);
                    std::vector<std::size_t> cluster = ball;
                    cluster.insert(cluster.end(), row.begin() + first, row.begin() + first + step.entry.take);
                    const std::size_t v = cluster.back();
                    if (sol.facility_of) sol.facility_of->push_back(cluster_cost(v, ball.back()).facility);
                    sol.clusters.push_back(std::move(cluster));
                    ball.clear();
                    emit_groups(leg, row.size() - layout_.position[v] - 1);
                    break;
                }
                case Action::Carry:
                case Action::Init:
                    break;
            }
        }
        return sol;
    }

private:
    static LegMask bit(int leg) { return LegMask{1} << (leg - 1); }

    static void relax(std::unordered_map<std::uint64_t, DpEntry<T>>& layer, std::uint64_t key,
                      const Objective<T>& value, std::uint64_t pred, Action action, std::uint16_t leg = 0,
                      std::uint16_t take = 0) {
        if (!value) return;
        auto [it, inserted] = layer.try_emplace(key, DpEntry<T>{value, pred, action, leg, take});
        if (!inserted && value < it->second.value) it->second = DpEntry<T>{value, pred, action, leg, take};
    }

    /// Offset (within the leg's list) of the first user on `leg` after global index g.
    std::size_t first_after(int leg, std::size_t g) const {
        const auto& row = layout_.users[leg];
        return static_cast<std::size_t>(std::upper_bound(row.begin(), row.end(), g) - row.begin());
    }

    FacilityChoice<T> cluster_cost(std::size_t v, std::size_t u) {
        const std::uint64_t key = (std::uint64_t{v} << 32) | u;
        auto it = cost_memo_.find(key);
        if (it != cost_memo_.end()) return it->second;
        FacilityChoice<T> c = kind_ == ProblemKind::Clustering
                                  ? FacilityChoice<T>{Objective<T>(cost_clustering(inst_.users[u], inst_.users[v])), 0}
                                  : cost_gathering(inst_.users[u], inst_.users[v], index_);
        cost_memo_.emplace(key, c);
        return c;
    }

    FacilityChoice<T> cluster_cost(std::size_t v, std::size_t u) const {
        auto it = cost_memo_.find((std::uint64_t{v} << 32) | u);
        if (it != cost_memo_.end()) return it->second;
        return kind_ == ProblemKind::Clustering
                   ? FacilityChoice<T>{Objective<T>(cost_clustering(inst_.users[u], inst_.users[v])), 0}
                   : cost_gathering(inst_.users[u], inst_.users[v], index_);
    }

    void close_cluster(std::unordered_map<std::uint64_t, DpEntry<T>>& cur, std::size_t g, std::uint64_t key,
                       const Objective<T>& value) {
        const LegMask open = StateKey::open(key);
        const int j = static_cast<int>(StateKey::ball(key));
        const std::size_t u = static_cast<std::size_t>(StateKey::last_slot(key) - 1);
        const int p_min = std::max(1, r_ - j);
        const int p_max = 2 * r_ - 1 - j;
        if (p_min > p_max) return;
        for (LegMask rest = open; rest != 0; rest &= rest - 1) {
            const int leg = std::countr_zero(rest) + 1;
            const auto& row = layout_.users[leg];
            const std::size_t first = first_after(leg, g);
            for (int p = p_min; p <= p_max; ++p) {
                const std::size_t last = first + static_cast<std::size_t>(p) - 1;
                if (last >= row.size()) break;
                const std::size_t v = row[last];
                auto c = max_of(value, cluster_cost(v, u).cost, table_.after(layout_, leg, v));
                relax(cur, StateKey::pack(open & ~bit(leg), 0, StateKey::kNone), c, key, Action::CloseCluster,
                      static_cast<std::uint16_t>(leg), static_cast<std::uint16_t>(p));
            }
        }
    }

    const SpiderInstance<T>& inst_;
    ProblemKind kind_;
    LegLayout<T> layout_;
    FacilityIndex<T> index_;
    SuffixCostTable<T> table_;
    int r_;
    int user_legs_ = 0;
    std::vector<std::size_t> processed_;
    std::vector<std::unordered_map<std::uint64_t, DpEntry<T>>> layers_;
    std::unordered_map<std::uint64_t, FacilityChoice<T>> cost_memo_;
};

}  // namespace detail

/// Exact min-max r-gather clustering / r-gathering on a spider by dynamic
/// programming over (processed users, open legs, ball size, last ball user).
///
/// Any instance is accepted; it is normalized internally and the solution is
/// reported in the caller's indexing.
template <Coordinate T>
SolveResult<T> solve(const SpiderInstance<T>& instance, ProblemKind kind, const SolveOptions& opts = {}) {
    auto norm = normalize(instance);
    SolveResult<T> result;
    if (norm.instance.users.empty()) return result;
    if (kind == ProblemKind::Gathering && norm.instance.facilities.empty()) return result;

    detail::FptDp<T> dp(norm.instance, kind, opts);
    dp.run();
    result.value = dp.answer();
    result.states = dp.states();
    result.processed_users = dp.processed_users();
    if (result.value) result.solution = norm.to_original(dp.reconstruct());
    return result;
}

struct EnumerateOptions {
    /// Search nodes visited before giving up with SizeGuard.
    std::size_t max_nodes = 50'000'000;
};

/// Exhaustive walk over every suffix-special family of multi-leg clusters,
/// leftover users being covered by optimal single-leg suffix solutions.
/// Multi-leg clusters are charged their true diameter / best facility radius,
/// so this is independent of the DP's closing-cost shortcut.
template <Coordinate T>
Objective<T> enumerate_suffix_special(const SpiderInstance<T>& instance, ProblemKind kind,
                                      const EnumerateOptions& opts = {}) {
    auto norm = normalize(instance);
    const auto& inst = norm.instance;
    if (inst.users.empty()) return Objective<T>::infeasible();
    if (kind == ProblemKind::Gathering && inst.facilities.empty()) return Objective<T>::infeasible();
    if (inst.legs > 32) throw Error(ErrorKind::SizeGuard, "too many legs for enumeration");

    LegLayout<T> layout(inst);
    FacilityIndex<T> index(inst.facilities, inst.legs);
    auto table = build_suffix_table(inst, layout, kind, index);
    const std::size_t n = inst.users.size();
    const std::size_t r = static_cast<std::size_t>(inst.r);
    const std::size_t max_cluster = 2 * r - 1;

    auto true_cost = [&](const std::vector<std::size_t>& cluster) {
        if (kind == ProblemKind::Clustering) return Objective<T>(diameter(inst, cluster));
        auto best = Objective<T>::infeasible();
        for (const auto& f : inst.facilities) best = min_of(best, Objective<T>(radius(inst, cluster, f)));
        return best;
    };

    auto best = Objective<T>::infeasible();
    std::size_t nodes = 0;
    std::vector<std::size_t> ball;

    // Visit user i with open legs `open` and the partial ball in `ball`.
    auto visit = [&](auto&& self, std::size_t i, std::uint32_t open, const Objective<T>& cur) -> void {
        if (++nodes > opts.max_nodes) throw Error(ErrorKind::SizeGuard, "suffix-special enumeration too large");
        if (!(cur < best)) return;
        if (i == n) {
            if (ball.empty()) best = cur;
            return;
        }
        const int leg = inst.users[i].leg;
        const std::uint32_t b = std::uint32_t{1} << (leg - 1);

        // Second choice, made after the first: keep growing the ball, or close it.
        auto decide = [&](std::uint32_t s, const Objective<T>& c) {
            if (ball.size() < max_cluster) self(self, i + 1, s, c);
            for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
                const int seg_leg = std::countr_zero(rest) + 1;
                const auto& row = layout.users[seg_leg];
                const auto first = static_cast<std::size_t>(
                    std::upper_bound(row.begin(), row.end(), i) - row.begin());
                std::vector<std::size_t> cluster = ball;
                for (std::size_t t = 1; first + t <= row.size() && ball.size() + t <= max_cluster; ++t) {
                    cluster.push_back(row[first + t - 1]);
                    if (cluster.size() < r) continue;
                    const std::size_t v = cluster.back();
                    auto c2 = max_of(c, true_cost(cluster), table.after(layout, seg_leg, v));
                    std::vector<std::size_t> saved;
                    saved.swap(ball);
                    self(self, i + 1, s & ~(std::uint32_t{1} << (seg_leg - 1)), c2);
                    ball.swap(saved);
                }
            }
        };

        if (open & b) {
            ball.push_back(i);
            decide(open, cur);
            ball.pop_back();
            decide(open & ~b, max_of(cur, table.from(layout, leg, i)));
        } else {
            decide(open, cur);
        }
    };

    std::uint32_t all = 0;
    for (int l = 1; l <= inst.legs; ++l)
        if (!layout.users[l].empty()) all |= std::uint32_t{1} << (l - 1);
    visit(visit, 0, all, Objective<T>(T{0}));
    return best;
}

}  // namespace rgather
