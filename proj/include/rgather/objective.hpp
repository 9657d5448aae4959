#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <utility>

namespace rgather {

/// Integer-like coordinate type. Satisfied by the built-in signed integers and
/// by boost::multiprecision::cpp_int.
template <class T>
concept Coordinate = std::totally_ordered<T> && requires(T a, T b) {
    { a + b };
    { a - b };
    { a * b };
    T{0};
};

/// A min-max objective value extended with an "infeasible" sentinel that
/// compares greater than every finite value.
template <Coordinate T>
class Objective {
public:
    Objective() = default;
    Objective(T value) : value_(std::move(value)), feasible_(true) {}  // NOLINT(implicit)

    static Objective infeasible() { return Objective{}; }

    bool feasible() const noexcept { return feasible_; }
    explicit operator bool() const noexcept { return feasible_; }

    /// Precondition: feasible().
    const T& value() const noexcept { return value_; }

    friend bool operator==(const Objective& a, const Objective& b) {
        if (a.feasible_ != b.feasible_) return false;
        return !a.feasible_ || a.value_ == b.value_;
    }

    friend std::strong_ordering operator<=>(const Objective& a, const Objective& b) {
        if (!a.feasible_ || !b.feasible_) {
            return static_cast<int>(!a.feasible_) <=> static_cast<int>(!b.feasible_);
        }
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (b.value_ < a.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Objective& o) {
        if (!o.feasible_) return os << "infeasible";
        return os << o.value_;
    }

private:
    T value_{0};
    bool feasible_ = false;
};

template <Coordinate T>
Objective<T> max_of(const Objective<T>& a, const Objective<T>& b) {
    return a < b ? b : a;
}

template <Coordinate T, class... Rest>
Objective<T> max_of(const Objective<T>& a, const Objective<T>& b, const Rest&... rest) {
    return max_of(max_of(a, b), rest...);
}

template <Coordinate T>
Objective<T> min_of(const Objective<T>& a, const Objective<T>& b) {
    return b < a ? b : a;
}

template <Coordinate T>
T abs_diff(const T& a, const T& b) {
    return a < b ? T(b - a) : T(a - b);
}

}  // namespace rgather
