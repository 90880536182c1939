#pragma once

#include <string>

#include "covmin/rational.hpp"

namespace covmin {

/// Closed rational interval certifying a value within [lo, hi].
class Interval {
public:
    Interval() = default;
    explicit Interval(const Rat& point) : lo_(point), hi_(point) {}
    Interval(const Rat& lo, const Rat& hi) : lo_(lo), hi_(hi) {
        require(lo <= hi, Errc::Inconsistent,
                "interval lower end " + to_string(lo) + " exceeds upper end " + to_string(hi));
    }

    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    Rat width() const { return hi_ - lo_; }
    Rat mid() const { return (lo_ + hi_) / 2; }
    bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }
    bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    bool is_point() const { return lo_ == hi_; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return {a.lo_ + b.lo_, a.hi_ + b.hi_};
    }
    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    Rat lo_{0};
    Rat hi_{0};
};

/// Componentwise maximum: the monotone extension of max to intervals.
inline Interval max(const Interval& a, const Interval& b) {
    return {a.lo() < b.lo() ? b.lo() : a.lo(), a.hi() < b.hi() ? b.hi() : a.hi()};
}

inline std::string to_string(const Interval& iv) {
    if (iv.is_point())
        return to_string(iv.lo());
    return "[" + to_string(iv.lo()) + ", " + to_string(iv.hi()) + "]";
}

} // namespace covmin
