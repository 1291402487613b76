#pragma once

#include <compare>
#include <string>

#include "paes/rational.hpp"

namespace paes {

// An exact duration counted in shift-operation times (T_shift = 1).
class TimeQuantum {
  public:
    constexpr TimeQuantum() = default;
    explicit TimeQuantum(Rational shifts) : shifts_(shifts) {}

    static TimeQuantum shifts(Rational n) { return TimeQuantum(n); }
    static TimeQuantum zero() { return TimeQuantum(); }

    const Rational& in_shifts() const { return shifts_; }

    // Value expressed as a multiple of `unit`, e.g. of T_XOR.
    Rational in_units_of(const TimeQuantum& unit) const { return shifts_ / unit.shifts_; }

    bool is_zero() const { return shifts_.is_zero(); }

    TimeQuantum& operator+=(const TimeQuantum& rhs) {
        shifts_ += rhs.shifts_;
        return *this;
    }
    TimeQuantum& operator-=(const TimeQuantum& rhs) {
        shifts_ -= rhs.shifts_;
        return *this;
    }
    friend TimeQuantum operator+(TimeQuantum a, const TimeQuantum& b) { return a += b; }
    friend TimeQuantum operator-(TimeQuantum a, const TimeQuantum& b) { return a -= b; }
    friend TimeQuantum operator*(const Rational& k, const TimeQuantum& t) { return TimeQuantum(k * t.shifts_); }
    friend TimeQuantum operator*(const TimeQuantum& t, const Rational& k) { return TimeQuantum(t.shifts_ * k); }
    friend TimeQuantum operator/(const TimeQuantum& t, const Rational& k) { return TimeQuantum(t.shifts_ / k); }
    friend Rational operator/(const TimeQuantum& a, const TimeQuantum& b) { return a.shifts_ / b.shifts_; }

    friend bool operator==(const TimeQuantum&, const TimeQuantum&) = default;
    friend auto operator<=>(const TimeQuantum& a, const TimeQuantum& b) { return a.shifts_ <=> b.shifts_; }

  private:
    Rational shifts_;
};

inline TimeQuantum max(const TimeQuantum& a, const TimeQuantum& b) { return a < b ? b : a; }

} // namespace paes
