#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace paes {

// Exact fraction over 64-bit integers, always stored in lowest terms with a
// positive denominator. Intermediate products are carried in 128 bits; a result
// that does not fit back into 64 bits throws std::overflow_error.
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {} // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::int64_t floor() const;
    std::int64_t ceil() const;
    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    // "7", "-28/3".
    std::string str() const;

    // Decimal rendering rounded half away from zero at `places` digits.
    std::string to_decimal(int places) const;

    // Rounds half away from zero to `places` decimal digits, exactly.
    Rational round_to(int places) const;

    // Accepts "12", "-3/4", "0.25", "+1.5".
    static Rational parse(std::string_view text);

  private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace paes
