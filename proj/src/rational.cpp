#include "paes/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace paes {

namespace {

__extension__ typedef __int128 Wide;

Wide wide_gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(Wide v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("Rational: value does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

Wide pow10(int places) {
    Wide p = 1;
    for (int i = 0; i < places; ++i) p *= 10;
    return p;
}

} // namespace

static Rational make_reduced(Wide num, Wide den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational(narrow(num), narrow(den));
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    Wide n = num;
    Wide d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    Wide g = wide_gcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = narrow(n);
    den_ = narrow(d);
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

Rational& Rational::operator+=(const Rational& rhs) {
    *this = make_reduced(Wide(num_) * rhs.den_ + Wide(rhs.num_) * den_, Wide(den_) * rhs.den_);
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    *this = make_reduced(Wide(num_) * rhs.den_ - Wide(rhs.num_) * den_, Wide(den_) * rhs.den_);
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    *this = make_reduced(Wide(num_) * rhs.num_, Wide(den_) * rhs.den_);
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.num_ == 0) throw std::domain_error("Rational: division by zero");
    *this = make_reduced(Wide(num_) * rhs.den_, Wide(den_) * rhs.num_);
    return *this;
}

Rational Rational::operator-() const { return make_reduced(-Wide(num_), den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Wide lhs = Wide(a.num_) * b.den_;
    Wide rhs = Wide(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::round_to(int places) const {
    if (places < 0 || places > 15) throw std::invalid_argument("Rational::round_to: places out of range");
    const Wide scale = pow10(places);
    Wide scaled_num = Wide(num_) * scale;
    Wide mag = scaled_num < 0 ? -scaled_num : scaled_num;
    Wide q = (2 * mag + den_) / (2 * Wide(den_));
    if (scaled_num < 0) q = -q;
    return make_reduced(q, scale);
}

std::string Rational::to_decimal(int places) const {
    const Rational r = round_to(places);
    const Wide scale = pow10(places);
    Wide scaled = Wide(r.num_) * (scale / r.den_);
    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits;
    Wide int_part = scaled / scale;
    Wide frac_part = scaled % scale;
    digits = std::to_string(static_cast<long long>(int_part));
    if (places > 0) {
        std::string frac = std::to_string(static_cast<long long>(frac_part));
        digits += "." + std::string(static_cast<std::size_t>(places) - frac.size(), '0') + frac;
    }
    return negative ? "-" + digits : digits;
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();

    auto parse_int = [&](std::string_view s, bool allow_sign) -> Wide {
        bool neg = false;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
            neg = s[0] == '-';
            s.remove_prefix(1);
        }
        if (s.empty() || s.size() > 18) throw fail();
        Wide v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw fail();
            v = v * 10 + (c - '0');
        }
        return neg ? -v : v;
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Wide n = parse_int(text.substr(0, slash), true);
        Wide d = parse_int(text.substr(slash + 1), false);
        if (d == 0) throw fail();
        return make_reduced(n, d);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty()) throw fail();
        bool neg = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
        Wide w = whole.empty() ? 0 : parse_int(whole, false);
        Wide f = parse_int(frac, false);
        Wide scale = pow10(static_cast<int>(frac.size()));
        Wide n = w * scale + f;
        return make_reduced(neg ? -n : n, scale);
    }
    return make_reduced(parse_int(text, true), 1);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace paes
