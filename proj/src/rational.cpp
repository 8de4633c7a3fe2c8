#include "designlens/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace designlens {

namespace {

__extension__ typedef __int128 Wide;

Rational from_wide(Wide num, Wide den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide a = num < 0 ? -num : num;
    Wide b = den;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr Wide kMax = std::numeric_limits<std::int64_t>::max();
    if (num > kMax || -num > kMax || den > kMax) throw std::overflow_error("rational overflow");
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    std::int64_t g = std::gcd(numerator, denominator);
    if (g == 0) g = 1;
    num_ = numerator / g;
    den_ = denominator / g;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Wide lhs = static_cast<Wide>(a.num_) * b.den_;
    Wide rhs = static_cast<Wide>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                     static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<Wide>(a.num_) * b.den_ - static_cast<Wide>(b.num_) * a.den_,
                     static_cast<Wide>(a.den_) * b.den_);
}

Rational abs(const Rational& r) {
    return r.numerator() < 0 ? Rational(-r.numerator(), r.denominator()) : r;
}

std::string Rational::to_fixed(int digits) const {
    Wide scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;

    bool negative = num_ < 0;
    Wide n = negative ? -static_cast<Wide>(num_) : static_cast<Wide>(num_);
    Wide scaled = n * scale;
    Wide q = scaled / den_;
    Wide r = scaled % den_;
    // round-half-even on the last kept digit
    if (2 * r > den_ || (2 * r == den_ && (q % 2) != 0)) ++q;

    Wide int_part = q / scale;
    Wide frac_part = q % scale;

    std::string whole;
    if (int_part == 0) {
        whole = "0";
    } else {
        while (int_part > 0) {
            whole.insert(whole.begin(), static_cast<char>('0' + static_cast<int>(int_part % 10)));
            int_part /= 10;
        }
    }
    std::string out = (negative && q != 0) ? "-" + whole : whole;
    if (digits > 0) {
        std::string frac(static_cast<std::size_t>(digits), '0');
        for (int i = digits - 1; i >= 0; --i) {
            frac[static_cast<std::size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac_part % 10));
            frac_part /= 10;
        }
        out += '.';
        out += frac;
    }
    return out;
}

std::optional<Rational> Rational::from_decimal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    std::size_t i = 0;
    if (text[i] == '-' || text[i] == '+') {
        negative = text[i] == '-';
        ++i;
    }
    Wide mantissa = 0;
    int frac_digits = 0;
    bool seen_digit = false;
    bool in_fraction = false;
    constexpr Wide kLimit = static_cast<Wide>(1) << 100;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            if (mantissa > kLimit) return std::nullopt;
            if (in_fraction) ++frac_digits;
            seen_digit = true;
        } else if (c == '.' && !in_fraction) {
            in_fraction = true;
        } else {
            break;
        }
    }
    if (!seen_digit) return std::nullopt;
    int exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') return std::nullopt;
        ++i;
        auto rest = text.substr(i);
        if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
        if (ec != std::errc() || ptr != rest.data() + rest.size()) return std::nullopt;
    }
    int power = exponent - frac_digits;
    if (power < -30 || power > 30) return std::nullopt;
    Wide num = negative ? -mantissa : mantissa;
    Wide den = 1;
    for (int k = 0; k < -power; ++k) den *= 10;
    for (int k = 0; k < power; ++k) {
        num *= 10;
        if (num > kLimit || -num > kLimit) return std::nullopt;
    }
    try {
        return from_wide(num, den);
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

std::optional<Rational> Rational::from_double(double value) {
    if (!std::isfinite(value)) return std::nullopt;
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc()) return std::nullopt;
    return from_decimal(std::string_view(buffer, static_cast<std::size_t>(ptr - buffer)));
}

}  // namespace designlens
