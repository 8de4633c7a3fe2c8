#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace designlens {

/// Exact non-negative-or-signed fraction held in lowest terms with a positive
/// denominator. Metric ratios are small (counts of classes), so 64-bit
/// components are sufficient; comparisons widen to 128 bits.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t numerator, std::int64_t denominator = 1);

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Decimal rendering with `digits` fractional digits, round-half-even.
    std::string to_fixed(int digits = 4) const;

    /// Parses a plain decimal literal ("0.7", "1", "2.50", "1e-1") exactly.
    static std::optional<Rational> from_decimal(std::string_view text);

    /// Exact conversion of the shortest round-trip decimal form of `value`.
    static std::optional<Rational> from_double(double value);

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

Rational abs(const Rational& r);

/// A metric value that may be UNDEFINED (division by zero in its formula).
using MaybeRational = std::optional<Rational>;

}  // namespace designlens
