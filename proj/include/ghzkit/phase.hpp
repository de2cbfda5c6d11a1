#pragma once

#include <compare>
#include <numeric>
#include <string>
#include <string_view>

#include "ghzkit/errors.hpp"

namespace ghzkit {

/// Exact rational phase, measured in turns (1 turn = 2*pi).
///
/// Stored as a reduced fraction with positive denominator.  Comparisons are
/// exact value comparisons; phases that differ by an integer describe the
/// same observable up to a global factor and are related by equivalent(),
/// not by operator==.
class PhaseFrac {
public:
    constexpr PhaseFrac() = default;

    PhaseFrac(long long num, long long den) : num_(num), den_(den) {
        if (den_ == 0)
            throw Error("phase denominator must be nonzero");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    /// Representative in [0, 1) of the same phase mod 1.
    PhaseFrac canonical() const {
        long long r = num_ % den_;
        if (r < 0)
            r += den_;
        return PhaseFrac(r, den_);
    }

    bool is_canonical() const { return 0 <= num_ && num_ < den_; }

    /// True when the two phases differ by an integer number of turns.
    bool equivalent(const PhaseFrac& other) const {
        return (*this - other).is_integer();
    }

    /// True when the phase lies on the grid {k/m : k integer}.
    bool on_grid(long long m) const { return (num_ * m) % den_ == 0; }

    /// The integer num*m/den.  Requires on_grid(m).
    long long scaled(long long m) const {
        if (!on_grid(m))
            throw Error("phase " + str() + " is not a multiple of 1/" + std::to_string(m));
        return num_ * m / den_;
    }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    PhaseFrac operator+(const PhaseFrac& o) const {
        return PhaseFrac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    PhaseFrac operator-(const PhaseFrac& o) const {
        return PhaseFrac(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    PhaseFrac operator-() const { return PhaseFrac(-num_, den_); }
    PhaseFrac operator*(long long k) const { return PhaseFrac(num_ * k, den_); }

    bool operator==(const PhaseFrac&) const = default;
    std::strong_ordering operator<=>(const PhaseFrac& o) const {
        // Reduced fractions with positive denominators, so cross products decide.
        const long long lhs = num_ * o.den_;
        const long long rhs = o.num_ * den_;
        return lhs <=> rhs;
    }

    /// "num/den", always with the denominator ("0/1", "2/3").
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "a/b" or a bare integer "a".
    static PhaseFrac parse(std::string_view text);

private:
    long long num_ = 0;
    long long den_ = 1;
};

} // namespace ghzkit
