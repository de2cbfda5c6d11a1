#pragma once

#include <complex>

#include "ghzkit/phase.hpp"

namespace ghzkit {

/// Exact scalar that is either zero or a root of unity exp(2*pi*i*k/L).
///
/// All arithmetic happens on the exponent k mod the fixed order L, so
/// products, conjugates and powers are exact.  Scalars of different orders
/// never mix; combining them throws instead of silently rescaling.
class CycScalar {
public:
    CycScalar() = default;

    static CycScalar zero(long long order) { return CycScalar(order, true, 0); }
    static CycScalar one(long long order) { return CycScalar(order, false, 0); }
    static CycScalar root(long long order, long long exponent) {
        return CycScalar(order, false, exponent);
    }

    long long order() const { return order_; }
    bool is_zero() const { return zero_; }

    /// Exponent in [0, order).  Only meaningful for nonzero scalars.
    long long exponent() const {
        if (zero_)
            throw Error("zero scalar has no exponent");
        return exp_;
    }

    CycScalar operator*(const CycScalar& o) const {
        check_order(o);
        if (zero_ || o.zero_)
            return zero(order_);
        return root(order_, exp_ + o.exp_);
    }

    CycScalar conj() const { return zero_ ? *this : root(order_, -exp_); }

    CycScalar pow(long long e) const {
        if (zero_) {
            if (e <= 0)
                throw Error("zero scalar cannot be raised to a nonpositive power");
            return *this;
        }
        return root(order_, mod(exp_ * e, order_));
    }

    bool operator==(const CycScalar&) const = default;

    std::complex<double> to_complex() const {
        if (zero_)
            return {0.0, 0.0};
        const double angle = 2.0 * 3.141592653589793238462643383279502884 *
                             static_cast<double>(exp_) / static_cast<double>(order_);
        return {std::cos(angle), std::sin(angle)};
    }

private:
    CycScalar(long long order, bool is_zero, long long exponent)
        : order_(order), zero_(is_zero), exp_(is_zero ? 0 : mod(exponent, order)) {
        if (order_ < 1)
            throw Error("scalar order must be positive");
    }

    static long long mod(long long a, long long m) {
        long long r = a % m;
        return r < 0 ? r + m : r;
    }

    void check_order(const CycScalar& o) const {
        if (order_ != o.order_)
            throw Error("mixing scalars of order " + std::to_string(order_) +
                        " and " + std::to_string(o.order_));
    }

    long long order_ = 1;
    bool zero_ = false;
    long long exp_ = 0;
};

/// exp(2*pi*i * alpha*n / dim) as an order-`order` scalar.
/// Requires dim*alpha.den() to divide order so the exponent stays integral.
CycScalar phase_scalar(const PhaseFrac& alpha, long long n, long long dim, long long order);

/// Same, with the minimal sufficient order dim*alpha.den().
inline CycScalar phase_scalar(const PhaseFrac& alpha, long long n, long long dim) {
    return phase_scalar(alpha, n, dim, dim * alpha.den());
}

} // namespace ghzkit
