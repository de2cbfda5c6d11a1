#include "ghzkit/cyclotomic.hpp"

namespace ghzkit {

CycScalar phase_scalar(const PhaseFrac& alpha, long long n, long long dim, long long order) {
    if (dim < 1)
        throw Error("dimension must be positive");
    const long long span = dim * alpha.den();
    if (order % span != 0)
        throw Error("order " + std::to_string(order) + " cannot represent phase " +
                    alpha.str() + " in dimension " + std::to_string(dim));
    // alpha*n/dim = (alpha.num*n) / span, embedded as exponent * (order/span).
    return CycScalar::root(order, alpha.num() * n * (order / span));
}

} // namespace ghzkit
