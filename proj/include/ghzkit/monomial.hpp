#pragma once

#include <optional>
#include <vector>

#include "ghzkit/cyclotomic.hpp"

namespace ghzkit {

/// Generalized permutation matrix: exactly one nonzero entry per row and
/// column, each a root of unity.  Column c carries weight(c) in row
/// target(c), so M|c> = weight(c) |target(c)>.
class MonomialOp {
public:
    MonomialOp(std::vector<int> target, std::vector<CycScalar> weight);

    static MonomialOp identity(int dim, long long order);

    /// Cyclic lowering map |n-1><n| (indices mod dim): shift|n> = |n-1 mod dim>.
    static MonomialOp shift(int dim, long long order);

    int dim() const { return static_cast<int>(target_.size()); }
    long long order() const { return weight_.front().order(); }

    int target(int col) const { return target_.at(col); }
    const CycScalar& weight(int col) const { return weight_.at(col); }

    /// Matrix product (*this) * rhs, applied right to left.
    MonomialOp compose(const MonomialOp& rhs) const;

    MonomialOp adjoint() const;

    bool is_identity() const;

    bool operator==(const MonomialOp&) const = default;

private:
    std::vector<int> target_;
    std::vector<CycScalar> weight_;
};

/// The scalar c with a = c*b, if one exists.  Both operators must place
/// their nonzero entries in the same positions and the entrywise ratios
/// must all coincide; otherwise nullopt.
std::optional<CycScalar> proportionality(const MonomialOp& a, const MonomialOp& b);

/// proportionality(a*b, b*a): the two products are always monomial, so
/// commutation up to a scalar reduces to an entrywise ratio check.
std::optional<CycScalar> commutation_ratio(const MonomialOp& a, const MonomialOp& b);

/// Unitary observable with spectrum {omega^k} for omega = exp(2*pi*i/dim):
/// omega^{-alpha} on the cyclic shift, except the wrap-around column 0,
/// which carries omega^{-alpha} * omega^{alpha*dim}.  alpha = 0 gives the
/// plain shift; alpha on the 1/dim grid gives its Fourier relatives.
MonomialOp build_local_observable(const PhaseFrac& alpha, int dim, long long order);

inline MonomialOp build_local_observable(const PhaseFrac& alpha, int dim) {
    return build_local_observable(alpha, dim, dim * alpha.den());
}

} // namespace ghzkit
