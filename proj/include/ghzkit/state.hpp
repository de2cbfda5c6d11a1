#pragma once

#include <map>
#include <span>
#include <vector>

#include "ghzkit/monomial.hpp"

namespace ghzkit {

/// Sparse multi-qudit vector with exact root-of-unity amplitudes.
///
/// Normalization is symbolic: a state with k stored terms stands for the
/// unit vector scaled by 1/sqrt(k), so amplitudes never leave the ring of
/// roots of unity.  Monomial operators permute basis terms one to one and
/// keep the divisor unchanged.
class SparseState {
public:
    using Basis = std::vector<int>;

    SparseState(int parties, int dim, long long order);

    /// (1/sqrt(dim)) sum_n |n n ... n>.
    static SparseState ghz(int parties, int dim, long long order);
    static SparseState ghz(int parties, int dim) { return ghz(parties, dim, dim); }

    int parties() const { return parties_; }
    int dim() const { return dim_; }
    long long order() const { return order_; }

    void set_amplitude(Basis basis, CycScalar amp);

    std::size_t term_count() const { return terms_.size(); }
    const std::map<Basis, CycScalar>& terms() const { return terms_; }

    bool operator==(const SparseState&) const = default;

private:
    int parties_;
    int dim_;
    long long order_;
    std::map<Basis, CycScalar> terms_;
};

/// Apply the product operator ops[0] x ops[1] x ... to each term.
SparseState apply_composite(std::span<const MonomialOp> ops, const SparseState& state);

/// The eigenvalue c with (ops tensor) state = c * state, or nullopt when the
/// state is not an eigenvector.  Exact: every term must map onto a stored
/// term with one common amplitude ratio.
std::optional<CycScalar> eigenvalue_of(std::span<const MonomialOp> ops,
                                       const SparseState& state);

} // namespace ghzkit
