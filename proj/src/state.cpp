#include "ghzkit/state.hpp"

namespace ghzkit {

SparseState::SparseState(int parties, int dim, long long order)
    : parties_(parties), dim_(dim), order_(order) {
    if (parties_ < 1 || dim_ < 2)
        throw Error("state needs at least one party and dimension >= 2");
    if (order_ < 1 || order_ % dim_ != 0)
        throw Error("state order must be a multiple of the dimension");
}

SparseState SparseState::ghz(int parties, int dim, long long order) {
    SparseState state(parties, dim, order);
    for (int n = 0; n < dim; ++n)
        state.set_amplitude(Basis(parties, n), CycScalar::one(order));
    return state;
}

void SparseState::set_amplitude(Basis basis, CycScalar amp) {
    if (static_cast<int>(basis.size()) != parties_)
        throw Error("basis label length does not match party count");
    for (int level : basis)
        if (level < 0 || level >= dim_)
            throw Error("basis level out of range");
    if (amp.order() != order_)
        throw Error("amplitude order does not match state order");
    if (amp.is_zero())
        throw Error("stored amplitudes must be nonzero");
    if (!terms_.emplace(std::move(basis), amp).second)
        throw Error("duplicate basis term");
}

SparseState apply_composite(std::span<const MonomialOp> ops, const SparseState& state) {
    if (static_cast<int>(ops.size()) != state.parties())
        throw Error("composite arity does not match party count");
    for (const MonomialOp& op : ops)
        if (op.dim() != state.dim() || op.order() != state.order())
            throw Error("composite factor does not match state dimension or order");

    SparseState out(state.parties(), state.dim(), state.order());
    for (const auto& [basis, amp] : state.terms()) {
        SparseState::Basis image(basis.size());
        CycScalar weight = amp;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            image[k] = ops[k].target(basis[k]);
            weight = weight * ops[k].weight(basis[k]);
        }
        out.set_amplitude(std::move(image), weight);
    }
    return out;
}

std::optional<CycScalar> eigenvalue_of(std::span<const MonomialOp> ops,
                                       const SparseState& state) {
    if (state.term_count() == 0)
        return std::nullopt;
    const SparseState image = apply_composite(ops, state);
    std::optional<CycScalar> ratio;
    for (const auto& [basis, amp] : image.terms()) {
        const auto it = state.terms().find(basis);
        if (it == state.terms().end())
            return std::nullopt;
        const CycScalar r = amp * it->second.conj();
        if (!ratio)
            ratio = r;
        else if (*ratio != r)
            return std::nullopt;
    }
    return ratio;
}

} // namespace ghzkit
