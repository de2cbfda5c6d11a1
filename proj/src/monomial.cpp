#include "ghzkit/monomial.hpp"

#include <algorithm>

namespace ghzkit {

MonomialOp::MonomialOp(std::vector<int> target, std::vector<CycScalar> weight)
    : target_(std::move(target)), weight_(std::move(weight)) {
    const int d = static_cast<int>(target_.size());
    if (d == 0 || weight_.size() != target_.size())
        throw Error("monomial operator needs one target and one weight per column");
    std::vector<char> seen(d, 0);
    for (int c = 0; c < d; ++c) {
        const int r = target_[c];
        if (r < 0 || r >= d)
            throw Error("monomial target row out of range");
        if (seen[r])
            throw Error("monomial operator maps two columns to row " + std::to_string(r));
        seen[r] = 1;
        if (weight_[c].is_zero())
            throw Error("monomial weights must be nonzero");
        if (weight_[c].order() != weight_.front().order())
            throw Error("monomial weights must share one order");
    }
}

MonomialOp MonomialOp::identity(int dim, long long order) {
    std::vector<int> target(dim);
    std::vector<CycScalar> weight(dim, CycScalar::one(order));
    for (int c = 0; c < dim; ++c)
        target[c] = c;
    return MonomialOp(std::move(target), std::move(weight));
}

MonomialOp MonomialOp::shift(int dim, long long order) {
    std::vector<int> target(dim);
    std::vector<CycScalar> weight(dim, CycScalar::one(order));
    for (int c = 0; c < dim; ++c)
        target[c] = (c + dim - 1) % dim;
    return MonomialOp(std::move(target), std::move(weight));
}

MonomialOp MonomialOp::compose(const MonomialOp& rhs) const {
    if (dim() != rhs.dim())
        throw Error("composing operators of different dimension");
    const int d = dim();
    std::vector<int> target(d);
    std::vector<CycScalar> weight;
    weight.reserve(d);
    for (int c = 0; c < d; ++c) {
        const int mid = rhs.target_[c];
        target[c] = target_[mid];
        weight.push_back(weight_[mid] * rhs.weight_[c]);
    }
    return MonomialOp(std::move(target), std::move(weight));
}

MonomialOp MonomialOp::adjoint() const {
    const int d = dim();
    std::vector<int> target(d);
    std::vector<CycScalar> weight(d, CycScalar::one(order()));
    for (int c = 0; c < d; ++c) {
        target[target_[c]] = c;
        weight[target_[c]] = weight_[c].conj();
    }
    return MonomialOp(std::move(target), std::move(weight));
}

bool MonomialOp::is_identity() const {
    const CycScalar unit = CycScalar::one(order());
    for (int c = 0; c < dim(); ++c)
        if (target_[c] != c || weight_[c] != unit)
            return false;
    return true;
}

std::optional<CycScalar> proportionality(const MonomialOp& a, const MonomialOp& b) {
    if (a.dim() != b.dim() || a.order() != b.order())
        return std::nullopt;
    std::optional<CycScalar> ratio;
    for (int c = 0; c < a.dim(); ++c) {
        if (a.target(c) != b.target(c))
            return std::nullopt;
        const CycScalar r = a.weight(c) * b.weight(c).conj();
        if (!ratio)
            ratio = r;
        else if (*ratio != r)
            return std::nullopt;
    }
    return ratio;
}

std::optional<CycScalar> commutation_ratio(const MonomialOp& a, const MonomialOp& b) {
    return proportionality(a.compose(b), b.compose(a));
}

MonomialOp build_local_observable(const PhaseFrac& alpha, int dim, long long order) {
    if (dim < 2)
        throw Error("local observables need dimension >= 2");
    std::vector<int> target(dim);
    std::vector<CycScalar> weight;
    weight.reserve(dim);
    // Column n >= 1 lowers with weight omega^{-alpha}; the wrap column picks
    // up the extra omega^{alpha*dim} that fixes the spectrum to {omega^k}.
    for (int c = 0; c < dim; ++c) {
        target[c] = (c + dim - 1) % dim;
        weight.push_back(phase_scalar(alpha, c == 0 ? dim - 1 : -1, dim, order));
    }
    return MonomialOp(std::move(target), std::move(weight));
}

} // namespace ghzkit
