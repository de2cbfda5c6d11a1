#include "ghzkit/paradox.hpp"

#include <algorithm>
#include <set>

namespace ghzkit {

namespace {

std::pair<PhaseFrac, PhaseFrac> resolve_pair(
    const std::optional<std::pair<PhaseFrac, PhaseFrac>>& pair, int settings) {
    std::pair<PhaseFrac, PhaseFrac> p =
        pair.value_or(std::pair{PhaseFrac(0, 1), PhaseFrac(1, settings)});
    p.first = p.first.canonical();
    p.second = p.second.canonical();
    if (p.first == p.second)
        throw Error("the two fixed-party phases must differ mod 1");
    for (const PhaseFrac& f : {p.first, p.second})
        if (!f.on_grid(settings))
            throw Error("fixed-party phase " + f.str() + " is not on the 1/" +
                        std::to_string(settings) + " grid");
    return p;
}

void sort_block(std::vector<Composite>& block) {
    std::stable_sort(block.begin(), block.end(),
                     [](const Composite& x, const Composite& y) {
                         return x.phases.front() < y.phases.front();
                     });
}

std::vector<std::vector<PhaseFrac>> collect_settings(
    const std::vector<Composite>& composites, int parties) {
    std::vector<std::set<PhaseFrac>> used(parties);
    for (const Composite& c : composites)
        for (int k = 0; k < parties; ++k)
            used[k].insert(c.phases[k]);
    std::vector<std::vector<PhaseFrac>> lists(parties);
    for (int k = 0; k < parties; ++k)
        lists[k].assign(used[k].begin(), used[k].end());
    return lists;
}

Composite make_composite(std::vector<PhaseFrac> phases, char family, int r) {
    Composite c;
    c.phases = std::move(phases);
    c.family = family;
    c.r = r;
    const auto gamma = invariance_gamma(c.phases);
    if (!gamma)
        throw Error("generated composite misses the integer phase sum");
    c.gamma = *gamma;
    return c;
}

} // namespace

std::optional<int> invariance_gamma(const std::vector<PhaseFrac>& phases) {
    PhaseFrac sum(0, 1);
    for (const PhaseFrac& p : phases)
        sum = sum + p;
    if (!sum.is_integer())
        return std::nullopt;
    return static_cast<int>(sum.num());
}

std::vector<MonomialOp> composite_operators(const ParadoxInstance& inst,
                                            const Composite& comp) {
    std::vector<MonomialOp> ops;
    ops.reserve(comp.phases.size());
    for (const PhaseFrac& p : comp.phases)
        ops.push_back(build_local_observable(p, inst.dim, inst.order));
    return ops;
}

ParadoxInstance generate_tripartite(
    int settings, int dim_factor, std::optional<std::pair<PhaseFrac, PhaseFrac>> pair) {
    if (settings < 2)
        throw Error("tripartite construction needs at least two settings");
    if (dim_factor < 1)
        throw Error("dimension factor must be positive");

    ParadoxInstance inst;
    inst.parties = 3;
    inst.settings = settings;
    inst.dim_factor = dim_factor;
    inst.dim = settings * dim_factor;
    inst.order = static_cast<long long>(inst.dim) * settings;
    inst.last_pair = resolve_pair(pair, settings);
    inst.generator = "tripartite";

    for (const char family : {'A', 'B'}) {
        const PhaseFrac last =
            family == 'A' ? inst.last_pair.first : inst.last_pair.second;
        std::vector<Composite> block;
        for (int r = 1; r <= settings; ++r) {
            const PhaseFrac p1 = PhaseFrac(r, settings).canonical();
            const PhaseFrac p2 = (-p1 - last).canonical();
            block.push_back(make_composite({p1, p2, last}, family, r));
        }
        sort_block(block);
        inst.composites.insert(inst.composites.end(), block.begin(), block.end());
    }
    inst.party_settings = collect_settings(inst.composites, inst.parties);
    verify_instance(inst);
    return inst;
}

ParadoxInstance generate_npartite(
    int parties, int dim_factor, std::optional<std::pair<PhaseFrac, PhaseFrac>> pair) {
    if (parties < 3)
        throw Error("need at least three parties");
    if (parties % 2 == 0)
        throw Error("even party counts make the phase 2r+1 mod n collide; "
                    "use an odd party count");
    if (dim_factor < 1)
        throw Error("dimension factor must be positive");

    const int n = parties;
    ParadoxInstance inst;
    inst.parties = n;
    inst.settings = n;
    inst.dim_factor = dim_factor;
    inst.dim = n * dim_factor;
    inst.order = static_cast<long long>(inst.dim) * n;
    inst.last_pair = resolve_pair(pair, n);
    inst.generator = "npartite";

    inst.t_sequence.reserve(n);
    for (int r = 1; r <= n; ++r)
        inst.t_sequence.push_back((2 * r + 1) % n);

    for (const char family : {'A', 'B'}) {
        const PhaseFrac last =
            family == 'A' ? inst.last_pair.first : inst.last_pair.second;
        std::vector<Composite> block;
        for (int r = 1; r <= n; ++r) {
            const int t = inst.t_sequence[r - 1];
            std::vector<PhaseFrac> phases;
            phases.reserve(n);
            for (int k = 1; k <= n - 2; ++k)
                phases.push_back(PhaseFrac(((r - k) % n + n) % n, n));
            if (family == 'A')
                phases.push_back((PhaseFrac(t, n) - last).canonical());
            else
                phases.push_back(
                    (PhaseFrac((t + n - 1) % n, n) + PhaseFrac(1, n) - last).canonical());
            phases.push_back(last);
            block.push_back(make_composite(std::move(phases), family, r));
        }
        sort_block(block);
        inst.composites.insert(inst.composites.end(), block.begin(), block.end());
    }
    inst.party_settings = collect_settings(inst.composites, inst.parties);
    verify_instance(inst);
    return inst;
}

void verify_instance(const ParadoxInstance& inst) {
    if (inst.parties < 2)
        throw Error("instance needs at least two parties");
    if (inst.dim < 2)
        throw Error("instance dimension must be at least 2");
    if (inst.order < inst.dim || inst.order % inst.dim != 0)
        throw Error("instance order must be a positive multiple of the dimension");
    if (static_cast<int>(inst.party_settings.size()) != inst.parties)
        throw Error("instance needs one setting list per party");
    if (inst.composites.empty())
        throw Error("instance has no composites");

    for (const auto& list : inst.party_settings) {
        if (list.empty())
            throw Error("every party needs at least one setting");
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (!list[i].is_canonical())
                throw Error("setting " + list[i].str() + " is not canonical");
            if (i > 0 && !(list[i - 1] < list[i]))
                throw Error("setting lists must be strictly ascending");
        }
    }

    const SparseState ghz = SparseState::ghz(inst.parties, inst.dim, inst.order);
    for (const Composite& comp : inst.composites) {
        if (static_cast<int>(comp.phases.size()) != inst.parties)
            throw Error("composite arity does not match party count");
        for (int k = 0; k < inst.parties; ++k) {
            const auto& list = inst.party_settings[k];
            if (!std::binary_search(list.begin(), list.end(), comp.phases[k]))
                throw Error("composite uses phase " + comp.phases[k].str() +
                            " missing from party " + std::to_string(k + 1) +
                            "'s setting list");
        }
        const auto gamma = invariance_gamma(comp.phases);
        if (!gamma || *gamma != comp.gamma)
            throw Error("stored gamma disagrees with the phase sum");
        const auto ops = composite_operators(inst, comp);
        const auto ev = eigenvalue_of(ops, ghz);
        const CycScalar expected =
            CycScalar::root(inst.order, -comp.gamma * (inst.order / inst.dim));
        if (!ev || *ev != expected)
            throw Error("composite is not an eigenoperator with the stored gamma");
    }
}

ConcurrencyReport verify_concurrency(const ParadoxInstance& inst) {
    ConcurrencyReport report;
    const SparseState ghz = SparseState::ghz(inst.parties, inst.dim, inst.order);

    std::vector<std::vector<MonomialOp>> ops;
    ops.reserve(inst.composites.size());
    report.common_eigenstate = true;
    for (const Composite& comp : inst.composites) {
        ops.push_back(composite_operators(inst, comp));
        const auto ev = eigenvalue_of(ops.back(), ghz);
        const CycScalar expected =
            CycScalar::root(inst.order, -comp.gamma * (inst.order / inst.dim));
        const bool ok = ev && *ev == expected;
        report.eigenstate.push_back(ok);
        report.common_eigenstate = report.common_eigenstate && ok;
    }

    for (std::size_t i = 0; i < ops.size() && report.all_commute; ++i)
        for (std::size_t j = i + 1; j < ops.size(); ++j)
            if (!composites_commute(ops[i], ops[j])) {
                report.all_commute = false;
                report.noncommuting_pair = {i, j};
                break;
            }
    return report;
}

bool composites_commute(const std::vector<MonomialOp>& a,
                        const std::vector<MonomialOp>& b) {
    if (a.size() != b.size())
        throw Error("comparing composites of different arity");
    CycScalar product = CycScalar::one(a.front().order());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const auto ratio = commutation_ratio(a[k], b[k]);
        if (!ratio)
            return false;
        product = product * *ratio;
    }
    return product == CycScalar::one(product.order());
}

} // namespace ghzkit
