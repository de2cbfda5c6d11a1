#include "ghzkit/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace ghzkit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kOverlapFloor = 1e-12;
constexpr std::uint64_t kCrossCheckCap = 1'000'000;

CongruenceSystem subsystem(const CongruenceSystem& full,
                           const std::vector<std::size_t>& equations) {
    CongruenceSystem sub;
    sub.modulus = full.modulus;
    sub.variables = full.variables;
    for (const std::size_t e : equations) {
        sub.rows.push_back(full.rows[e]);
        sub.rhs.push_back(full.rhs[e]);
    }
    return sub;
}

bool is_prime(int q) {
    if (q < 2)
        return false;
    for (int f = 2; f * f <= q; ++f)
        if (q % f == 0)
            return false;
    return true;
}

} // namespace

std::vector<RemovalReport> irreducibility_scan(const ParadoxInstance& inst) {
    const CongruenceSystem full = extract_system(inst);
    if (snf_solve(full).status == SolveStatus::Sat)
        throw Error("the full system already has a classical model; "
                    "single-setting removals prove nothing");

    std::vector<RemovalReport> scan;
    for (int k = 1; k <= inst.parties; ++k) {
        for (const PhaseFrac& setting : inst.party_settings[k - 1]) {
            RemovalReport report;
            report.party = k;
            report.setting = setting;
            for (std::size_t e = 0; e < inst.composites.size(); ++e)
                if (inst.composites[e].phases[k - 1] != setting)
                    report.surviving_equations.push_back(e);

            const CongruenceSystem sub = subsystem(full, report.surviving_equations);
            const SolveResult exact = snf_solve(sub);
            report.solvable = exact.status == SolveStatus::Sat;
            report.witness = exact.witness;

            const SolveResult brute = brute_force_solve(sub, kCrossCheckCap);
            if (brute.status != SolveStatus::TooLarge &&
                (brute.status == SolveStatus::Sat) != report.solvable)
                throw Error("internal: solvers disagree on a removal subsystem");

            std::vector<int> uses(full.variables.size(), 0);
            for (const std::size_t e : report.surviving_equations)
                for (std::size_t j = 0; j < full.variables.size(); ++j)
                    if (full.rows[e][j] % full.modulus != 0)
                        ++uses[j];
            for (std::size_t j = 0; j < full.variables.size(); ++j)
                if (uses[j] == 1)
                    report.lone_variables.push_back(full.variables[j]);

            scan.push_back(std::move(report));
        }
    }
    return scan;
}

bool is_irreducible(const std::vector<RemovalReport>& scan) {
    return std::all_of(scan.begin(), scan.end(),
                       [](const RemovalReport& r) { return r.solvable; });
}

bool has_proper_prime_reduction(const ParadoxInstance& inst) {
    if (inst.parties != 3)
        return false;
    for (int q = 2; q < inst.settings; ++q)
        if (is_prime(q) && inst.settings % q == 0 && prime_reduction(inst, q))
            return true;
    return false;
}

bool is_irreducible(const ParadoxInstance& inst) {
    return is_irreducible(irreducibility_scan(inst)) &&
           !has_proper_prime_reduction(inst);
}

std::optional<ParadoxInstance> prime_reduction(const ParadoxInstance& inst, int q) {
    if (!is_prime(q))
        throw Error(std::to_string(q) + " is not prime");
    if (inst.settings % q != 0)
        throw Error(std::to_string(q) + " does not divide the setting count " +
                    std::to_string(inst.settings));
    if (q == inst.settings)
        return std::nullopt;
    if (inst.parties != 3)
        throw Error("only the three-party family shrinks to a proper divisor; "
                    "with more parties the setting count is tied to the party count");

    std::optional<std::pair<PhaseFrac, PhaseFrac>> pair;
    if (inst.last_pair.first.on_grid(q) && inst.last_pair.second.on_grid(q))
        pair = inst.last_pair;
    ParadoxInstance sub = generate_tripartite(q, inst.dim / q, pair);
    if (snf_solve(extract_system(sub)).status == SolveStatus::Sat)
        throw Error("internal: reduced construction lost the contradiction");
    return sub;
}

PartyRemovalReport party_removal_check(const ParadoxInstance& inst, int party) {
    if (party < 1 || party > inst.parties)
        throw Error("party index out of range");
    if (inst.parties < 3)
        throw Error("party removal needs at least three parties");

    PartyRemovalReport report;
    report.party = party;
    const SparseState reduced =
        SparseState::ghz(inst.parties - 1, inst.dim, inst.order);
    for (const Composite& comp : inst.composites) {
        std::vector<MonomialOp> ops;
        ops.reserve(comp.phases.size() - 1);
        for (int k = 0; k < inst.parties; ++k)
            if (k != party - 1)
                ops.push_back(build_local_observable(comp.phases[k], inst.dim, inst.order));
        const bool eigen = eigenvalue_of(ops, reduced).has_value();
        report.still_eigenstate.push_back(eigen);
        if (!eigen)
            report.no_common_eigenstate = true;
    }
    return report;
}

bool genuine_in_parties(const ParadoxInstance& inst) {
    for (int k = 1; k <= inst.parties; ++k)
        if (!party_removal_check(inst, k).no_common_eigenstate)
            return false;
    return true;
}

double eigenvector_overlap(const OverlapQuery& query) {
    if (query.dim < 2)
        throw Error("overlap needs dimension >= 2");
    if (query.n < 0 || query.n >= query.dim || query.m < 0 || query.m >= query.dim)
        throw Error("eigenvector index out of range");

    const PhaseFrac xi =
        PhaseFrac(query.m - query.n, 1) + query.alpha_prime - query.alpha;
    if (xi.is_integer()) {
        const long long r = xi.num() % query.dim;
        return r == 0 ? 1.0 : 0.0;
    }
    const double x = xi.value();
    const double num = std::sin(kPi * x);
    const double den = static_cast<double>(query.dim) * std::sin(kPi * x / query.dim);
    return (num * num) / (den * den);
}

DimReport dimension_check(const ParadoxInstance& inst) {
    DimReport report;
    report.min_overlap = 1.0;
    for (int k = 1; k <= inst.parties; ++k) {
        const auto& settings = inst.party_settings[k - 1];
        for (std::size_t i = 0; i < settings.size(); ++i)
            for (std::size_t j = i + 1; j < settings.size(); ++j) {
                if (settings[i].equivalent(settings[j]))
                    continue;
                PhasePairOverlap pair;
                pair.party = k;
                pair.alpha = settings[i];
                pair.alpha_prime = settings[j];
                pair.min_overlap = 1.0;
                for (int n = 0; n < inst.dim; ++n)
                    for (int m = 0; m < inst.dim; ++m) {
                        const double value = eigenvector_overlap(
                            {n, m, pair.alpha, pair.alpha_prime, inst.dim});
                        pair.min_overlap = std::min(pair.min_overlap, value);
                        ++report.overlaps_checked;
                    }
                report.min_overlap = std::min(report.min_overlap, pair.min_overlap);
                report.pairs.push_back(std::move(pair));
            }
    }
    report.pass = report.min_overlap > kOverlapFloor;
    return report;
}

} // namespace ghzkit
