#pragma once

#include <optional>
#include <utility>

#include "ghzkit/state.hpp"

namespace ghzkit {

/// One product observable: a measurement phase per party plus the integer
/// gamma with phase sum equal to gamma, so the shared state is an
/// eigenvector with eigenvalue omega^{-gamma}.
struct Composite {
    std::vector<PhaseFrac> phases;
    int gamma = 0;
    char family = 'A'; // 'A' or 'B': which of the two last-party phases it uses
    int r = 0;         // generator row index, 1-based
};

/// A full verification target: dimensions, per-party setting lists and the
/// composite set.  dim = settings * dim_factor for three parties,
/// parties * dim_factor otherwise; order = dim * settings.
struct ParadoxInstance {
    int parties = 3;
    int settings = 3;
    int dim_factor = 1;
    int dim = 3;
    long long order = 9;
    std::pair<PhaseFrac, PhaseFrac> last_pair;
    std::vector<std::vector<PhaseFrac>> party_settings; // canonical, ascending
    std::vector<Composite> composites;                  // family A block then B
    std::vector<int> t_sequence;                        // odd-party construction only
    std::string generator;                              // "tripartite" or "npartite"
};

/// Sum of the phases when it is an integer, nullopt otherwise.  An integer
/// sum is exactly the eigenvector condition for the shared state.
std::optional<int> invariance_gamma(const std::vector<PhaseFrac>& phases);

/// Local observables of one composite, in party order.
std::vector<MonomialOp> composite_operators(const ParadoxInstance& inst,
                                            const Composite& comp);

/// Three parties, `settings` >= 2 phases r/settings for each of the first
/// two, and the two phases of `pair` for the third.  Every generated
/// composite satisfies the integer-sum condition by construction.
ParadoxInstance generate_tripartite(
    int settings, int dim_factor,
    std::optional<std::pair<PhaseFrac, PhaseFrac>> pair = std::nullopt);

/// Odd party count n >= 3, n settings per free party.  Party n-1 absorbs
/// the phase 2r+1 mod n (shifted by one in family B), which visits every
/// residue exactly once precisely because n is odd.
ParadoxInstance generate_npartite(
    int parties, int dim_factor,
    std::optional<std::pair<PhaseFrac, PhaseFrac>> pair = std::nullopt);

/// Recheck every stored invariant of a built or loaded instance: parameter
/// consistency, canonical setting lists, and for each composite the integer
/// phase sum and the eigenvalue omega^{-gamma} along the operator path.
void verify_instance(const ParadoxInstance& inst);

struct ConcurrencyReport {
    std::vector<bool> eigenstate;        // per composite
    bool common_eigenstate = false;
    bool all_commute = true;
    std::optional<std::pair<std::size_t, std::size_t>> noncommuting_pair;
};

/// Check both halves of concurrency: every composite fixes the shared state,
/// and at least one pair of composites fails to commute.
ConcurrencyReport verify_concurrency(const ParadoxInstance& inst);

/// True when a.compose(b) and b.compose(a) agree factor by factor up to
/// scalars whose product is one.
bool composites_commute(const std::vector<MonomialOp>& a,
                        const std::vector<MonomialOp>& b);

} // namespace ghzkit
