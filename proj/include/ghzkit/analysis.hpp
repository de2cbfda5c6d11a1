#pragma once

#include "ghzkit/congruence.hpp"

namespace ghzkit {

/// Effect of deleting one (party, setting) and every composite that uses it.
struct RemovalReport {
    int party = 0;
    PhaseFrac setting;
    std::vector<std::size_t> surviving_equations; // indices into the full system
    bool solvable = false;
    std::optional<std::vector<long long>> witness;
    std::vector<VarKey> lone_variables; // appear in exactly one surviving equation
};

/// One report per (party, setting).  The instance must itself be
/// unsolvable; the scan then shows whether every single-setting deletion
/// already restores a classical model.
std::vector<RemovalReport> irreducibility_scan(const ParadoxInstance& inst);

/// True when every removal in the scan is solvable.
bool is_irreducible(const std::vector<RemovalReport>& scan);

/// True when some proper prime divisor of the setting count still carries
/// the contradiction on the unchanged dimension (see prime_reduction).
/// Always false for a prime setting count and beyond three parties.
bool has_proper_prime_reduction(const ParadoxInstance& inst);

/// Instance-level verdict: every single-setting removal restores a
/// classical model AND no proper prime subset of the settings still
/// contradicts.  A composite setting count therefore never counts as
/// irreducible even though its single-setting removals are all solvable.
bool is_irreducible(const ParadoxInstance& inst);

/// The same construction shrunk to a prime divisor q of the setting count,
/// on the unchanged dimension.  nullopt when q equals the setting count
/// (nothing shrinks).  The result keeps the fixed-party pair when both of
/// its phases live on the coarser 1/q grid and falls back to {0, 1/q}
/// otherwise.
std::optional<ParadoxInstance> prime_reduction(const ParadoxInstance& inst, int q);

/// What survives when one party is traced out: per composite, whether the
/// remaining parties' operator still fixes the shared state.
struct PartyRemovalReport {
    int party = 0;
    std::vector<bool> still_eigenstate;
    bool no_common_eigenstate = false;
};

PartyRemovalReport party_removal_check(const ParadoxInstance& inst, int party);

/// True when dropping any single party breaks at least one composite,
/// so the contradiction needs all of them.
bool genuine_in_parties(const ParadoxInstance& inst);

struct OverlapQuery {
    int n = 0;
    int m = 0;
    PhaseFrac alpha;
    PhaseFrac alpha_prime;
    int dim = 2;
};

/// Squared overlap of eigenvector n of the phase-alpha observable with
/// eigenvector m of the phase-alpha' one:
///   sin^2(pi*xi) / (dim^2 sin^2(pi*xi/dim)),  xi = m - n + alpha' - alpha,
/// with the integer cases of xi decided exactly (1 at xi = 0 mod dim,
/// else 0).
double eigenvector_overlap(const OverlapQuery& query);

struct PhasePairOverlap {
    int party = 0;
    PhaseFrac alpha;
    PhaseFrac alpha_prime;
    double min_overlap = 0.0;
};

struct DimReport {
    bool pass = false;
    double min_overlap = 0.0;
    std::size_t overlaps_checked = 0;
    std::vector<PhasePairOverlap> pairs;
};

/// Every eigenvector pair across every distinct setting pair of every party
/// must overlap: the observables then have no shared eigenspace on any
/// subsystem, so the construction cannot collapse to fewer dimensions.
/// Setting pairs whose phases differ by an integer share an eigenbasis and
/// prove nothing, so they are skipped; with no pairs left the check passes
/// vacuously.
DimReport dimension_check(const ParadoxInstance& inst);

} // namespace ghzkit
