#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghzkit/paradox.hpp"

namespace ghzkit {

/// One outcome variable of a hidden-variable model: the value a fixed party
/// would report for a fixed setting.  Settings are canonical fraction
/// strings for generated instances and free labels for imported systems.
struct VarKey {
    int party = 0; // 1-based
    std::string setting;

    bool operator==(const VarKey&) const = default;
    std::string label() const;
};

/// Linear system over Z_modulus: rows * x = rhs (mod modulus), one column
/// per entry of `variables`.
struct CongruenceSystem {
    long long modulus = 2;
    std::vector<VarKey> variables;
    std::vector<std::vector<long long>> rows;
    std::vector<long long> rhs;

    std::size_t var_count() const { return variables.size(); }
    std::size_t equation_count() const { return rows.size(); }
};

/// One congruence per composite: the party outcomes must add up to -gamma
/// mod dim.  Variables are ordered by party, then by setting phase.
CongruenceSystem extract_system(const ParadoxInstance& inst);

enum class SolveStatus { Sat, Unsat, TooLarge };

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    std::optional<std::vector<long long>> witness; // aligned with variables
    std::uint64_t space = 0; // modulus^vars when a search ran, 0 otherwise
};

/// Exhaustive search, pruned by completing each equation as soon as its last
/// free variable is chosen.  Values are tried in ascending order, so a Sat
/// result carries the lexicographically smallest witness.  Returns TooLarge
/// without searching when modulus^vars exceeds cap.
SolveResult brute_force_solve(const CongruenceSystem& sys, std::uint64_t cap);

inline constexpr std::uint64_t kDefaultBruteCap = 10'000'000;

/// U * A * V = S with U, V unimodular and S diagonal, each diagonal entry
/// dividing the next.
struct SmithDecomposition {
    std::vector<std::vector<long long>> u, s, v;
    int rank = 0;
};

SmithDecomposition smith_normal_form(std::vector<std::vector<long long>> a);

/// Exact decision via the Smith form of the coefficient matrix: with
/// UAV = S the system is solvable mod m iff every transformed right side
/// (U*rhs)_i is divisible by gcd(s_i, m), rows past the rank included.
/// A Sat result carries a verified witness.
SolveResult snf_solve(const CongruenceSystem& sys);

/// Validity check used by both solvers and the tests.
bool satisfies(const CongruenceSystem& sys, const std::vector<long long>& assignment);

/// Solvability of coefficient * xi = eta (mod modulus) in one unknown,
/// with the smallest nonnegative solution when one exists.
struct LrCondition {
    long long coefficient = 1;
    long long eta = 0;
    long long modulus = 2;
    bool solvable = false;
    std::optional<long long> witness_xi;
};

LrCondition solve_lr(long long coefficient, long long eta, long long modulus);

/// The aggregate single-unknown relation an instance forces on any
/// hidden-variable model: settings * xi = eta (mod dim), where eta collects
/// the gamma gap between the two composite families.
LrCondition lr_congruence(const ParadoxInstance& inst);

/// Four-equation two-outcome system with no solution, the classic
/// three-qubit all-versus-nothing argument in congruence form.
CongruenceSystem mermin_system();

/// Plain-text exchange format, one equation per line:
///   x[1,0/1] + x[2,1/3] + x[3,1/3] = 2 (mod 3)
CongruenceSystem parse_system_text(const std::string& text);
std::string system_to_text(const CongruenceSystem& sys);

} // namespace ghzkit
