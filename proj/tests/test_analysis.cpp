#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzkit/analysis.hpp"

using namespace ghzkit;

namespace {

PhaseFrac f(long long num, long long den) { return PhaseFrac(num, den); }

const RemovalReport& find_removal(const std::vector<RemovalReport>& scan, int party,
                                  const PhaseFrac& setting) {
    for (const RemovalReport& r : scan)
        if (r.party == party && r.setting == setting)
            return r;
    throw std::runtime_error("removal not in scan");
}

std::vector<std::string> lone_labels(const RemovalReport& r) {
    std::vector<std::string> out;
    for (const VarKey& v : r.lone_variables)
        out.push_back(v.label());
    return out;
}

constexpr double kPi = 3.14159265358979323846;

// Reference value via the plain geometric sum the closed form compresses.
double overlap_direct(const OverlapQuery& q) {
    const double xi =
        (q.alpha_prime - q.alpha).value() + static_cast<double>(q.m - q.n);
    std::complex<double> sum = 0.0;
    for (int k = 0; k < q.dim; ++k) {
        const double angle = 2.0 * kPi * xi * k / q.dim;
        sum += std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return std::norm(sum / static_cast<double>(q.dim));
}

} // namespace

TEST_CASE("the frozen scan: every removal restores a classical model") {
    const ParadoxInstance inst = generate_tripartite(3, 1);
    const auto scan = irreducibility_scan(inst);
    CHECK(scan.size() == 8);
    CHECK(is_irreducible(scan));
    for (const RemovalReport& r : scan) {
        CHECK(r.solvable);
        REQUIRE(r.witness.has_value());
    }

    const RemovalReport& p1 = find_removal(scan, 1, f(1, 3));
    CHECK(p1.surviving_equations == std::vector<std::size_t>{0, 2, 3, 5});
    CHECK(lone_labels(p1) == std::vector<std::string>{"x[2,1/3]", "x[2,2/3]"});

    const RemovalReport& p3 = find_removal(scan, 3, f(1, 3));
    CHECK(p3.surviving_equations == std::vector<std::size_t>{0, 1, 2});
    CHECK(p3.lone_variables.size() == 6);
}

TEST_CASE("witnesses from the scan satisfy the surviving equations") {
    const ParadoxInstance inst = generate_tripartite(3, 1);
    const CongruenceSystem full = extract_system(inst);
    for (const RemovalReport& r : irreducibility_scan(inst)) {
        CongruenceSystem sub;
        sub.modulus = full.modulus;
        sub.variables = full.variables;
        for (const std::size_t e : r.surviving_equations) {
            sub.rows.push_back(full.rows[e]);
            sub.rhs.push_back(full.rhs[e]);
        }
        CHECK(satisfies(sub, *r.witness));
    }
}

TEST_CASE("the scan refuses instances that never were contradictory") {
    ParadoxInstance half = generate_tripartite(3, 1);
    half.composites.resize(3);
    half.party_settings[2] = {f(0, 1)};
    verify_instance(half);
    CHECK_THROWS_AS(irreducibility_scan(half), Error);
}

TEST_CASE("four settings split by the pair choice") {
    const ParadoxInstance near =
        generate_tripartite(4, 1, std::pair{f(0, 1), f(1, 4)});
    CHECK(is_irreducible(irreducibility_scan(near)));
    CHECK(has_proper_prime_reduction(near));
    CHECK_FALSE(is_irreducible(near));

    const ParadoxInstance far =
        generate_tripartite(4, 1, std::pair{f(0, 1), f(2, 4)});
    const auto scan = irreducibility_scan(far);
    CHECK_FALSE(is_irreducible(scan));
    CHECK_FALSE(is_irreducible(far));
    for (const RemovalReport& r : scan) {
        if (r.party == 3)
            CHECK(r.solvable);
        else
            CHECK_FALSE(r.solvable);
    }
}

TEST_CASE("only prime setting counts are irreducible") {
    CHECK(is_irreducible(generate_tripartite(3, 1)));
    CHECK(is_irreducible(generate_tripartite(3, 2)));
    CHECK(is_irreducible(generate_npartite(5, 1)));
    CHECK_FALSE(has_proper_prime_reduction(generate_tripartite(3, 1)));
    CHECK_FALSE(has_proper_prime_reduction(generate_npartite(5, 1)));

    const ParadoxInstance six = generate_tripartite(6, 1);
    CHECK(has_proper_prime_reduction(six));
    CHECK_FALSE(is_irreducible(six));
}

TEST_CASE("composite setting counts shrink to their prime factors") {
    const ParadoxInstance four = generate_tripartite(4, 1);
    const auto sub = prime_reduction(four, 2);
    REQUIRE(sub.has_value());
    CHECK(sub->settings == 2);
    CHECK(sub->dim == four.dim);
    CHECK(sub->dim_factor == 2);
    CHECK(sub->last_pair == std::pair{f(0, 1), f(1, 2)});
    for (const auto& list : sub->party_settings)
        for (const PhaseFrac& p : list)
            CHECK((p == f(0, 1) || p == f(1, 2)));
    CHECK(snf_solve(extract_system(*sub)).status == SolveStatus::Unsat);

    const ParadoxInstance six = generate_tripartite(6, 1);
    for (const int q : {2, 3}) {
        const auto reduced = prime_reduction(six, q);
        REQUIRE(reduced.has_value());
        CHECK(reduced->settings == q);
        CHECK(reduced->dim == 6);
        CHECK(snf_solve(extract_system(*reduced)).status == SolveStatus::Unsat);
    }
}

TEST_CASE("a kept pair survives the reduction when it fits the coarse grid") {
    const ParadoxInstance far =
        generate_tripartite(4, 1, std::pair{f(0, 1), f(2, 4)});
    const auto sub = prime_reduction(far, 2);
    REQUIRE(sub.has_value());
    CHECK(sub->last_pair == std::pair{f(0, 1), f(1, 2)});
}

TEST_CASE("reduction edge cases") {
    const ParadoxInstance tri = generate_tripartite(3, 1);
    CHECK_FALSE(prime_reduction(tri, 3).has_value());
    CHECK_THROWS_AS(prime_reduction(tri, 2), Error);
    CHECK_THROWS_AS(prime_reduction(generate_tripartite(4, 1), 4), Error);
    CHECK_THROWS_AS(prime_reduction(generate_npartite(9, 1), 3), Error);
    CHECK_FALSE(prime_reduction(generate_npartite(5, 1), 5).has_value());
}

TEST_CASE("dropping the fixed party keeps only its zero-phase composites") {
    const ParadoxInstance inst = generate_tripartite(3, 1);
    const PartyRemovalReport last = party_removal_check(inst, 3);
    CHECK(last.still_eigenstate ==
          std::vector<bool>{true, true, true, false, false, false});
    CHECK(last.no_common_eigenstate);

    const PartyRemovalReport first = party_removal_check(inst, 1);
    CHECK(first.still_eigenstate ==
          std::vector<bool>{true, false, false, true, false, false});
    CHECK(first.no_common_eigenstate);

    CHECK_THROWS_AS(party_removal_check(inst, 0), Error);
    CHECK_THROWS_AS(party_removal_check(inst, 4), Error);
}

TEST_CASE("all generated families are genuinely multipartite") {
    CHECK(genuine_in_parties(generate_tripartite(3, 1)));
    CHECK(genuine_in_parties(generate_tripartite(3, 2)));
    CHECK(genuine_in_parties(generate_npartite(5, 1)));
}

TEST_CASE("frozen overlap values") {
    CHECK(eigenvector_overlap({0, 0, f(0, 1), f(1, 3), 3}) ==
          doctest::Approx(0.7123858).epsilon(1e-6));
    CHECK(eigenvector_overlap({0, 1, f(0, 1), f(0, 1), 3}) == 0.0);
    CHECK(eigenvector_overlap({1, 0, f(0, 1), f(1, 1), 3}) == 1.0);
    CHECK(eigenvector_overlap({2, 2, f(1, 3), f(1, 3), 3}) == 1.0);
    CHECK_THROWS_AS(eigenvector_overlap({0, 3, f(0, 1), f(1, 3), 3}), Error);
    CHECK_THROWS_AS(eigenvector_overlap({0, 0, f(0, 1), f(1, 3), 1}), Error);
}

TEST_CASE("closed form agrees with the geometric sum") {
    for (const int dim : {3, 6, 9, 10}) {
        for (const auto& alpha : {f(0, 1), f(1, 3), f(1, 6)}) {
            for (const auto& alpha_prime : {f(0, 1), f(1, 3), f(5, 6)}) {
                for (int n = 0; n < dim; ++n)
                    for (int m = 0; m < dim; ++m) {
                        const OverlapQuery q{n, m, alpha, alpha_prime, dim};
                        CHECK(eigenvector_overlap(q) ==
                              doctest::Approx(overlap_direct(q)).epsilon(1e-10));
                    }
            }
        }
    }
}

TEST_CASE("each eigenbasis resolves the other: rows sum to one") {
    for (const int dim : {3, 5, 10}) {
        for (int n = 0; n < dim; ++n) {
            double sum = 0.0;
            for (int m = 0; m < dim; ++m)
                sum += eigenvector_overlap({n, m, f(0, 1), f(1, 3), dim});
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("overlap scan certifies the dimension") {
    const DimReport report = dimension_check(generate_tripartite(3, 1));
    CHECK(report.pass);
    CHECK(report.overlaps_checked == 63);
    CHECK(report.pairs.size() == 7);
    CHECK(report.min_overlap == doctest::Approx(0.0859242).epsilon(1e-4));
    const auto& first = report.pairs.front();
    CHECK(first.party == 1);
    CHECK(first.alpha == f(0, 1));
    CHECK(first.alpha_prime == f(1, 3));

    CHECK(dimension_check(generate_npartite(5, 1)).pass);
}

TEST_CASE("the overlap scan skips settings that share an eigenbasis") {
    ParadoxInstance inst;
    inst.parties = 3;
    inst.dim = 3;
    inst.party_settings = {{f(0, 1), f(1, 1)}, {f(1, 2), f(3, 2)}, {f(0, 1), f(1, 2)}};
    const DimReport report = dimension_check(inst);
    REQUIRE(report.pairs.size() == 1);
    CHECK(report.pairs.front().party == 3);
    CHECK(report.overlaps_checked == 9);
    CHECK(report.pass);

    ParadoxInstance lone;
    lone.parties = 3;
    lone.dim = 3;
    lone.party_settings = {{f(0, 1)}, {f(0, 1)}, {f(0, 1)}};
    const DimReport vacuous = dimension_check(lone);
    CHECK(vacuous.pass);
    CHECK(vacuous.overlaps_checked == 0);
    CHECK(vacuous.pairs.empty());
    CHECK(vacuous.min_overlap == 1.0);
}
