#include "doctest.h"

#include <vector>

#include "ghzkit/paradox.hpp"

using namespace ghzkit;

namespace {

PhaseFrac f(long long num, long long den) { return PhaseFrac(num, den); }

struct Row {
    char family;
    std::vector<PhaseFrac> phases;
    int gamma;
};

void check_rows(const ParadoxInstance& inst, const std::vector<Row>& rows) {
    REQUIRE(inst.composites.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CAPTURE(i);
        CHECK(inst.composites[i].family == rows[i].family);
        CHECK(inst.composites[i].phases == rows[i].phases);
        CHECK(inst.composites[i].gamma == rows[i].gamma);
    }
}

} // namespace

TEST_CASE("integer phase sums produce gamma, others nothing") {
    CHECK(invariance_gamma({f(0, 1), f(0, 1), f(0, 1)}) == 0);
    CHECK(invariance_gamma({f(1, 3), f(2, 3), f(0, 1)}) == 1);
    CHECK(invariance_gamma({f(2, 3), f(2, 3), f(2, 3)}) == 2);
    CHECK_FALSE(invariance_gamma({f(1, 3), f(1, 3), f(0, 1)}).has_value());
}

TEST_CASE("three qutrits with three settings give the frozen table") {
    const ParadoxInstance inst = generate_tripartite(3, 1);
    CHECK(inst.parties == 3);
    CHECK(inst.settings == 3);
    CHECK(inst.dim == 3);
    CHECK(inst.order == 9);
    CHECK(inst.generator == "tripartite");
    CHECK(inst.last_pair.first == f(0, 1));
    CHECK(inst.last_pair.second == f(1, 3));

    check_rows(inst, {
        {'A', {f(0, 1), f(0, 1), f(0, 1)}, 0},
        {'A', {f(1, 3), f(2, 3), f(0, 1)}, 1},
        {'A', {f(2, 3), f(1, 3), f(0, 1)}, 1},
        {'B', {f(0, 1), f(2, 3), f(1, 3)}, 1},
        {'B', {f(1, 3), f(1, 3), f(1, 3)}, 1},
        {'B', {f(2, 3), f(0, 1), f(1, 3)}, 1},
    });

    const std::vector<PhaseFrac> grid{f(0, 1), f(1, 3), f(2, 3)};
    CHECK(inst.party_settings[0] == grid);
    CHECK(inst.party_settings[1] == grid);
    CHECK(inst.party_settings[2] == std::vector<PhaseFrac>{f(0, 1), f(1, 3)});
}

TEST_CASE("two settings on two-level factors") {
    const ParadoxInstance inst = generate_tripartite(2, 2);
    CHECK(inst.dim == 4);
    CHECK(inst.order == 8);
    check_rows(inst, {
        {'A', {f(0, 1), f(0, 1), f(0, 1)}, 0},
        {'A', {f(1, 2), f(1, 2), f(0, 1)}, 1},
        {'B', {f(0, 1), f(1, 2), f(1, 2)}, 1},
        {'B', {f(1, 2), f(0, 1), f(1, 2)}, 1},
    });
}

TEST_CASE("a custom fixed-party pair shifts the second family") {
    const ParadoxInstance inst =
        generate_tripartite(4, 1, std::pair{f(0, 1), f(2, 4)});
    CHECK(inst.dim == 4);
    CHECK(inst.last_pair.second == f(1, 2));
    CHECK(inst.composites.size() == 8);
    CHECK(inst.party_settings[2] == std::vector<PhaseFrac>{f(0, 1), f(1, 2)});
    for (const Composite& comp : inst.composites)
        CHECK(invariance_gamma(comp.phases) == comp.gamma);
}

TEST_CASE("generator rejects degenerate inputs") {
    CHECK_THROWS_AS(generate_tripartite(1, 1), Error);
    CHECK_THROWS_AS(generate_tripartite(3, 0), Error);
    CHECK_THROWS_AS(generate_tripartite(3, 1, std::pair{f(0, 1), f(0, 1)}), Error);
    CHECK_THROWS_AS(generate_tripartite(3, 1, std::pair{f(0, 1), f(1, 4)}), Error);
    CHECK(generate_tripartite(3, 1, std::pair{f(0, 1), f(4, 3)}).last_pair.second ==
          f(1, 3));
    CHECK_THROWS_AS(generate_npartite(4, 1), Error);
    CHECK_THROWS_AS(generate_npartite(2, 1), Error);
}

TEST_CASE("five parties reproduce the frozen table") {
    const ParadoxInstance inst = generate_npartite(5, 1);
    CHECK(inst.parties == 5);
    CHECK(inst.settings == 5);
    CHECK(inst.dim == 5);
    CHECK(inst.order == 25);
    CHECK(inst.t_sequence == std::vector<int>{3, 0, 2, 4, 1});

    check_rows(inst, {
        {'A', {f(0, 1), f(4, 5), f(3, 5), f(3, 5), f(0, 1)}, 2},
        {'A', {f(1, 5), f(0, 1), f(4, 5), f(0, 1), f(0, 1)}, 1},
        {'A', {f(2, 5), f(1, 5), f(0, 1), f(2, 5), f(0, 1)}, 1},
        {'A', {f(3, 5), f(2, 5), f(1, 5), f(4, 5), f(0, 1)}, 2},
        {'A', {f(4, 5), f(3, 5), f(2, 5), f(1, 5), f(0, 1)}, 2},
        {'B', {f(0, 1), f(4, 5), f(3, 5), f(2, 5), f(1, 5)}, 2},
        {'B', {f(1, 5), f(0, 1), f(4, 5), f(4, 5), f(1, 5)}, 2},
        {'B', {f(2, 5), f(1, 5), f(0, 1), f(1, 5), f(1, 5)}, 1},
        {'B', {f(3, 5), f(2, 5), f(1, 5), f(3, 5), f(1, 5)}, 2},
        {'B', {f(4, 5), f(3, 5), f(2, 5), f(0, 1), f(1, 5)}, 2},
    });
}

TEST_CASE("three parties agree between the two generators") {
    for (const int d : {1, 2, 3}) {
        const ParadoxInstance tri = generate_tripartite(3, d);
        const ParadoxInstance odd = generate_npartite(3, d);
        REQUIRE(tri.composites.size() == odd.composites.size());
        for (std::size_t i = 0; i < tri.composites.size(); ++i) {
            CHECK(tri.composites[i].phases == odd.composites[i].phases);
            CHECK(tri.composites[i].gamma == odd.composites[i].gamma);
            CHECK(tri.composites[i].family == odd.composites[i].family);
        }
        CHECK(tri.party_settings == odd.party_settings);
    }
}

TEST_CASE("concurrency holds: common eigenstate without full commutation") {
    for (const auto& inst :
         {generate_tripartite(3, 1), generate_tripartite(2, 2), generate_npartite(5, 1)}) {
        const ConcurrencyReport rep = verify_concurrency(inst);
        CHECK(rep.common_eigenstate);
        for (const bool ok : rep.eigenstate)
            CHECK(ok);
        CHECK_FALSE(rep.all_commute);
        CHECK(rep.noncommuting_pair.has_value());
    }
}

TEST_CASE("commutation is decided factor by factor") {
    const ParadoxInstance inst = generate_tripartite(3, 1);
    const auto o1 = composite_operators(inst, inst.composites[0]);
    const auto o2 = composite_operators(inst, inst.composites[1]);
    const auto o3 = composite_operators(inst, inst.composites[2]);
    CHECK(composites_commute(o1, o1));
    CHECK_FALSE(composites_commute(o2, o3));
    CHECK_FALSE(composites_commute(o1, o2));
}

TEST_CASE("tampered instances fail re-verification") {
    ParadoxInstance inst = generate_tripartite(3, 1);
    verify_instance(inst);
    ParadoxInstance bad_gamma = inst;
    bad_gamma.composites[0].gamma = 1;
    CHECK_THROWS_AS(verify_instance(bad_gamma), Error);

    ParadoxInstance bad_phase = inst;
    bad_phase.composites[1].phases[0] = f(0, 1);
    CHECK_THROWS_AS(verify_instance(bad_phase), Error);

    ParadoxInstance bad_list = inst;
    bad_list.party_settings[0] = {f(2, 3), f(0, 1), f(1, 3)};
    CHECK_THROWS_AS(verify_instance(bad_list), Error);
}
