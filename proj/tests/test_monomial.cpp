#include "doctest.h"

#include <vector>

#include "ghzkit/monomial.hpp"

using ghzkit::build_local_observable;
using ghzkit::commutation_ratio;
using ghzkit::CycScalar;
using ghzkit::Error;
using ghzkit::MonomialOp;
using ghzkit::PhaseFrac;
using ghzkit::proportionality;

TEST_CASE("construction rejects broken permutations") {
    const CycScalar one = CycScalar::one(3);
    CHECK_THROWS_AS(MonomialOp({0, 0, 1}, {one, one, one}), Error);
    CHECK_THROWS_AS(MonomialOp({0, 1, 3}, {one, one, one}), Error);
    CHECK_THROWS_AS(MonomialOp({0, 1}, {one}), Error);
    CHECK_THROWS_AS(MonomialOp({0, 1}, {one, CycScalar::zero(3)}), Error);
    CHECK_THROWS_AS(MonomialOp({0, 1}, {one, CycScalar::one(6)}), Error);
}

TEST_CASE("shift lowers cyclically and the zero phase reproduces it") {
    const MonomialOp s = MonomialOp::shift(3, 3);
    CHECK(s.target(1) == 0);
    CHECK(s.target(2) == 1);
    CHECK(s.target(0) == 2);
    CHECK(build_local_observable(PhaseFrac(0, 1), 3) == s);
    CHECK(s.compose(s).compose(s).is_identity());
}

TEST_CASE("phase-1/3 observable carries the frozen weights") {
    const MonomialOp y = build_local_observable(PhaseFrac(1, 3), 3, 9);
    CHECK(y.dim() == 3);
    CHECK(y.order() == 9);
    CHECK(y.target(0) == 2);
    CHECK(y.weight(0) == CycScalar::root(9, 2));
    CHECK(y.target(1) == 0);
    CHECK(y.weight(1) == CycScalar::root(9, 8));
    CHECK(y.target(2) == 1);
    CHECK(y.weight(2) == CycScalar::root(9, 8));
}

TEST_CASE("every on-grid observable has order dim") {
    for (const auto& alpha : {PhaseFrac(0, 1), PhaseFrac(1, 3), PhaseFrac(2, 3)}) {
        MonomialOp op = build_local_observable(alpha, 3, 9);
        MonomialOp power = op;
        for (int k = 1; k < 3; ++k)
            power = power.compose(op);
        CHECK(power.is_identity());
        CHECK(op.compose(op.adjoint()).is_identity());
    }
}

TEST_CASE("proportionality finds the constant or refuses") {
    const MonomialOp s = MonomialOp::shift(3, 9);
    CHECK(proportionality(s, s) == CycScalar::one(9));

    std::vector<CycScalar> scaled;
    for (int c = 0; c < 3; ++c)
        scaled.push_back(CycScalar::root(9, 3));
    const MonomialOp t({2, 0, 1}, scaled);
    CHECK(proportionality(t, s) == CycScalar::root(9, 3));

    CHECK_FALSE(proportionality(s, MonomialOp::identity(3, 9)).has_value());
    std::vector<CycScalar> uneven{CycScalar::one(9), CycScalar::root(9, 1),
                                  CycScalar::one(9)};
    CHECK_FALSE(proportionality(MonomialOp({2, 0, 1}, uneven), s).has_value());
}

TEST_CASE("an integer phase rescales the plain shift by a global factor") {
    const MonomialOp x0 = build_local_observable(PhaseFrac(0, 1), 3, 9);
    const MonomialOp x1 = build_local_observable(PhaseFrac(1, 1), 3, 9);
    for (int c = 0; c < 3; ++c)
        CHECK(x1.weight(c) == CycScalar::root(9, 6));
    CHECK(proportionality(x1, x0) == CycScalar::root(9, 6));

    const MonomialOp two_step = x0.compose(x0);
    CHECK(two_step.target(0) == 1);
    CHECK(two_step.target(1) == 2);
    CHECK(two_step.target(2) == 0);
    for (int c = 0; c < 3; ++c)
        CHECK(two_step.weight(c) == CycScalar::one(9));
}

TEST_CASE("same-phase factors commute, distinct on-grid phases do not") {
    const MonomialOp x = build_local_observable(PhaseFrac(0, 1), 3, 9);
    const MonomialOp y = build_local_observable(PhaseFrac(1, 3), 3, 9);
    const MonomialOp z = build_local_observable(PhaseFrac(2, 3), 3, 9);
    CHECK(commutation_ratio(y, y) == CycScalar::one(9));
    CHECK_FALSE(commutation_ratio(y, z).has_value());
    CHECK_FALSE(commutation_ratio(x, y).has_value());
    CHECK_FALSE(commutation_ratio(x, z).has_value());
}

TEST_CASE("the two composition orders of distinct phases differ entrywise") {
    const MonomialOp y = build_local_observable(PhaseFrac(1, 3), 3, 9);
    const MonomialOp z = build_local_observable(PhaseFrac(2, 3), 3, 9);
    const MonomialOp yz = y.compose(z);
    const MonomialOp zy = z.compose(y);
    CHECK(yz.target(0) == zy.target(0));
    std::vector<CycScalar> ratios;
    for (int c = 0; c < 3; ++c)
        ratios.push_back(yz.weight(c) * zy.weight(c).conj());
    CHECK(ratios[0] != ratios[1]);
    CHECK_FALSE(proportionality(yz, zy).has_value());
}

TEST_CASE("composition follows right-to-left application") {
    const MonomialOp s = MonomialOp::shift(4, 4);
    const MonomialOp s2 = s.compose(s);
    CHECK(s2.target(0) == 2);
    CHECK(s2.target(2) == 0);
    CHECK(s.compose(s.adjoint()).is_identity());
    CHECK_THROWS_AS(s.compose(MonomialOp::shift(3, 4)), Error);
}
