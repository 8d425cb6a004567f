#include "doctest.h"

#include "dq/catalog.hpp"
#include "dq/fedosov.hpp"

using namespace dq;

TEST_CASE("main comparison: abelian twist matches the trivial-class reference") {
    MainTheoremVerdict v = main_theorem_check(catalog_abelian2(), 2);
    CHECK(v.trivial);
    CHECK(v.rel.trivial);
    CHECK(v.rel.first_obstructed_order == -1);
    CHECK(v.twist.verified_order == 2);
    REQUIRE(v.rel.classes.size() == 2);
    for (const auto& c : v.rel.classes) CHECK(c.empty());
}

TEST_CASE("main comparison: injected class at hbar^1 is detected exactly") {
    // A normalization shift Omega += hbar (3 omega) first moves the star
    // product coefficients at hbar^2, so the defect surfaces at order 2.
    SymplecticLieAlgebra sg = catalog_abelian2();
    MainTheoremOptions opt;
    opt.omega_extra = {Scalar(3) * sg.omega()};
    MainTheoremVerdict v = main_theorem_check(sg, 2, opt);
    CHECK(!v.trivial);
    CHECK(v.rel.first_obstructed_order == 2);
    REQUIRE(v.rel.classes.size() == 2);
    CHECK(v.rel.classes[0].empty());
    Vec got = v.rel.classes[1];
    Vec want = cohomology_class(Scalar(3) * sg.omega(), sg.algebra());
    REQUIRE(got.size() == want.size());
    CHECK(got == want);
    CHECK(v.rel.obstruction == Scalar(3) * sg.omega());
}

TEST_CASE("main comparison: nonabelian case at order 1") {
    MainTheoremVerdict v = main_theorem_check(catalog_n2(), 1);
    CHECK(v.trivial);
    CHECK(v.rel.trivial);
    REQUIRE(v.rel.classes.size() == 1);
    CHECK(v.rel.classes[0].empty());
}
