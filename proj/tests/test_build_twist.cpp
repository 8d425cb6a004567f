#include "doctest.h"

#include "dq/build_twist.hpp"
#include "dq/catalog.hpp"

using namespace dq;

namespace {

TensorSquareU moyal_twist2(const LieAlgebra* g) {
    TensorSquareU f = TensorSquareU::unit(g, 2);
    Scalar h(1, 2);
    f.add_term({0}, {1}, HbarSeries::monomial(-h, 1, 2));
    f.add_term({1}, {0}, HbarSeries::monomial(h, 1, 2));
    Scalar q(1, 8);
    f.add_term({0, 0}, {1, 1}, HbarSeries::monomial(q, 2, 2));
    f.add_term({0, 1}, {0, 1}, HbarSeries::monomial(Scalar(-2) * q, 2, 2));
    f.add_term({1, 1}, {0, 0}, HbarSeries::monomial(q, 2, 2));
    return f;
}

}  // namespace

TEST_CASE("abelian construction recovers the Weyl twist") {
    SymplecticLieAlgebra sg = catalog_abelian2();
    BuiltTwist bt = build_drinfeld_twist(sg, 2);
    CHECK(bt.twist.verified_order == 2);
    const LieAlgebra* g = bt.twist.value.algebra();
    PbwContext ctx(g, 2, false);
    TwistAxiomReport rep = twist_axiom_check(ctx, bt.twist.value);
    CHECK(rep.ok);
    AltForm r = classical_limit(bt.twist.value);
    CHECK(r == sg.omega_inverse());
    CHECK(schouten_cybe(sg.algebra(), r).is_zero());
    // Gauge-equivalent (in fact should match up to a symmetric gauge) to
    // the closed-form Weyl twist.
    TwistEquivalence eq = twist_equivalence_solve(ctx, bt.twist.value, moyal_twist2(g));
    CHECK(eq.ok);
    CHECK(gauge_transform(ctx, bt.twist.value, eq.gauge) == moyal_twist2(g));
}

TEST_CASE("nonabelian construction: axioms, classical limit, CYBE") {
    SymplecticLieAlgebra sg = catalog_n2();
    BuiltTwist bt = build_drinfeld_twist(sg, 2);
    const LieAlgebra* g = bt.twist.value.algebra();
    PbwContext ctx(g, 2, false);
    TwistAxiomReport rep = twist_axiom_check(ctx, bt.twist.value);
    CHECK(rep.ok);
    CHECK(rep.normalized);
    AltForm r = classical_limit(bt.twist.value);
    CHECK(r == sg.omega_inverse());
    CHECK(schouten_cybe(sg.algebra(), r).is_zero());
}

TEST_CASE("twist star product is associative and left-invariant") {
    SymplecticLieAlgebra sg = catalog_n2();
    BuiltTwist bt = build_drinfeld_twist(sg, 2);
    const int jet = bt.chart.jet_degree;
    StarProduct s = star_from_twist(bt.twist, bt.frame, jet);
    REQUIRE(s.coeff_valid_degree.has_value());
    AssocReport rep = assoc_residual(s, 2, 3);
    CHECK(rep.ok);
    // It reproduces the transported product where both are valid.
    int window = std::min(*s.coeff_valid_degree, *bt.transported.coeff_valid_degree);
    for (const Expo& a : monomials_up_to(2, 2))
        for (const Expo& b : monomials_up_to(2, 2)) {
            Poly pa = Poly::monomial(a, Scalar(1)), pb = Poly::monomial(b, Scalar(1));
            PolySeries u = s.apply(pa, pb).truncated_degree(window - 2);
            PolySeries v = bt.transported.apply(pa, pb).truncated_degree(window - 2);
            CHECK(u == v);
        }
    // Invariance under the opposite frame: right-invariant fields commute
    // with left-invariant ones, so they are derivations of the product.
    std::vector<LinDiffOp> right = invariant_frame(sg.algebra(), jet, false);
    for (const auto& d : right)
        for (const Expo& a : monomials_up_to(2, 2))
            for (const Expo& b : monomials_up_to(2, 2)) {
                Poly pa = Poly::monomial(a, Scalar(1)), pb = Poly::monomial(b, Scalar(1));
                PolySeries lhs(2, 2);
                {
                    PolySeries t = s.apply(pa, pb);
                    for (int k = 0; k <= 2; ++k) lhs[k] = d.apply(t[k]);
                }
                PolySeries rhs = s.apply(d.apply(pa), pb) + s.apply(pa, d.apply(pb));
                int w = window - 3;  // one frame application costs a degree
                CHECK(lhs.truncated_degree(w) == rhs.truncated_degree(w));
            }
}

TEST_CASE("insufficient jet order is rejected") {
    CHECK_THROWS_AS(build_drinfeld_twist(catalog_n2(), 2, [] {
                        BuildOptions o;
                        o.jet_degree = 4;
                        o.match_window = 4;
                        o.stability_check = false;
                        return o;
                    }()),
                    MathError);
}
