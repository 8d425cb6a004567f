#include "doctest.h"

#include "dq/catalog.hpp"
#include "dq/starlab.hpp"

#include <random>

using namespace dq;

namespace {

Poly rnd_poly(int nvars, int max_deg, std::mt19937& rng) {
    Poly f(nvars);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int t = 0; t < 4; ++t) {
        Expo e(nvars, 0);
        int deg = static_cast<int>(rng() % (max_deg + 1));
        for (int d = 0; d < deg; ++d) e[rng() % nvars] += 1;
        f.add_term(e, Scalar(coeff(rng)));
    }
    return f;
}

/// Moyal star on two flat variables with hbar-dependent bivector
/// lambda + hbar * mu: exact closed form to order 2.
StarProduct moyal2(const Scalar& lambda, const Scalar& mu) {
    auto d = [](int i, int j) {
        Expo e(2, 0);
        e[0] = i;
        e[1] = j;
        return e;
    };
    Poly one = Poly::constant(Scalar(1), 2);
    BiDiffOp a(2);
    a.add_term(d(1, 0), d(0, 1), one);
    a.add_term(d(0, 1), d(1, 0), -one);
    BiDiffOp b1(2), b2(2);
    for (const auto& [k, c] : a.terms()) b1.add_term(k.first, k.second, lambda * c);
    // exp(hbar (lambda + hbar mu) A): hbar^2 slice is mu A + lambda^2 A^2 / 2.
    for (const auto& [k, c] : a.terms()) b2.add_term(k.first, k.second, mu * c);
    Scalar half_l2 = lambda * lambda / Scalar(2);
    b2.add_term(d(2, 0), d(0, 2), half_l2 * one);
    b2.add_term(d(1, 1), d(1, 1), Scalar(-2) * half_l2 * one);
    b2.add_term(d(0, 2), d(2, 0), half_l2 * one);
    return star_from_bidiff({BiDiffOp::multiplication(2), b1, b2}, std::nullopt, 4);
}

}  // namespace

TEST_CASE("linear poisson structure of the extensions") {
    // Heisenberg: {x1, x2} = -u, everything else zero.
    CentralExtension h = catalog_heisenberg();
    PoissonBivector p = linear_poisson(h);
    REQUIRE(p.nvars == 3);
    Poly expect(3);
    expect.add_term({0, 0, 1}, Scalar(-1));
    CHECK(p.component(0, 1) == expect);
    CHECK(p.component(0, 2).is_zero());
    CHECK(p.component(1, 2).is_zero());
    // E3: {x1, x2} = x1 - u.
    CentralExtension e = catalog_e3();
    PoissonBivector q = linear_poisson(e);
    Poly expect2(3);
    expect2.add_term({1, 0, 0}, Scalar(1));
    expect2.add_term({0, 0, 1}, Scalar(-1));
    CHECK(q.component(0, 1) == expect2);
    // Jacobi holds.
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int k = j + 1; k < 3; ++k) {
                CHECK(p.jacobi_residual(i, j, k).is_zero());
                CHECK(q.jacobi_residual(i, j, k).is_zero());
            }
}

TEST_CASE("gutt star product extraction reproduces the map") {
    std::mt19937 rng(31337);
    for (const CentralExtension& ext : {catalog_heisenberg(), catalog_e3()}) {
        PbwContext ctx(&ext.h, 2);
        StarProduct s = gutt_star_product(ctx);
        // Random-polynomial oracle straight from the enveloping algebra.
        for (int trial = 0; trial < 5; ++trial) {
            Poly f = rnd_poly(3, 3, rng), g = rnd_poly(3, 3, rng);
            CHECK(s.apply(f, g) == ctx.gutt_star(f, g));
        }
        // Semiclassical limit is half the Lie-Poisson bivector.
        PoissonBivector p = linear_poisson(ext);
        BiDiffOp anti = s.semiclassical_antisym();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Expo di(3, 0), dj(3, 0);
                di[i] = 1;
                dj[j] = 1;
                auto it = anti.terms().find({di, dj});
                Poly got = it == anti.terms().end() ? Poly(3) : it->second;
                CHECK(got == Scalar(1, 2) * p.component(i, j));
            }
        // Central coordinate is undeformed: u * f = u f = f * u.
        Poly u = Poly::variable(2, 3);
        for (int trial = 0; trial < 3; ++trial) {
            Poly f = rnd_poly(3, 3, rng);
            PolySeries left = s.apply(u, f);
            PolySeries right = s.apply(f, u);
            CHECK(left[0] == u * f);
            for (int k = 1; k <= 2; ++k) CHECK(left[k].is_zero());
            CHECK(left == right);
        }
    }
}

TEST_CASE("gutt star is associative as a bidifferential operator") {
    for (const CentralExtension& ext : {catalog_heisenberg(), catalog_e3()}) {
        PbwContext ctx(&ext.h, 3);
        StarProduct s = gutt_star_product(ctx);
        AssocReport rep = assoc_residual(s, 3, 4);
        CHECK(rep.ok);
        CHECK(rep.residual.is_zero());
    }
}

TEST_CASE("tangentiality and restriction to u = 1") {
    std::mt19937 rng(6060);
    for (const CentralExtension& ext : {catalog_heisenberg(), catalog_e3()}) {
        PbwContext ctx(&ext.h, 2);
        StarProduct s = gutt_star_product(ctx);
        CHECK(tangentiality_check(s));
        StarProduct r = restrict_to_D(s);
        REQUIRE(r.nvars == 2);
        // Restriction commutes with evaluation at u = 1 on polynomials
        // pulled back from the leaf.
        for (int trial = 0; trial < 5; ++trial) {
            Poly f2 = rnd_poly(2, 3, rng), g2 = rnd_poly(2, 3, rng);
            Poly f3 = f2.embedded(3), g3 = g2.embedded(3);
            PolySeries full = s.apply(f3, g3);
            PolySeries down = r.apply(f2, g2);
            for (int k = 0; k <= 2; ++k) CHECK(full[k].eliminated(2, Scalar(1)) == down[k]);
        }
        AssocReport rep = assoc_residual(r, 2, 3);
        CHECK(rep.ok);
    }
}

TEST_CASE("restriction rejects a non-tangential product") {
    // Hand-built product with a stray d_u leg; not associative, built as
    // a raw aggregate on purpose.
    BiDiffOp bad(3);
    Expo du(3, 0), zero(3, 0);
    du[2] = 1;
    bad.add_term(du, zero, Poly::constant(Scalar(1), 3));
    StarProduct s{3, 1, {BiDiffOp::multiplication(3), bad}, std::nullopt};
    CHECK(!tangentiality_check(s));
    CHECK_THROWS_AS(restrict_to_D(s), MathError);
}

TEST_CASE("dito trace operators") {
    // E3 extension: Tr ad(e2) = -1 is the only nonzero first trace,
    // Tr(ad(e2)^2) = 1 the only nonzero second trace.
    CentralExtension e = catalog_e3();
    LinDiffOp d1 = dito_operator(e.h, 1);
    LinDiffOp expect1(3);
    expect1.add_term({0, 1, 0}, Poly::constant(Scalar(-1), 3));
    CHECK(d1 == expect1);
    LinDiffOp d2 = dito_operator(e.h, 2);
    LinDiffOp expect2(3);
    expect2.add_term({0, 2, 0}, Poly::constant(Scalar(1), 3));
    CHECK(d2 == expect2);
    // Heisenberg is nilpotent: every trace operator vanishes.
    CentralExtension h = catalog_heisenberg();
    for (int r = 1; r <= 3; ++r) CHECK(dito_operator(h.h, r).is_zero());
    // No trace operator ever differentiates in the central direction.
    for (int r = 1; r <= 3; ++r) {
        LinDiffOp dr = dito_operator(e.h, r);
        for (const auto& [deriv, c] : dr.terms()) CHECK(deriv[2] == 0);
    }
}

TEST_CASE("coadjoint derivations satisfy the bracket relations") {
    for (const SymplecticLieAlgebra& sg :
         {catalog_abelian2(), catalog_n2(), catalog_n2_r2()}) {
        const LieAlgebra& g = sg.algebra();
        const int n = g.dim();
        std::vector<LinDiffOp> rho = coadjoint_derivations(g);
        REQUIRE(static_cast<int>(rho.size()) == n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                LinDiffOp comm = compose(rho[i], rho[j]);
                comm += Scalar(-1) * compose(rho[j], rho[i]);
                // Fundamental vector fields of a (left) action compose as
                // an anti-homomorphism: [rho_i, rho_j] = -rho_{[e_i,e_j]}.
                LinDiffOp want(n);
                Vec br = g.bracket(i, j);
                for (int k = 0; k < n; ++k) want += -br[k] * rho[k];
                CHECK(comm == want);
            }
    }
}

TEST_CASE("relative class: identical products are trivially equivalent") {
    StarProduct s = moyal2(Scalar(1), Scalar(0));
    RelativeClassResult r = relative_class(s, s, catalog_abelian2().algebra(), 2);
    CHECK(r.trivial);
    CHECK(r.first_obstructed_order == -1);
    REQUIRE(r.equivalence.size() == 2);
    for (const auto& t : r.equivalence) CHECK(t.is_zero());
}

TEST_CASE("relative class: conjugated product is equivalent and recovers T") {
    // s2(Tf, Tg) = T(f s1 g) with T = 1 + hbar D, D = d1 d2.
    StarProduct s1 = moyal2(Scalar(1), Scalar(0));
    LinDiffOp dop(2);
    dop.add_term({1, 1}, Poly::constant(Scalar(1), 2));
    auto t_apply = [&](const PolySeries& f) {
        PolySeries out = f;
        for (int k = 0; k + 1 <= f.order(); ++k) out[k + 1] += dop.apply(f[k]);
        return out;
    };
    auto tinv_apply = [&](const Poly& f, int order) {
        // (1 + hbar D)^{-1} = 1 - hbar D + hbar^2 D^2 - ...
        PolySeries out(2, order);
        Poly cur = f;
        for (int k = 0; k <= order; ++k) {
            out[k] = (k % 2 == 0) ? cur : -cur;
            cur = dop.apply(cur);
        }
        return out;
    };
    auto fn = [&](const Expo& a, const Expo& b) {
        PolySeries v =
            t_apply(s1.apply(tinv_apply(Poly::monomial(a, Scalar(1)), 2),
                             tinv_apply(Poly::monomial(b, Scalar(1)), 2)));
        return v;
    };
    std::vector<BiDiffOp> bs;
    for (int k = 0; k <= 2; ++k)
        bs.push_back(bidiff_extract([&](const Expo& a, const Expo& b) { return fn(a, b)[k]; }, 2,
                                    2 * k + 2, 4));
    StarProduct s2 = star_from_bidiff(bs, std::nullopt, 4);
    RelativeClassResult r = relative_class(s1, s2, catalog_abelian2().algebra(), 2);
    CHECK(r.trivial);
    REQUIRE(r.equivalence.size() == 2);
    CHECK(r.equivalence[0] == dop);
    // Round trip: T(f s1 g) = T(f) s2 T(g) on a window.
    for (const Expo& a : monomials_up_to(2, 3))
        for (const Expo& b : monomials_up_to(2, 3)) {
            Poly fa = Poly::monomial(a, Scalar(1)), fb = Poly::monomial(b, Scalar(1));
            PolySeries lhs = t_apply(s1.apply(fa, fb));
            PolySeries rhs = s2.apply(t_apply(PolySeries::from_poly(fa, 2)),
                                      t_apply(PolySeries::from_poly(fb, 2)));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("relative class: bivector mutation is detected with the exact class") {
    StarProduct s1 = moyal2(Scalar(1), Scalar(0));
    StarProduct s2 = moyal2(Scalar(1), Scalar(3));
    const LieAlgebra g = catalog_abelian2().algebra();
    RelativeClassResult r = relative_class(s1, s2, g, 2);
    CHECK(!r.trivial);
    CHECK(r.first_obstructed_order == 2);
    REQUIRE(r.classes.size() == 2);
    CHECK(!r.classes[1].empty());
    // Linearity of the class in the injected mutation.
    RelativeClassResult r1 = relative_class(s1, moyal2(Scalar(1), Scalar(1)), g, 2);
    REQUIRE(!r1.classes[1].empty());
    REQUIRE(r.classes[1].size() == r1.classes[1].size());
    for (size_t i = 0; i < r.classes[1].size(); ++i)
        CHECK(r.classes[1][i] == Scalar(3) * r1.classes[1][i]);
    CHECK(!r.obstruction.is_zero());
}
