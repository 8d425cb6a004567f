#include "doctest.h"

#include "dq/catalog.hpp"
#include "dq/chart.hpp"

#include <random>

using namespace dq;

namespace {

LinDiffOp truncated_op(const LinDiffOp& a, int deg) {
    LinDiffOp r(a.nvars());
    for (const auto& [d, c] : a.terms()) r.add_term(d, c.truncated(deg));
    return r;
}

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

}  // namespace

TEST_CASE("frame series coefficients are the known Bernoulli values") {
    // z/(1 - e^{-z}) = 1 + z/2 + z^2/12 - z^4/720 + z^6/30240 - ...
    std::vector<Scalar> c = invariant_frame_series(6);
    REQUIRE(c.size() == 7);
    CHECK(c[0] == Scalar(1));
    CHECK(c[1] == Scalar(1, 2));
    CHECK(c[2] == Scalar(1, 12));
    CHECK(c[3] == Scalar(0));
    CHECK(c[4] == Scalar(-1, 720));
    CHECK(c[5] == Scalar(0));
    CHECK(c[6] == Scalar(1, 30240));
    // Defining property: c(z) * (1 - e^{-z})/z = 1 as a jet.
    std::vector<Scalar> q(7);
    Scalar fact(1);
    for (int m = 0; m <= 6; ++m) {
        fact *= Scalar(m + 1);
        q[m] = (m % 2 == 0 ? Scalar(1) : Scalar(-1)) / fact;
    }
    for (int k = 0; k <= 6; ++k) {
        Scalar s(0);
        for (int i = 0; i <= k; ++i) s += c[i] * q[k - i];
        CHECK(s == (k == 0 ? Scalar(1) : Scalar(0)));
    }
}

TEST_CASE("ad matrix and matrix series on a nilpotent example") {
    CentralExtension h = catalog_heisenberg();
    PolyMat ad = ad_matrix_poly(h.h);
    // ad_X e1 = X2 [e2,e1] = X2 z, ad_X e2 = -X1 z (z row is index 2).
    Poly x1 = Poly::variable(0, 3), x2 = Poly::variable(1, 3);
    CHECK(ad[2][0] == x2);
    CHECK(ad[2][1] == -x1);
    for (int k = 0; k < 2; ++k)
        for (int b = 0; b < 3; ++b) CHECK(ad[k][b].is_zero());
    CHECK(ad[2][2].is_zero());
    // exp(M) with M^2 = 0: matrix_series with 1/m! reproduces I + M.
    std::vector<Scalar> expc{Scalar(1), Scalar(1), Scalar(1, 2), Scalar(1, 6)};
    PolyMat e = matrix_series(expc, ad, 5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Poly want = ad[i][j];
            if (i == j) want += Poly::constant(Scalar(1), 3);
            CHECK(e[i][j] == want);
        }
}

TEST_CASE("abelian exponential chart is the symplectic rotation") {
    ExpChart c = exp_chart(catalog_heisenberg(), 4);
    REQUIRE(c.base_dim == 2);
    // x1 = -X2, x2 = X1 and the inverse.
    CHECK(c.phi[0] == -Poly::variable(1, 2));
    CHECK(c.phi[1] == Poly::variable(0, 2));
    CHECK(c.psi[0] == Poly::variable(1, 2));
    CHECK(c.psi[1] == -Poly::variable(0, 2));
}

TEST_CASE("chart compositions are the identity jet") {
    std::mt19937 rng(505);
    for (const CentralExtension& ext : {catalog_heisenberg(), catalog_e3()}) {
        const int jet = 5;
        ExpChart c = exp_chart(ext, jet);
        for (int a = 0; a < c.base_dim; ++a) {
            CHECK(c.psi[a].substituted(c.phi, jet) == Poly::variable(a, c.base_dim));
            CHECK(c.phi[a].substituted(c.psi, jet) == Poly::variable(a, c.base_dim));
        }
        // pullback/pushforward round trip on random polynomials whose
        // degree keeps the composition inside the jet window.
        for (int trial = 0; trial < 5; ++trial) {
            Poly f = rnd_poly(c.base_dim, 2, rng);
            CHECK(c.pullback(c.pushforward(f)).truncated(jet - 2) == f.truncated(jet - 2));
        }
        // The linear part matches phi.
        for (int a = 0; a < c.base_dim; ++a)
            for (int i = 0; i < c.base_dim; ++i) {
                Expo e(c.base_dim, 0);
                e[i] = 1;
                CHECK(c.linear[a][i] == c.phi[a].coeff(e));
            }
    }
}

TEST_CASE("invariant frames: origin value and bracket relations") {
    const int jet = 5;
    std::vector<LieAlgebra> algebras{catalog_heisenberg().h, catalog_e3().h,
                                     catalog_n2().algebra()};
    for (const auto& g : algebras) {
        const int n = g.dim();
        for (bool left : {true, false}) {
            std::vector<LinDiffOp> frame = invariant_frame(g, jet, left);
            REQUIRE(static_cast<int>(frame.size()) == n);
            // At the origin L_i = d_i.
            for (int i = 0; i < n; ++i)
                for (const auto& [d, c] : frame[i].terms()) {
                    Expo want(n, 0);
                    int sum = 0;
                    for (int v : d) sum += v;
                    REQUIRE(sum == 1);  // vector field
                    Scalar at0 = c.coeff(Expo(n, 0));
                    int j = 0;
                    while (d[j] == 0) ++j;
                    CHECK(at0 == (j == i ? Scalar(1) : Scalar(0)));
                }
            // [L_i, L_j] = +/- C^k_{ij} L_k as jets of coefficient degree
            // jet - 1 (one derivative of a degree-jet coefficient).
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    LinDiffOp comm = compose(frame[i], frame[j]);
                    comm += Scalar(-1) * compose(frame[j], frame[i]);
                    LinDiffOp want(n);
                    Vec br = g.bracket(i, j);
                    for (int k = 0; k < n; ++k) want += (left ? br[k] : -br[k]) * frame[k];
                    CHECK(truncated_op(comm, jet - 1) == truncated_op(want, jet - 1));
                }
        }
    }
}
