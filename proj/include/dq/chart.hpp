#pragma once

#include "dq/bidiff.hpp"
#include "dq/lie.hpp"

#include <vector>

namespace dq {

using PolyMat = std::vector<std::vector<Poly>>;

/// Matrix of ad_X for a generic point X of g: entries are linear
/// polynomials in the coordinates X_i, AD(X)_{kb} = sum_i X_i C^k_{ib}.
PolyMat ad_matrix_poly(const LieAlgebra& g);

/// sum_m coeffs[m] M^m with entries truncated to total degree maxdeg.
PolyMat matrix_series(const std::vector<Scalar>& coeffs, const PolyMat& m, int maxdeg);

/// Taylor coefficients of z/(1 - e^{-z}) up to degree maxdeg (exact;
/// c[0] = 1, c[1] = 1/2, c[2] = 1/12, c[3] = 0, ...).
std::vector<Scalar> invariant_frame_series(int maxdeg);

/// Exponential chart of the extension restricted to the unit-level orbit
/// slice: phi maps exp-chart coordinates X on g to the coordinates x on
/// D = {u = 1} in h*, psi is the inverse jet.  Both are polynomial jets
/// of total degree <= jet_degree; psi(phi) = id is verified to that
/// degree.
struct ExpChart {
    int base_dim = 0;
    int jet_degree = 0;
    std::vector<Poly> phi;  // x_a(X)
    std::vector<Poly> psi;  // X_a(x)
    Mat linear;             // d(phi) at 0

    /// f(x) -> f(phi(X)), truncated at the jet degree.
    Poly pullback(const Poly& f) const;
    /// F(X) -> F(psi(x)), truncated at the jet degree.
    Poly pushforward(const Poly& f) const;
};

ExpChart exp_chart(const CentralExtension& ext, int jet_degree);

/// Left-invariant (left = true) or right-invariant vector fields of the
/// simply connected group in the exponential chart, as jets of degree
/// <= jet_degree: L_i = sum_j M(X)_{ji} d_j with M = f(ad_X),
/// f(z) = z/(1 - e^{-z}) for the left frame and f(-z) for the right one.
std::vector<LinDiffOp> invariant_frame(const LieAlgebra& g, int jet_degree, bool left);

}  // namespace dq
