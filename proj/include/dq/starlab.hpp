#pragma once

#include "dq/bidiff.hpp"
#include "dq/lie.hpp"
#include "dq/pbw.hpp"

#include <map>
#include <utility>

namespace dq {

/// Poisson bivector with polynomial components pi^{ij} (stored for i < j).
struct PoissonBivector {
    int nvars = 0;
    std::map<std::pair<int, int>, Poly> comp;

    Poly component(int i, int j) const {
        if (i == j) return Poly(nvars);
        bool flip = i > j;
        if (flip) std::swap(i, j);
        auto it = comp.find({i, j});
        Poly p = it == comp.end() ? Poly(nvars) : it->second;
        return flip ? -p : p;
    }

    /// Coordinate Jacobi residual sum_l (pi^{li} d_l pi^{jk} + cyclic).
    Poly jacobi_residual(int i, int j, int k) const {
        Poly out(nvars);
        const int idx[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
        for (auto& t : idx)
            for (int l = 0; l < nvars; ++l)
                out += component(l, t[0]) * component(t[1], t[2]).derivative(l);
        return out;
    }
};

/// The coordinate Lie-Poisson structure of the central extension on h*,
/// in coordinates {x_1..x_n, u}: {x_i,x_j} = x_k C^k_{ij} - u w_{ij}.
PoissonBivector linear_poisson(const CentralExtension& ext);

/// Gutt star product on Poly(h*), extracted to bidifferential-operator
/// form (exact polynomial coefficients; order <= k per slot at hbar^k).
/// check_degree bounds the window of the extraction verification.
StarProduct gutt_star_product(PbwContext& ctx, int check_degree = 4);

/// Lemma-style tangentiality to D = {u = 1}: (p f) * g vanishes at u = 1
/// for p = u - 1 and all monomials f, g of degree <= degree.  The last
/// variable of the product's space is taken as u.
bool tangentiality_check(const StarProduct& s, int degree = 3);

/// Restriction of a tangential star product to D = {u = 1}: substitutes
/// u = 1 in coefficients and drops the u direction.  Throws MathError if
/// the product is not tangential (operator criterion: coefficients of
/// u-derivative terms must vanish at u = 1).
StarProduct restrict_to_D(const StarProduct& s, int tangentiality_degree = 3);

/// Dito trace operator D_r = sum Tr(ad_{e_{i_1}}...ad_{e_{i_r}})
/// d_{i_1}...d_{i_r} on h* (constant coefficients).
LinDiffOp dito_operator(const LieAlgebra& h, int r);

/// Per-order obstruction classes of the equivalence problem
/// T(f *1 g) = T(f) *2 T(g), plus the equivalence when all vanish.
struct RelativeClassResult {
    /// One entry per hbar order 1..N: coordinates in the ce_cohomology
    /// basis of H^2(g).  Empty vectors mean an unobstructed order.
    std::vector<Vec> classes;
    bool trivial = true;
    int first_obstructed_order = -1;
    /// The obstruction cocycle at the first obstructed order (if any).
    AltForm obstruction;
    /// T_1..T_N when the class is trivial to order N.
    std::vector<LinDiffOp> equivalence;
};

/// Options for the equivalence solver.
struct RelativeClassOptions {
    int degree_window = 4;       // monomial window the equation is imposed on
    int coeff_degree = -1;       // max coefficient degree of T_k (-1: 2k)
    /// Frame used to express the obstruction 2-cochain (defaults to the
    /// coordinate frame d_i when empty).
    std::vector<LinDiffOp> frame;
    /// Derivations T_k must commute with (invariant equivalence); empty
    /// means the coadjoint derivations of g are used.
    std::vector<LinDiffOp> symmetries;
    bool use_default_coadjoint = true;
    /// Optional invariant ansatz basis: when non-empty, each T_k is sought
    /// as a scalar combination of these operators and the symmetry rows
    /// are skipped (the basis is assumed invariant).  This admits jet
    /// operators whose series coefficients a polynomial ansatz truncates.
    std::vector<LinDiffOp> t_basis;
};

RelativeClassResult relative_class(const StarProduct& s1, const StarProduct& s2,
                                   const LieAlgebra& g, int order,
                                   RelativeClassOptions opt = {});

/// The coadjoint derivations ad*_{e_i} on Poly(g*): x_j -> -C^k_{ij} x_k.
std::vector<LinDiffOp> coadjoint_derivations(const LieAlgebra& g);

}  // namespace dq
