#pragma once

#include "dq/bidiff.hpp"
#include "dq/pbw.hpp"

#include <string>
#include <vector>

namespace dq {

/// Drinfel'd twist: F = 1 tensor 1 + O(hbar) in U(g)^{tensor 2}[[hbar]].
struct Twist {
    TensorSquareU value;
    int verified_order = -1;  // highest order the axioms were checked at
};

struct TwistAxiomReport {
    bool ok = false;
    bool normalized = false;        // hbar^0 term is exactly 1 tensor 1
    bool first_order_zero = false;  // whether the hbar^1 term vanishes
    TensorCubeU cocycle_residual;   // (Delta ox id)F (F ox 1) - (id ox Delta)F (1 ox F)
    PBWElement counit_left_residual;
    PBWElement counit_right_residual;
};

TwistAxiomReport twist_axiom_check(PbwContext& ctx, const TensorSquareU& f);

/// r = F_1 - F_1^opp as a bivector on g.  Requires the hbar^0 term to be
/// the unit and every hbar^1 leg to have PBW degree <= 1; throws MathError
/// with a diagnostic otherwise.
AltForm classical_limit(const TensorSquareU& f);

/// Action of g by derivations on a polynomial algebra; image i is the
/// derivation representing e_i.
struct LieAction {
    int nvars = 0;
    std::vector<LinDiffOp> images;
};

/// Exact validity check: every image is a vector field (first order, no
/// multiplication part) and the bracket relations hold on coordinates.
bool lie_action_valid(const LieAction& act, const LieAlgebra& g);

/// mu((Phi tensor Phi)(F)(f tensor g)); Phi composes the derivations in
/// PBW order.
PolySeries twisted_product(const TensorSquareU& f, const LieAction& act, const Poly& a,
                           const Poly& b);

/// F' = Delta(S)^{-1} F (S tensor S) for S = 1 + O(hbar), eps(S) = 1.
TensorSquareU gauge_transform(PbwContext& ctx, const TensorSquareU& f, const PBWElement& s);

struct TwistEquivalence {
    bool ok = false;
    PBWElement gauge;              // S with gauge_transform(F, S) = F'
    int obstructed_order = -1;     // first hbar order with no solution
    TensorSquareU obstruction;     // the unresolvable residual at that order
};

/// Solves gauge_transform(F, S) = F' order by order; max_degree bounds the
/// PBW degree of S_k (default 2k).  Throws InputError if the classical
/// limits differ.
TwistEquivalence twist_equivalence_solve(PbwContext& ctx, const TensorSquareU& f,
                                         const TensorSquareU& fp, int max_degree = -1);

/// Canonical text form: one term per line, "q * (m1 (x) m2) * h^k",
/// ordered by hbar order then lexicographically by the monomial pair.
std::string twist_to_string(const TensorSquareU& f);

}  // namespace dq
