#pragma once

#include "dq/altform.hpp"
#include "dq/linsolve.hpp"
#include "dq/scalar.hpp"

#include <string>
#include <vector>

namespace dq {

/// Finite-dimensional Lie algebra given by exact structure constants
/// C^k_{ij} over an ordered basis.  Antisymmetry holds by construction;
/// the Jacobi identity is checked separately (jacobi_check).
class LieAlgebra {
public:
    LieAlgebra(int dim, std::vector<std::string> basis_labels);

    int dim() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Sets C^k_{ij} and C^k_{ji} = -C^k_{ij}; requires i < j.
    void set_structure(int i, int j, int k, const Scalar& v);
    const Scalar& c(int i, int j, int k) const { return c_[(i * n_ + j) * n_ + k]; }

    /// [e_i, e_j] as a coefficient vector.
    Vec bracket(int i, int j) const;
    /// Bracket of two coefficient vectors.
    Vec bracket(const Vec& x, const Vec& y) const;

    /// Matrix of ad_{e_i} (columns indexed by the argument basis vector).
    Mat ad(int i) const;

private:
    int n_;
    std::vector<std::string> labels_;
    std::vector<Scalar> c_;
};

struct JacobiViolation {
    int i, j, k;
    Vec residual;  // cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
};

/// Empty iff the Jacobi identity holds on all basis triples.
std::vector<JacobiViolation> jacobi_check(const LieAlgebra& g);

/// Chevalley-Eilenberg differential with trivial coefficients; the sign
/// convention is (delta alpha)(X,Y) = alpha([X,Y]) on 1-forms, extended
/// by (delta alpha)(X_0..X_k) = sum_{p<q} (-1)^{p+q+1} alpha([X_p,X_q], rest),
/// so that delta C = -p* omega on the adapted central extension.
AltForm ce_differential(const AltForm& alpha, const LieAlgebra& g);

struct Cohomology {
    int dimension;
    std::vector<AltForm> representatives;  // cocycles spanning a complement of the coboundaries
};

Cohomology ce_cohomology(const LieAlgebra& g, int k);

/// Expresses a closed form as class coordinates in the basis produced by
/// ce_cohomology plus an exact remainder; throws MathError if the form is
/// not closed.
Vec cohomology_class(const AltForm& alpha, const LieAlgebra& g);

class SymplecticLieAlgebra {
public:
    /// Validates nondegeneracy and delta_CE omega = 0.
    SymplecticLieAlgebra(LieAlgebra algebra, AltForm omega);

    const LieAlgebra& algebra() const { return g_; }
    const AltForm& omega() const { return omega_; }
    /// Inverse of omega as a bivector (components of omega^{-1}).
    AltForm omega_inverse() const;

private:
    LieAlgebra g_;
    AltForm omega_;
};

/// h = g + R with [(X,x),(Y,y)] = ([X,Y], -omega(X,Y)); the extension
/// direction is the last basis index and the contact covector C is dual
/// to it.
struct CentralExtension {
    LieAlgebra h;
    int base_dim;             // dim g; h has base_dim + 1
    AltForm omega;            // the symplectic form on g that was extended
    /// The contact covector C as a coefficient vector on h*.
    Vec contact() const {
        Vec c(base_dim + 1, Scalar(0));
        c[base_dim] = Scalar(1);
        return c;
    }
};

CentralExtension central_extension(const SymplecticLieAlgebra& sg);

/// rank(delta_CE alpha-sharp): the rank of the 2-form (X,Y) -> -alpha([X,Y]),
/// which equals the dimension of the coadjoint orbit through alpha.
int coadjoint_orbit_dim(const LieAlgebra& g, const Vec& alpha);

/// Schouten self-bracket [[r,r]] of a bivector, antisymmetrized into
/// Lambda^3 g.  Normalization: the component on e_i^e_j^e_k (i<j<k) is the
/// full signed sum over S_3 of the T^3 expansion
/// [r12,r13]+[r12,r23]+[r13,r23].  Zero iff r solves the CYBE.
AltForm schouten_cybe(const LieAlgebra& g, const AltForm& r);

/// Polarized bracket [[r,s]] with the same normalization, so that
/// [[r+s,r+s]] = [[r,r]] + 2[[r,s]] + [[s,s]].
AltForm schouten_mixed(const LieAlgebra& g, const AltForm& r, const AltForm& s);

/// Left-invariant torsion-free symplectic connection.
struct Connection {
    int dim;
    std::vector<Scalar> gamma;  // Gamma^k_{ij}, index (i*n+j)*n+k
    const Scalar& at(int i, int j, int k) const { return gamma[(i * dim + j) * dim + k]; }
};

/// Hess-trick construction from the half-bracket connection; the
/// torsion-free and nabla-omega = 0 invariants are verified exactly and a
/// MathError is thrown if either fails.
Connection symplectic_connection(const SymplecticLieAlgebra& sg);

}  // namespace dq
