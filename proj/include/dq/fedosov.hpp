#pragma once

#include "dq/build_twist.hpp"

#include <vector>

namespace dq {

/// Element of the formal Weyl complex: polynomial in fiber generators
/// y^1..y^n (key.first, exponent vector), CE form generators e^1..e^n
/// (key.second, strictly increasing index list), with PolySeries
/// coefficients in the base coordinates.
class WeylElement {
public:
    using Key = std::pair<Expo, std::vector<int>>;

    WeylElement() : nvars_(0), order_(0) {}
    WeylElement(int nvars, int order) : nvars_(nvars), order_(order) {}

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    const std::map<Key, PolySeries>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    /// Adds a term; the form index list may be unsorted, the permutation
    /// sign is folded into the coefficient (repeats contribute nothing).
    void add_term(const Expo& y, std::vector<int> forms, PolySeries v);
    void add_term(const Expo& y, std::vector<int> forms, const Scalar& v);

    PolySeries coeff(const Key& k) const {
        auto it = t_.find(k);
        return it == t_.end() ? PolySeries(nvars_, order_) : it->second;
    }

    WeylElement& operator+=(const WeylElement& o);
    WeylElement& operator-=(const WeylElement& o);
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.t_ == b.t_; }

    WeylElement scaled(const Scalar& q) const;
    /// Multiplication by hbar^k (truncating shift).
    WeylElement shifted(int k) const;
    /// Exact division by hbar^k; throws MathError if not divisible.
    WeylElement unshifted(int k) const;
    /// Drops terms of y-degree above the cap.
    WeylElement y_truncated(int max_y_degree) const;

    /// The (0, 0)-bidegree coefficient (the symbol).
    PolySeries symbol() const { return coeff({Expo(nvars_, 0), {}}); }

    static WeylElement from_series(const PolySeries& f) {
        WeylElement a(f.nvars(), f.order());
        a.add_term(Expo(f.nvars(), 0), {}, f);
        return a;
    }

private:
    int nvars_;
    int order_;
    std::map<Key, PolySeries> t_;
};

/// Fiberwise Moyal product with bivector lambda: mu after
/// exp((hbar/2) lambda^{ij} d_{y^i} (x) d_{y^j}), Koszul signs on the
/// form parts, coefficients multiplied in Poly(x).
WeylElement weyl_moyal(const WeylElement& a, const WeylElement& b, const AltForm& lambda);

/// (1/hbar)(a o b - (-1)^{|a||b|} b o a); exact because the hbar^0 layer
/// of the fiberwise commutator cancels.
WeylElement weyl_comm(const WeylElement& a, const WeylElement& b, const AltForm& lambda);

/// delta = e^k ^ d_{y^k} and its homotopy inverse (delta_inv vanishes on
/// bidegree (0, 0)); delta delta_inv + delta_inv delta = id - symbol.
WeylElement delta(const WeylElement& a);
WeylElement delta_inv(const WeylElement& a);

struct FedosovData {
    LieAlgebra g = LieAlgebra(0, {});
    int dim = 0;
    int order = 0;           // requested truncation N
    int order_internal = 0;  // internal hbar truncation (N + 2)
    int y_cap = 0;           // fiber degree cap of the recursion
    AltForm omega_inv;
    Connection gamma;
    std::vector<AltForm> omega_series;  // Omega-hat = sum_k hbar^k omega_series[k]
    WeylElement r;                      // solved curvature correction
    WeylElement gamma_hat;              // (1/2) omega_{kl} Gamma^l_{ij} y^k y^j e^i
    WeylElement delta_hat;              // omega_{ij} y^i e^j
    std::vector<LinDiffOp> frame;       // derivations realizing the base directions
    int jet_degree = -1;                // validity degree of frame coefficients (-1: exact)
};

/// Fedosov recursion over the CE complex with the invariant frame: solves
/// r = delta_inv(W0 + Omega-hat + nu r + nabla' r + (1/2 hbar)[r, r]) to a
/// fixed point and verifies the flatness normalization
/// nu(rho) + (1/2 hbar)[rho, rho] = -Omega-hat exactly for
/// rho = -delta_hat - gamma_hat + r.  The frame must be homomorphic,
/// [L_i, L_j] = C^s_{ij} L_s (the "left" chirality of invariant_frame);
/// the opposite chirality is rejected with InputError, as are non-closed
/// Omega coefficients.  Throws MathError on a failed flatness check.
FedosovData fedosov_recursion(const SymplecticLieAlgebra& sg, const Connection& gamma,
                              const std::vector<AltForm>& omega_series, int order,
                              const std::vector<LinDiffOp>& frame, int jet_degree = -1);

/// The covariant part nu: e^i ^ (frame_i on coefficients) plus the
/// Maurer-Cartan differential on the form generators.
WeylElement fedosov_nu(const FedosovData& d, const WeylElement& a);

/// tau-lift of f to a flat section (fixed point of the holonomy
/// recursion), truncated at the internal order.
WeylElement fedosov_lift(const FedosovData& d, const Poly& f);

/// sigma(lift(f) o lift(g)) truncated to the requested order.
PolySeries fedosov_star(const FedosovData& d, const Poly& f, const Poly& g);

/// Operator form of the Fedosov product, extracted on the window.
StarProduct fedosov_star_product(const FedosovData& d, int check_degree = 4);

struct MainTheoremOptions {
    int jet_degree = -1;  // -1: 2 * order + 10
    /// Extra Omega coefficients: omega_extra[k] is added at hbar^{k+1}.
    std::vector<AltForm> omega_extra;
    RelativeClassOptions rel;
    BuildOptions build;
};

struct MainTheoremVerdict {
    bool trivial = false;
    RelativeClassResult rel;
    Twist twist;
    StarProduct twist_star;
    StarProduct fedosov_star;
};

/// Builds the twist, the invariant star product it induces, and the
/// Fedosov reference with Omega leading coefficient omega, then compares
/// their characteristic data order by order.
MainTheoremVerdict main_theorem_check(const SymplecticLieAlgebra& sg, int order,
                                      MainTheoremOptions opt = {});

}  // namespace dq
