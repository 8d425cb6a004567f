#pragma once

#include "dq/lie.hpp"
#include "dq/poly.hpp"
#include "dq/series.hpp"

#include <array>
#include <map>
#include <vector>

namespace dq {

/// A PBW monomial: weakly increasing tuple of basis indices.
using PbwMono = std::vector<int>;

/// Element of U_hbar(g) in Poincare-Birkhoff-Witt normal form.  Keys are
/// weakly increasing index tuples, values are truncated hbar-series.
class PBWElement {
public:
    PBWElement() : alg_(nullptr), order_(0) {}
    PBWElement(const LieAlgebra* algebra, int order) : alg_(algebra), order_(order) {}

    const LieAlgebra* algebra() const { return alg_; }
    int order() const { return order_; }
    const std::map<PbwMono, HbarSeries>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const PbwMono& m, const HbarSeries& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = t_.emplace(m, v.extended(order_));
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    HbarSeries coeff(const PbwMono& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? HbarSeries(order_) : it->second;
    }

    PBWElement& operator+=(const PBWElement& o) {
        for (const auto& [m, v] : o.t_) add_term(m, v);
        return *this;
    }
    PBWElement& operator-=(const PBWElement& o) {
        for (const auto& [m, v] : o.t_) add_term(m, -v);
        return *this;
    }
    friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
    friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
    friend bool operator==(const PBWElement& a, const PBWElement& b) { return a.t_ == b.t_; }

    friend PBWElement operator*(const HbarSeries& q, const PBWElement& a) {
        PBWElement r(a.alg_, a.order_);
        for (const auto& [m, v] : a.t_) r.add_term(m, q * v);
        return r;
    }
    friend PBWElement operator*(const Scalar& q, const PBWElement& a) {
        return HbarSeries::constant(q, a.order_) * a;
    }

    static PBWElement unit(const LieAlgebra* alg, int order) {
        PBWElement r(alg, order);
        r.add_term({}, HbarSeries::one(order));
        return r;
    }
    static PBWElement generator(const LieAlgebra* alg, int i, int order) {
        PBWElement r(alg, order);
        r.add_term({i}, HbarSeries::one(order));
        return r;
    }

    /// Maximum word length with nonzero coefficient (-1 if zero).
    int max_degree() const {
        int d = -1;
        for (const auto& [m, v] : t_) d = std::max(d, static_cast<int>(m.size()));
        return d;
    }

private:
    const LieAlgebra* alg_;
    int order_;
    std::map<PbwMono, HbarSeries> t_;
};

/// Shared straightening cache for one (algebra, truncation) pair.  All
/// enveloping-algebra operations for that pair should go through a single
/// context; the cache only grows, values are immutable.
///
/// With hbar_graded = true the context models U_hbar(g), the enveloping
/// algebra of the rescaled bracket hbar[.,.]; this is the algebra behind
/// the Gutt star product and the symmetrization maps.  With hbar_graded =
/// false it models the classical U(g)[[hbar]], where reordering inserts
/// the bracket with no hbar factor.  Twist elements are matched against
/// compositions of frame vector fields, whose commutators carry no hbar,
/// so the twist axioms, gauge transformations, and equivalences must be
/// computed in the classical product.
class PbwContext {
public:
    PbwContext(const LieAlgebra* algebra, int order, bool hbar_graded = true)
        : alg_(algebra), order_(order), hbar_graded_(hbar_graded) {}

    const LieAlgebra* algebra() const { return alg_; }
    int order() const { return order_; }
    bool hbar_graded() const { return hbar_graded_; }

    /// Straightens an arbitrary word e_{i1}...e_{ik} to PBW normal form,
    /// rewriting e_j e_i -> e_i e_j + hbar^s [e_j, e_i] for j > i, with
    /// s = 1 in the graded context and s = 0 in the classical one.
    const PBWElement& normalize(const std::vector<int>& word);

    PBWElement multiply(const PBWElement& a, const PBWElement& b);

    /// Symmetrization P_hbar of a symmetric monomial given as an exponent
    /// vector over the basis.
    const PBWElement& symmetrize_monomial(const Expo& expo);
    /// P_hbar extended linearly to Sym g [[hbar]].
    PBWElement symmetrize(const Poly& f);
    PBWElement symmetrize(const PolySeries& f);

    /// P_hbar^{-1}, by degree-triangular back-substitution.
    PolySeries symmetrize_inverse(const PBWElement& u);

    /// Gutt star product on polynomials on g*.
    PolySeries gutt_star(const Poly& f, const Poly& g);
    PolySeries gutt_star(const PolySeries& f, const PolySeries& g);

    HbarSeries counit(const PBWElement& u) const { return u.coeff({}); }

private:
    const LieAlgebra* alg_;
    int order_;
    bool hbar_graded_;
    std::map<std::vector<int>, PBWElement> normal_forms_;
    std::map<Expo, PBWElement> symmetrized_;
};

/// Element of U(g) tensor U(g) [[hbar]], both slots in PBW normal form.
class TensorSquareU {
public:
    TensorSquareU() : alg_(nullptr), order_(0) {}
    TensorSquareU(const LieAlgebra* algebra, int order) : alg_(algebra), order_(order) {}

    const LieAlgebra* algebra() const { return alg_; }
    int order() const { return order_; }
    const std::map<std::pair<PbwMono, PbwMono>, HbarSeries>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const PbwMono& a, const PbwMono& b, const HbarSeries& v) {
        if (v.is_zero()) return;
        auto key = std::make_pair(a, b);
        auto [it, fresh] = t_.emplace(key, v.extended(order_));
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    static TensorSquareU unit(const LieAlgebra* alg, int order) {
        TensorSquareU r(alg, order);
        r.add_term({}, {}, HbarSeries::one(order));
        return r;
    }

    TensorSquareU& operator+=(const TensorSquareU& o) {
        for (const auto& [m, v] : o.t_) add_term(m.first, m.second, v);
        return *this;
    }
    TensorSquareU& operator-=(const TensorSquareU& o) {
        for (const auto& [m, v] : o.t_) add_term(m.first, m.second, -v);
        return *this;
    }
    friend TensorSquareU operator+(TensorSquareU a, const TensorSquareU& b) { return a += b; }
    friend TensorSquareU operator-(TensorSquareU a, const TensorSquareU& b) { return a -= b; }
    friend bool operator==(const TensorSquareU& a, const TensorSquareU& b) { return a.t_ == b.t_; }

private:
    const LieAlgebra* alg_;
    int order_;
    std::map<std::pair<PbwMono, PbwMono>, HbarSeries> t_;
};

/// Element of U(g)^{tensor 3} [[hbar]] (cocycle-equation workspace).
class TensorCubeU {
public:
    TensorCubeU() : alg_(nullptr), order_(0) {}
    TensorCubeU(const LieAlgebra* algebra, int order) : alg_(algebra), order_(order) {}
    const std::map<std::array<PbwMono, 3>, HbarSeries>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int order() const { return order_; }

    void add_term(const std::array<PbwMono, 3>& m, const HbarSeries& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = t_.emplace(m, v.extended(order_));
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    TensorCubeU& operator-=(const TensorCubeU& o) {
        for (const auto& [m, v] : o.t_) add_term(m, -v);
        return *this;
    }
    friend TensorCubeU operator-(TensorCubeU a, const TensorCubeU& b) { return a -= b; }

private:
    const LieAlgebra* alg_;
    int order_;
    std::map<std::array<PbwMono, 3>, HbarSeries> t_;
};

/// Coproduct: the algebra morphism with Delta(X) = X tensor 1 + 1 tensor X.
TensorSquareU coproduct(const PBWElement& u);

/// Slotwise product in U tensor U.
TensorSquareU multiply(PbwContext& ctx, const TensorSquareU& a, const TensorSquareU& b);
TensorCubeU multiply(PbwContext& ctx, const TensorCubeU& a, const TensorCubeU& b);

/// Lifts of a twist-style element into U^{tensor 3}.
TensorCubeU coproduct_left(const TensorSquareU& f);    // (Delta tensor id)(f)
TensorCubeU coproduct_right(const TensorSquareU& f);   // (id tensor Delta)(f)
TensorCubeU tensor_with_unit_right(const TensorSquareU& f);  // f tensor 1
TensorCubeU tensor_with_unit_left(const TensorSquareU& f);   // 1 tensor f

/// (eps tensor id) and (id tensor eps) applied to an element of U tensor U.
PBWElement counit_left(const TensorSquareU& f);
PBWElement counit_right(const TensorSquareU& f);

/// Inverse of a unital element 1 tensor 1 + O(hbar) by geometric series.
TensorSquareU invert_unital(PbwContext& ctx, const TensorSquareU& f);
PBWElement invert_unital(PbwContext& ctx, const PBWElement& s);

}  // namespace dq
