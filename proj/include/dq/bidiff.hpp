#pragma once

#include "dq/poly.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace dq {

/// Differential operator with polynomial coefficients:
/// sum of coeff(x) * d^I/dx^I.
class LinDiffOp {
public:
    LinDiffOp() : nvars_(0) {}
    explicit LinDiffOp(int nvars) : nvars_(nvars) {}

    int nvars() const { return nvars_; }
    const std::map<Expo, Poly>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const Expo& deriv, const Poly& coeff) {
        if (coeff.is_zero()) return;
        auto [it, fresh] = t_.emplace(deriv, coeff);
        if (!fresh) {
            it->second += coeff;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    static LinDiffOp identity(int nvars) {
        LinDiffOp op(nvars);
        op.add_term(Expo(nvars, 0), Poly::constant(Scalar(1), nvars));
        return op;
    }

    Poly apply(const Poly& f) const {
        Poly out(nvars_);
        for (const auto& [deriv, coeff] : t_) {
            Poly d = f;
            for (int i = 0; i < nvars_ && !d.is_zero(); ++i)
                for (int m = 0; m < deriv[i]; ++m) d = d.derivative(i);
            out += coeff * d;
        }
        return out;
    }

    LinDiffOp& operator+=(const LinDiffOp& o) {
        for (const auto& [d, c] : o.t_) add_term(d, c);
        return *this;
    }
    friend LinDiffOp operator*(const Scalar& q, const LinDiffOp& a) {
        LinDiffOp r(a.nvars_);
        for (const auto& [d, c] : a.t_) r.add_term(d, q * c);
        return r;
    }
    friend bool operator==(const LinDiffOp& a, const LinDiffOp& b) { return a.t_ == b.t_; }

    int order() const {
        int d = 0;
        for (const auto& [deriv, c] : t_) {
            int s = 0;
            for (int v : deriv) s += v;
            d = std::max(d, s);
        }
        return d;
    }

private:
    int nvars_;
    std::map<Expo, Poly> t_;
};

/// Bidifferential operator: sum of coeff(x) * (d^I f) * (d^J g).
class BiDiffOp {
public:
    BiDiffOp() : nvars_(0) {}
    explicit BiDiffOp(int nvars) : nvars_(nvars) {}

    int nvars() const { return nvars_; }
    const std::map<std::pair<Expo, Expo>, Poly>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const Expo& left, const Expo& right, const Poly& coeff) {
        if (coeff.is_zero()) return;
        auto [it, fresh] = t_.emplace(std::make_pair(left, right), coeff);
        if (!fresh) {
            it->second += coeff;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    static BiDiffOp multiplication(int nvars) {
        BiDiffOp op(nvars);
        op.add_term(Expo(nvars, 0), Expo(nvars, 0), Poly::constant(Scalar(1), nvars));
        return op;
    }

    Poly apply(const Poly& f, const Poly& g) const {
        Poly out(nvars_);
        for (const auto& [key, coeff] : t_) {
            Poly df = f, dg = g;
            for (int i = 0; i < nvars_; ++i) {
                for (int m = 0; m < key.first[i] && !df.is_zero(); ++m) df = df.derivative(i);
                for (int m = 0; m < key.second[i] && !dg.is_zero(); ++m) dg = dg.derivative(i);
            }
            if (!df.is_zero() && !dg.is_zero()) out += coeff * (df * dg);
        }
        return out;
    }

    BiDiffOp& operator+=(const BiDiffOp& o) {
        for (const auto& [k, c] : o.t_) add_term(k.first, k.second, c);
        return *this;
    }
    BiDiffOp& operator-=(const BiDiffOp& o) {
        for (const auto& [k, c] : o.t_) add_term(k.first, k.second, -c);
        return *this;
    }
    friend bool operator==(const BiDiffOp& a, const BiDiffOp& b) { return a.t_ == b.t_; }

    /// Max derivative order per slot.
    std::pair<int, int> orders() const {
        int l = 0, r = 0;
        for (const auto& [k, c] : t_) {
            int sl = 0, sr = 0;
            for (int v : k.first) sl += v;
            for (int v : k.second) sr += v;
            l = std::max(l, sl);
            r = std::max(r, sr);
        }
        return {l, r};
    }

private:
    int nvars_;
    std::map<std::pair<Expo, Expo>, Poly> t_;
};

/// Star product as an hbar-series of bidifferential operators.  B[0] is
/// multiplication.  When coeff_valid_degree is set, coefficients are jets
/// valid only up to that total polynomial degree, and all residual checks
/// are performed modulo higher-degree terms.
struct StarProduct {
    int nvars = 0;
    int order = 0;
    std::vector<BiDiffOp> b;
    std::optional<int> coeff_valid_degree;

    PolySeries apply(const Poly& f, const Poly& g) const {
        PolySeries out(nvars, order);
        for (int k = 0; k <= order; ++k) out[k] = b[k].apply(f, g);
        if (coeff_valid_degree) out = out.truncated_degree(*coeff_valid_degree);
        return out;
    }

    PolySeries apply(const PolySeries& f, const PolySeries& g) const {
        PolySeries out(nvars, std::min({order, f.order(), g.order()}));
        for (int i = 0; i <= out.order(); ++i)
            for (int j = 0; i + j <= out.order(); ++j)
                for (int k = 0; i + j + k <= out.order(); ++k) out[i + j + k] += b[k].apply(f[i], g[j]);
        if (coeff_valid_degree) out = out.truncated_degree(*coeff_valid_degree);
        return out;
    }

    /// The antisymmetric part of B1 (semiclassical limit, one half of the
    /// Poisson bracket).
    BiDiffOp semiclassical_antisym() const {
        BiDiffOp out(nvars);
        for (const auto& [k, c] : b[1].terms()) {
            out.add_term(k.first, k.second, Scalar(1, 2) * c);
            out.add_term(k.second, k.first, Scalar(-1, 2) * c);
        }
        return out;
    }
};

/// Associativity report: the first nonzero residual of
/// (f*g)*h - f*(g*h) over all monomial triples of total degree <= degree.
struct AssocReport {
    bool ok = true;
    int hbar_order = -1;
    std::array<Expo, 3> triple{};
    Poly residual;
};

AssocReport assoc_residual(const StarProduct& s, int order, int degree);

/// Builds a StarProduct from explicit bidifferential operators, validating
/// associativity on the given window.
StarProduct star_from_bidiff(std::vector<BiDiffOp> b, std::optional<int> coeff_valid_degree,
                             int check_degree);

/// Exact triangular extraction of the bidifferential-operator form of a
/// bilinear map from its action on monomials, assuming derivative order
/// <= max_order in each slot.  The result is verified against the map on
/// all monomial pairs up to verify_degree; a MathError is thrown if the
/// order bound is too small.
BiDiffOp bidiff_extract(const std::function<Poly(const Expo&, const Expo&)>& fn, int nvars,
                        int max_order, int verify_degree,
                        std::optional<int> valid_degree = std::nullopt);

/// All exponent vectors over nvars with total degree <= degree (graded
/// lexicographic order, constant first).
std::vector<Expo> monomials_up_to(int nvars, int degree);

/// Operator composition (a then b is b(a(f)), this returns a after b:
/// compose(a, b)(f) = a(b(f))) via the Leibniz rule.  When trunc_degree
/// is nonnegative, coefficient polynomials are truncated to that total
/// degree (jet composition).
LinDiffOp compose(const LinDiffOp& a, const LinDiffOp& b, int trunc_degree = -1);

/// The bidifferential operator f, g -> a(f) * b(g), coefficients
/// optionally truncated.
BiDiffOp tensor_bidiff(const LinDiffOp& a, const LinDiffOp& b, int trunc_degree = -1);

}  // namespace dq
