#pragma once

#include "dq/scalar.hpp"
#include "dq/series.hpp"

#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace dq {

using Expo = std::vector<int>;

/// Multivariate polynomial with exact rational coefficients over a fixed
/// number of variables.  No zero coefficients are stored.
class Poly {
public:
    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}
    static Poly constant(const Scalar& v, int nvars) {
        Poly p(nvars);
        p.add_term(Expo(nvars, 0), v);
        return p;
    }
    static Poly variable(int i, int nvars) {
        Poly p(nvars);
        Expo e(nvars, 0);
        e[i] = 1;
        p.add_term(e, Scalar(1));
        return p;
    }
    static Poly monomial(const Expo& e, const Scalar& v) {
        Poly p(static_cast<int>(e.size()));
        p.add_term(e, v);
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Expo, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const Expo& e, const Scalar& v) {
        if (v == 0) return;
        auto [it, fresh] = t_.emplace(e, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) t_.erase(it);
        }
    }

    Scalar coeff(const Expo& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? Scalar(0) : it->second;
    }
    Scalar constant_term() const { return coeff(Expo(nvars_, 0)); }

    int degree() const {
        int d = -1;
        for (const auto& [e, v] : t_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
        return d;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, v] : o.t_) add_term(e, v);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [e, v] : o.t_) add_term(e, -v);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly r(a.nvars_);
        for (const auto& [e, v] : a.t_) r.t_.emplace(e, -v);
        return r;
    }
    friend Poly operator*(const Scalar& q, const Poly& a) {
        Poly r(a.nvars_);
        if (q == 0) return r;
        for (const auto& [e, v] : a.t_) r.t_.emplace(e, q * v);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.nvars_);
        for (const auto& [ea, va] : a.t_)
            for (const auto& [eb, vb] : b.t_) {
                Expo e(ea);
                for (int i = 0; i < r.nvars_; ++i) e[i] += eb[i];
                r.add_term(e, va * vb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

    Poly derivative(int var) const {
        Poly r(nvars_);
        for (const auto& [e, v] : t_) {
            if (e[var] == 0) continue;
            Expo d(e);
            d[var] -= 1;
            r.add_term(d, Scalar(e[var]) * v);
        }
        return r;
    }

    /// Drops every term of total degree above max_degree.
    Poly truncated(int max_degree) const {
        Poly r(nvars_);
        for (const auto& [e, v] : t_)
            if (std::accumulate(e.begin(), e.end(), 0) <= max_degree) r.t_.emplace(e, v);
        return r;
    }

    /// Substitutes images[i] for variable i, truncating at max_degree.
    /// The images live in a (possibly different) variable set.
    Poly substituted(const std::vector<Poly>& images, int max_degree) const;

    /// Fixes variable `var` to the scalar `value`, removing it from the
    /// variable set (used for the u = 1 restriction).
    Poly eliminated(int var, const Scalar& value) const {
        Poly r(nvars_ - 1);
        for (const auto& [e, v] : t_) {
            Scalar c = v;
            for (int m = 0; m < e[var]; ++m) c *= value;
            Expo d;
            d.reserve(nvars_ - 1);
            for (int i = 0; i < nvars_; ++i)
                if (i != var) d.push_back(e[i]);
            r.add_term(d, c);
        }
        return r;
    }

    /// Re-embeds into a larger variable set, keeping variable order.
    Poly embedded(int nvars) const {
        Poly r(nvars);
        for (const auto& [e, v] : t_) {
            Expo d(e);
            d.resize(nvars, 0);
            r.t_.emplace(d, v);
        }
        return r;
    }

    std::string str(const std::vector<std::string>& var_names) const;

private:
    int nvars_;
    std::map<Expo, Scalar> t_;
};

inline Poly Poly::substituted(const std::vector<Poly>& images, int max_degree) const {
    int target_nvars = images.empty() ? 0 : images[0].nvars();
    Poly r(target_nvars);
    for (const auto& [e, v] : t_) {
        Poly term = Poly::constant(v, target_nvars);
        for (int i = 0; i < nvars_ && !term.is_zero(); ++i)
            for (int m = 0; m < e[i]; ++m) term = (term * images[i]).truncated(max_degree);
        r += term;
    }
    return r;
}

inline std::string Poly::str(const std::vector<std::string>& var_names) const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [e, v] : t_) {
        if (!out.empty()) out += " + ";
        out += to_string(v);
        for (int i = 0; i < nvars_; ++i)
            for (int m = 0; m < e[i]; ++m) out += "*" + var_names[i];
    }
    return out;
}

/// hbar-series whose coefficients are polynomials (the result type of star
/// products acting on polynomial arguments).
class PolySeries {
public:
    PolySeries() : order_(0), c_(1) {}
    PolySeries(int nvars, int order) : order_(order), c_(order + 1, Poly(nvars)) {}
    static PolySeries from_poly(const Poly& p, int order) {
        PolySeries s(p.nvars(), order);
        s.c_[0] = p;
        return s;
    }

    int order() const { return order_; }
    int nvars() const { return c_[0].nvars(); }
    const Poly& operator[](int k) const { return c_[k]; }
    Poly& operator[](int k) { return c_[k]; }

    bool is_zero() const {
        for (const auto& p : c_)
            if (!p.is_zero()) return false;
        return true;
    }

    PolySeries& operator+=(const PolySeries& o) {
        truncate(std::min(order_, o.order_));
        for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
        return *this;
    }
    PolySeries& operator-=(const PolySeries& o) {
        truncate(std::min(order_, o.order_));
        for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend PolySeries operator+(PolySeries a, const PolySeries& b) { return a += b; }
    friend PolySeries operator-(PolySeries a, const PolySeries& b) { return a -= b; }
    friend PolySeries operator*(const PolySeries& a, const PolySeries& b) {
        PolySeries r(a.nvars(), std::min(a.order_, b.order_));
        for (int i = 0; i <= a.order_; ++i)
            for (int j = 0; i + j <= r.order_ && j <= b.order_; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        return r;
    }
    friend PolySeries operator*(const HbarSeries& q, const PolySeries& a) {
        PolySeries r(a.nvars(), std::min(a.order_, q.order()));
        for (int i = 0; i <= q.order(); ++i)
            for (int j = 0; i + j <= r.order_; ++j) r.c_[i + j] += q[i] * a.c_[j];
        return r;
    }
    friend PolySeries operator*(const Scalar& q, const PolySeries& a) {
        PolySeries r(a.nvars(), a.order_);
        for (int k = 0; k <= a.order_; ++k) r.c_[k] = q * a.c_[k];
        return r;
    }
    friend bool operator==(const PolySeries& a, const PolySeries& b) {
        if (a.order_ != b.order_) return false;
        return a.c_ == b.c_;
    }

    PolySeries shift(int k) const {
        PolySeries r(nvars(), order_);
        for (int i = 0; i + k <= order_; ++i) r.c_[i + k] = c_[i];
        return r;
    }

    void truncate(int order) {
        if (order < order_) {
            order_ = order;
            c_.resize(order + 1, Poly(0));
        }
    }

    /// Degree-truncates every coefficient (jet tracking).
    PolySeries truncated_degree(int max_degree) const {
        PolySeries r(nvars(), order_);
        for (int k = 0; k <= order_; ++k) r.c_[k] = c_[k].truncated(max_degree);
        return r;
    }

private:
    int order_;
    std::vector<Poly> c_;
};

}  // namespace dq
