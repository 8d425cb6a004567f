#pragma once

#include "dq/scalar.hpp"

#include <algorithm>
#include <vector>

namespace dq {

/// Formal power series in hbar truncated at a fixed order N.  The
/// truncation order is carried explicitly; combining series of different
/// orders truncates to the minimum.
class HbarSeries {
public:
    HbarSeries() : order_(0), c_(1) {}
    explicit HbarSeries(int order) : order_(order), c_(order + 1) {
        if (order < 0) throw InputError("negative truncation order");
    }
    static HbarSeries constant(const Scalar& v, int order) {
        HbarSeries s(order);
        s.c_[0] = v;
        return s;
    }
    static HbarSeries one(int order) { return constant(Scalar(1), order); }
    /// v * hbar^k (zero if k exceeds the truncation order).
    static HbarSeries monomial(const Scalar& v, int k, int order) {
        HbarSeries s(order);
        if (k <= order) s.c_[k] = v;
        return s;
    }

    int order() const { return order_; }
    const Scalar& operator[](int k) const { return c_[k]; }
    Scalar& operator[](int k) { return c_[k]; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Scalar& q) { return q == 0; });
    }

    HbarSeries& operator+=(const HbarSeries& o) {
        truncate(std::min(order_, o.order_));
        for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
        return *this;
    }
    HbarSeries& operator-=(const HbarSeries& o) {
        truncate(std::min(order_, o.order_));
        for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
    friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }
    friend HbarSeries operator-(const HbarSeries& a) {
        HbarSeries r(a.order_);
        for (int k = 0; k <= a.order_; ++k) r.c_[k] = -a.c_[k];
        return r;
    }

    /// Cauchy product truncated at min(Na, Nb).
    friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
        HbarSeries r(std::min(a.order_, b.order_));
        for (int i = 0; i <= r.order_; ++i)
            for (int j = 0; i + j <= r.order_ && j <= b.order_; ++j)
                if (i <= a.order_) r.c_[i + j] += a.c_[i] * b.c_[j];
        return r;
    }
    HbarSeries& operator*=(const HbarSeries& o) { return *this = *this * o; }

    friend HbarSeries operator*(const Scalar& q, const HbarSeries& a) {
        HbarSeries r(a.order_);
        for (int k = 0; k <= a.order_; ++k) r.c_[k] = q * a.c_[k];
        return r;
    }

    /// Multiplication by hbar^k (shift, dropping terms beyond N).
    HbarSeries shift(int k) const {
        HbarSeries r(order_);
        for (int i = 0; i + k <= order_; ++i) r.c_[i + k] = c_[i];
        return r;
    }

    /// Division by hbar^k; the discarded low coefficients must vanish.
    HbarSeries unshift(int k) const {
        for (int i = 0; i < k && i <= order_; ++i)
            if (c_[i] != 0) throw MathError("series not divisible by hbar^" + std::to_string(k));
        HbarSeries r(order_);
        for (int i = k; i <= order_; ++i) r.c_[i - k] = c_[i];
        return r;
    }

    void truncate(int order) {
        if (order < order_) {
            order_ = order;
            c_.resize(order + 1);
        }
    }
    /// Re-embeds into a longer truncation window (new coefficients zero).
    HbarSeries extended(int order) const {
        HbarSeries r(order);
        for (int k = 0; k <= std::min(order, order_); ++k) r.c_[k] = c_[k];
        return r;
    }

    friend bool operator==(const HbarSeries& a, const HbarSeries& b) {
        int n = std::max(a.order_, b.order_);
        for (int k = 0; k <= n; ++k) {
            Scalar x = k <= a.order_ ? a.c_[k] : Scalar(0);
            Scalar y = k <= b.order_ ? b.c_[k] : Scalar(0);
            if (x != y) return false;
        }
        return true;
    }

private:
    int order_;
    std::vector<Scalar> c_;
};

}  // namespace dq
