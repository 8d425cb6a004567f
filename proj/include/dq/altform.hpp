#pragma once

#include "dq/scalar.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace dq {

/// Alternating k-tensor over an n-dimensional space, stored on strictly
/// increasing index tuples (0-based).  Used both for forms in
/// Lambda^k(g*) and for multivectors in Lambda^k(g).
class AltForm {
public:
    AltForm() : nvars_(0), degree_(0) {}
    AltForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {}

    static AltForm wedge2(int i, int j, const Scalar& v, int nvars) {
        AltForm f(nvars, 2);
        f.add({i, j}, v);
        return f;
    }

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const std::map<std::vector<int>, Scalar>& components() const { return comp_; }
    bool is_zero() const { return comp_.empty(); }

    /// Adds v on the (not necessarily sorted) index tuple, folding in the
    /// permutation sign; tuples with repeated indices contribute nothing.
    void add(std::vector<int> idx, Scalar v) {
        if (v == 0) return;
        int sign = sort_sign(idx);
        if (sign == 0) return;
        if (sign < 0) v = -v;
        auto [it, fresh] = comp_.emplace(std::move(idx), v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) comp_.erase(it);
        }
    }

    /// Component on an arbitrary tuple (with sign; 0 on repeats).
    Scalar at(std::vector<int> idx) const {
        int sign = sort_sign(idx);
        if (sign == 0) return Scalar(0);
        auto it = comp_.find(idx);
        if (it == comp_.end()) return Scalar(0);
        return sign < 0 ? Scalar(-it->second) : it->second;
    }

    AltForm& operator+=(const AltForm& o) {
        for (const auto& [e, v] : o.comp_) add(e, v);
        return *this;
    }
    AltForm& operator-=(const AltForm& o) {
        for (const auto& [e, v] : o.comp_) add(e, -v);
        return *this;
    }
    friend AltForm operator+(AltForm a, const AltForm& b) { return a += b; }
    friend AltForm operator-(AltForm a, const AltForm& b) { return a -= b; }
    friend AltForm operator*(const Scalar& q, const AltForm& a) {
        AltForm r(a.nvars_, a.degree_);
        if (q == 0) return r;
        for (const auto& [e, v] : a.comp_) r.comp_.emplace(e, q * v);
        return r;
    }
    friend bool operator==(const AltForm& a, const AltForm& b) { return a.comp_ == b.comp_; }

    /// Full antisymmetric matrix of a degree-2 form.
    std::vector<std::vector<Scalar>> matrix() const {
        std::vector<std::vector<Scalar>> m(nvars_, std::vector<Scalar>(nvars_, Scalar(0)));
        for (const auto& [e, v] : comp_) {
            m[e[0]][e[1]] = v;
            m[e[1]][e[0]] = -v;
        }
        return m;
    }

    /// Returns the sign of the sorting permutation, or 0 on repeated
    /// indices.  Sorts idx in place.
    static int sort_sign(std::vector<int>& idx) {
        int sign = 1;
        for (size_t i = 1; i < idx.size(); ++i)
            for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
                std::swap(idx[j], idx[j - 1]);
                sign = -sign;
            }
        for (size_t i = 1; i < idx.size(); ++i)
            if (idx[i] == idx[i - 1]) return 0;
        return sign;
    }

private:
    int nvars_;
    int degree_;
    std::map<std::vector<int>, Scalar> comp_;
};

/// All strictly increasing k-tuples from {0..n-1}, in lexicographic order.
inline std::vector<std::vector<int>> increasing_tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        if (k == 0) break;
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace dq
