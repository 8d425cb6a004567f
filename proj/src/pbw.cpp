#include "dq/pbw.hpp"

#include <algorithm>

namespace dq {

const PBWElement& PbwContext::normalize(const std::vector<int>& word) {
    auto it = normal_forms_.find(word);
    if (it != normal_forms_.end()) return it->second;

    PBWElement result(alg_, order_);
    size_t p = 0;
    bool sorted = true;
    for (size_t q = 0; q + 1 < word.size(); ++q) {
        if (word[q] > word[q + 1]) {
            p = q;
            sorted = false;
            break;
        }
    }
    if (sorted) {
        result.add_term(word, HbarSeries::one(order_));
    } else {
        // e_j e_i = e_i e_j + hbar [e_j, e_i]  (j > i)
        const int j = word[p], i = word[p + 1];
        std::vector<int> swapped(word);
        std::swap(swapped[p], swapped[p + 1]);
        result = normalize(swapped);
        Vec br = alg_->bracket(j, i);
        std::vector<int> reduced;
        reduced.reserve(word.size() - 1);
        reduced.assign(word.begin(), word.begin() + p);
        reduced.push_back(0);
        reduced.insert(reduced.end(), word.begin() + p + 2, word.end());
        for (int k = 0; k < alg_->dim(); ++k) {
            if (br[k] == 0) continue;
            reduced[p] = k;
            const PBWElement& sub = normalize(reduced);
            for (const auto& [m, v] : sub.terms())
                result.add_term(m, hbar_graded_ ? (br[k] * v).shift(1) : br[k] * v);
        }
    }
    return normal_forms_.emplace(word, std::move(result)).first->second;
}

PBWElement PbwContext::multiply(const PBWElement& a, const PBWElement& b) {
    if (a.algebra() != b.algebra()) throw InputError("u_mult: mismatched algebras");
    if (a.order() != b.order()) throw InputError("u_mult: mismatched truncation orders");
    PBWElement out(alg_, order_);
    for (const auto& [ma, va] : a.terms())
        for (const auto& [mb, vb] : b.terms()) {
            std::vector<int> word(ma);
            word.insert(word.end(), mb.begin(), mb.end());
            const PBWElement& nf = normalize(word);
            HbarSeries f = va * vb;
            for (const auto& [m, v] : nf.terms()) out.add_term(m, f * v);
        }
    return out;
}

const PBWElement& PbwContext::symmetrize_monomial(const Expo& expo) {
    auto it = symmetrized_.find(expo);
    if (it != symmetrized_.end()) return it->second;

    std::vector<int> word;
    Scalar repeats(1);
    for (size_t i = 0; i < expo.size(); ++i) {
        for (int m = 0; m < expo[i]; ++m) {
            word.push_back(static_cast<int>(i));
            repeats *= m + 1;  // accumulates prod_i expo_i!
        }
    }
    Scalar k_factorial(1);
    for (size_t m = 2; m <= word.size(); ++m) k_factorial *= static_cast<long>(m);

    // (1/k!) sum over all sigma in S_k = sum over distinct rearrangements,
    // each weighted by (prod_i expo_i!)/k!.
    PBWElement result(alg_, order_);
    const Scalar weight = repeats / k_factorial;
    std::vector<int> perm(word);
    do {
        const PBWElement& nf = normalize(perm);
        for (const auto& [m, v] : nf.terms()) result.add_term(m, weight * v);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return symmetrized_.emplace(expo, std::move(result)).first->second;
}

PBWElement PbwContext::symmetrize(const Poly& f) {
    if (f.nvars() != alg_->dim()) throw InputError("symmetrize: variable count != dim g");
    PBWElement out(alg_, order_);
    for (const auto& [e, v] : f.terms()) {
        const PBWElement& s = symmetrize_monomial(e);
        for (const auto& [m, w] : s.terms()) out.add_term(m, v * w);
    }
    return out;
}

PBWElement PbwContext::symmetrize(const PolySeries& f) {
    PBWElement out(alg_, order_);
    for (int k = 0; k <= std::min(order_, f.order()); ++k) {
        PBWElement part = symmetrize(f[k]);
        for (const auto& [m, v] : part.terms()) out.add_term(m, v.shift(k));
    }
    return out;
}

PolySeries PbwContext::symmetrize_inverse(const PBWElement& u) {
    if (!hbar_graded_)
        throw InputError("symmetrize_inverse: requires the hbar-graded context");
    const int n = alg_->dim();
    PolySeries result(n, order_);
    PBWElement residual = u;
    // P_hbar = id + hbar * (lower degree): each pass strictly raises the
    // minimal hbar-order of the residual.
    for (int pass = 0; pass <= order_ + 1 && !residual.is_zero(); ++pass) {
        PolySeries candidate(n, order_);
        for (const auto& [m, v] : residual.terms()) {
            Expo e(n, 0);
            for (int idx : m) e[idx] += 1;
            for (int k = 0; k <= order_; ++k) candidate[k].add_term(e, v[k]);
        }
        result += candidate;
        residual -= symmetrize(candidate);
    }
    if (!residual.is_zero()) throw MathError("symmetrize_inverse failed to terminate");
    return result;
}

PolySeries PbwContext::gutt_star(const Poly& f, const Poly& g) {
    return symmetrize_inverse(multiply(symmetrize(f), symmetrize(g)));
}

PolySeries PbwContext::gutt_star(const PolySeries& f, const PolySeries& g) {
    return symmetrize_inverse(multiply(symmetrize(f), symmetrize(g)));
}

TensorSquareU coproduct(const PBWElement& u) {
    TensorSquareU out(u.algebra(), u.order());
    for (const auto& [m, v] : u.terms()) {
        const size_t k = m.size();
        // Subsets of a weakly increasing word are weakly increasing: both
        // slots are already in normal form.
        for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
            PbwMono left, right;
            for (size_t p = 0; p < k; ++p)
                (mask >> p & 1 ? left : right).push_back(m[p]);
            out.add_term(left, right, v);
        }
    }
    return out;
}

TensorSquareU multiply(PbwContext& ctx, const TensorSquareU& a, const TensorSquareU& b) {
    TensorSquareU out(a.algebra(), a.order());
    for (const auto& [ma, va] : a.terms())
        for (const auto& [mb, vb] : b.terms()) {
            std::vector<int> w1(ma.first), w2(ma.second);
            w1.insert(w1.end(), mb.first.begin(), mb.first.end());
            w2.insert(w2.end(), mb.second.begin(), mb.second.end());
            const PBWElement& n1 = ctx.normalize(w1);
            const PBWElement& n2 = ctx.normalize(w2);
            HbarSeries f = va * vb;
            for (const auto& [m1, v1] : n1.terms())
                for (const auto& [m2, v2] : n2.terms()) out.add_term(m1, m2, f * v1 * v2);
        }
    return out;
}

TensorCubeU multiply(PbwContext& ctx, const TensorCubeU& a, const TensorCubeU& b) {
    TensorCubeU out(ctx.algebra(), a.order());
    for (const auto& [ma, va] : a.terms())
        for (const auto& [mb, vb] : b.terms()) {
            std::array<const PBWElement*, 3> nf;
            for (int s = 0; s < 3; ++s) {
                std::vector<int> w(ma[s]);
                w.insert(w.end(), mb[s].begin(), mb[s].end());
                nf[s] = &ctx.normalize(w);
            }
            HbarSeries f = va * vb;
            for (const auto& [m0, v0] : nf[0]->terms())
                for (const auto& [m1, v1] : nf[1]->terms()) {
                    HbarSeries g = f * v0 * v1;
                    for (const auto& [m2, v2] : nf[2]->terms())
                        out.add_term({m0, m1, m2}, g * v2);
                }
        }
    return out;
}

TensorCubeU coproduct_left(const TensorSquareU& f) {
    TensorCubeU out(f.algebra(), f.order());
    for (const auto& [m, v] : f.terms()) {
        const PbwMono& m1 = m.first;
        for (size_t mask = 0; mask < (size_t{1} << m1.size()); ++mask) {
            PbwMono a, b;
            for (size_t p = 0; p < m1.size(); ++p)
                (mask >> p & 1 ? a : b).push_back(m1[p]);
            out.add_term({a, b, m.second}, v);
        }
    }
    return out;
}

TensorCubeU coproduct_right(const TensorSquareU& f) {
    TensorCubeU out(f.algebra(), f.order());
    for (const auto& [m, v] : f.terms()) {
        const PbwMono& m2 = m.second;
        for (size_t mask = 0; mask < (size_t{1} << m2.size()); ++mask) {
            PbwMono a, b;
            for (size_t p = 0; p < m2.size(); ++p)
                (mask >> p & 1 ? a : b).push_back(m2[p]);
            out.add_term({m.first, a, b}, v);
        }
    }
    return out;
}

TensorCubeU tensor_with_unit_right(const TensorSquareU& f) {
    TensorCubeU out(f.algebra(), f.order());
    for (const auto& [m, v] : f.terms()) out.add_term({m.first, m.second, {}}, v);
    return out;
}

TensorCubeU tensor_with_unit_left(const TensorSquareU& f) {
    TensorCubeU out(f.algebra(), f.order());
    for (const auto& [m, v] : f.terms()) out.add_term({PbwMono{}, m.first, m.second}, v);
    return out;
}

PBWElement counit_left(const TensorSquareU& f) {
    PBWElement out(f.algebra(), f.order());
    for (const auto& [m, v] : f.terms())
        if (m.first.empty()) out.add_term(m.second, v);
    return out;
}

PBWElement counit_right(const TensorSquareU& f) {
    PBWElement out(f.algebra(), f.order());
    for (const auto& [m, v] : f.terms())
        if (m.second.empty()) out.add_term(m.first, v);
    return out;
}

TensorSquareU invert_unital(PbwContext& ctx, const TensorSquareU& f) {
    TensorSquareU a = f - TensorSquareU::unit(f.algebra(), f.order());
    for (const auto& [m, v] : a.terms())
        if (v[0] != 0) throw MathError("invert_unital: element is not 1 + O(hbar)");
    TensorSquareU inv = TensorSquareU::unit(f.algebra(), f.order());
    TensorSquareU pow = TensorSquareU::unit(f.algebra(), f.order());
    for (int k = 1; k <= f.order(); ++k) {
        pow = multiply(ctx, pow, a);
        if (k % 2 == 1)
            inv -= pow;
        else
            inv += pow;
    }
    return inv;
}

PBWElement invert_unital(PbwContext& ctx, const PBWElement& s) {
    PBWElement a = s - PBWElement::unit(s.algebra(), s.order());
    for (const auto& [m, v] : a.terms())
        if (v[0] != 0) throw MathError("invert_unital: element is not 1 + O(hbar)");
    PBWElement inv = PBWElement::unit(s.algebra(), s.order());
    PBWElement pow = PBWElement::unit(s.algebra(), s.order());
    for (int k = 1; k <= s.order(); ++k) {
        pow = ctx.multiply(pow, a);
        if (k % 2 == 1)
            inv -= pow;
        else
            inv += pow;
    }
    return inv;
}

}  // namespace dq
