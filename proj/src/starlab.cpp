#include "dq/starlab.hpp"

namespace dq {

PoissonBivector linear_poisson(const CentralExtension& ext) {
    const int n = ext.base_dim;
    PoissonBivector pi;
    pi.nvars = n + 1;
    for (int i = 0; i < n + 1; ++i)
        for (int j = i + 1; j < n + 1; ++j) {
            // {x_i, x_j} = x_k C^k_{ij} - u w_{ij}, with u = x_{n+1} and the
            // extension bracket folding both terms into h's constants.
            Poly p(n + 1);
            Vec br = ext.h.bracket(i, j);
            for (int k = 0; k < n + 1; ++k)
                if (br[k] != 0) p += br[k] * Poly::variable(k, n + 1);
            if (!p.is_zero()) pi.comp.emplace(std::make_pair(i, j), p);
        }
    // The bivector of a Lie algebra always satisfies Jacobi; verify exactly.
    for (int i = 0; i < n + 1; ++i)
        for (int j = i + 1; j < n + 1; ++j)
            for (int k = j + 1; k < n + 1; ++k)
                if (!pi.jacobi_residual(i, j, k).is_zero())
                    throw MathError("linear_poisson: Jacobi residual nonzero");
    return pi;
}

StarProduct gutt_star_product(PbwContext& ctx, int check_degree) {
    const int m = ctx.algebra()->dim();
    const int order = ctx.order();
    // Cache the star products of monomial pairs used by the extraction.
    std::map<std::pair<Expo, Expo>, PolySeries> cache;
    auto star = [&](const Expo& a, const Expo& b) -> const PolySeries& {
        auto key = std::make_pair(a, b);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, ctx.gutt_star(Poly::monomial(a, Scalar(1)),
                                                  Poly::monomial(b, Scalar(1))))
                     .first;
        return it->second;
    };
    StarProduct s;
    s.nvars = m;
    s.order = order;
    for (int k = 0; k <= order; ++k) {
        auto fn = [&](const Expo& a, const Expo& b) { return star(a, b)[k]; };
        s.b.push_back(bidiff_extract(fn, m, k, check_degree));
    }
    return s;
}

bool tangentiality_check(const StarProduct& s, int degree) {
    const int m = s.nvars;
    const int u = m - 1;
    Poly p = Poly::variable(u, m) - Poly::constant(Scalar(1), m);
    auto monos = monomials_up_to(m, degree);
    for (const auto& ef : monos)
        for (const auto& eg : monos) {
            Poly f = Poly::monomial(ef, Scalar(1));
            Poly g = Poly::monomial(eg, Scalar(1));
            PolySeries prod = s.apply(p * f, g);
            for (int k = 0; k <= prod.order(); ++k)
                if (!prod[k].eliminated(u, Scalar(1)).is_zero()) return false;
        }
    return true;
}

StarProduct restrict_to_D(const StarProduct& s, int tangentiality_degree) {
    if (!tangentiality_check(s, tangentiality_degree))
        throw MathError("restrict_to_D: star product is not tangential to {u = 1}");
    const int m = s.nvars;
    const int u = m - 1;
    StarProduct out;
    out.nvars = m - 1;
    out.order = s.order;
    out.coeff_valid_degree = s.coeff_valid_degree;
    for (const auto& bk : s.b) {
        BiDiffOp rb(m - 1);
        for (const auto& [key, coeff] : bk.terms()) {
            Poly c1 = coeff.eliminated(u, Scalar(1));
            if (key.first[u] != 0 || key.second[u] != 0) {
                if (!c1.is_zero())
                    throw MathError("restrict_to_D: u-derivative term survives at u = 1");
                continue;
            }
            Expo l(key.first.begin(), key.first.end() - 1);
            Expo r(key.second.begin(), key.second.end() - 1);
            rb.add_term(l, r, c1);
        }
        out.b.push_back(std::move(rb));
    }
    return out;
}

LinDiffOp dito_operator(const LieAlgebra& h, int r) {
    if (r < 1) throw InputError("dito_operator: r must be >= 1");
    const int n = h.dim();
    std::vector<Mat> ads;
    for (int i = 0; i < n; ++i) ads.push_back(h.ad(i));
    LinDiffOp op(n);
    std::vector<int> idx(r, 0);
    while (true) {
        Mat prod = ads[idx[0]];
        for (int p = 1; p < r; ++p) {
            Mat next(n, Vec(n, Scalar(0)));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    Scalar v(0);
                    for (int c = 0; c < n; ++c) v += prod[a][c] * ads[idx[p]][c][b];
                    next[a][b] = v;
                }
            prod = std::move(next);
        }
        Scalar tr(0);
        for (int a = 0; a < n; ++a) tr += prod[a][a];
        if (tr != 0) {
            Expo e(n, 0);
            for (int p = 0; p < r; ++p) e[idx[p]] += 1;
            op.add_term(e, Poly::constant(tr, n));
        }
        int p = r - 1;
        while (p >= 0 && idx[p] == n - 1) idx[p--] = 0;
        if (p < 0) break;
        ++idx[p];
    }
    return op;
}

std::vector<LinDiffOp> coadjoint_derivations(const LieAlgebra& g) {
    const int n = g.dim();
    std::vector<LinDiffOp> out;
    for (int i = 0; i < n; ++i) {
        LinDiffOp v(n);
        for (int j = 0; j < n; ++j) {
            // ad*_{e_i}: x_j -> -C^k_{ij} x_k
            Poly c(n);
            for (int k = 0; k < n; ++k)
                if (g.c(i, j, k) != 0) c -= g.c(i, j, k) * Poly::variable(k, n);
            if (!c.is_zero()) {
                Expo d(n, 0);
                d[j] = 1;
                v.add_term(d, c);
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace dq
