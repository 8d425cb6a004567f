#include "dq/chart.hpp"

namespace dq {

PolyMat ad_matrix_poly(const LieAlgebra& g) {
    const int n = g.dim();
    PolyMat m(n, std::vector<Poly>(n, Poly(n)));
    for (int k = 0; k < n; ++k)
        for (int b = 0; b < n; ++b)
            for (int i = 0; i < n; ++i)
                if (g.c(i, b, k) != 0) m[k][b] += g.c(i, b, k) * Poly::variable(i, n);
    return m;
}

static PolyMat poly_mat_mul(const PolyMat& a, const PolyMat& b, int maxdeg) {
    const int n = (int)a.size();
    const int nv = a[0][0].nvars();
    PolyMat out(n, std::vector<Poly>(n, Poly(nv)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Poly v(nv);
            for (int k = 0; k < n; ++k)
                if (!a[i][k].is_zero() && !b[k][j].is_zero()) v += a[i][k] * b[k][j];
            out[i][j] = v.truncated(maxdeg);
        }
    return out;
}

PolyMat matrix_series(const std::vector<Scalar>& coeffs, const PolyMat& m, int maxdeg) {
    const int n = (int)m.size();
    const int nv = m[0][0].nvars();
    PolyMat out(n, std::vector<Poly>(n, Poly(nv)));
    PolyMat power(n, std::vector<Poly>(n, Poly(nv)));
    for (int i = 0; i < n; ++i) power[i][i] = Poly::constant(Scalar(1), nv);
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) {
            power = poly_mat_mul(power, m, maxdeg);
            bool zero = true;
            for (int i = 0; i < n && zero; ++i)
                for (int j = 0; j < n && zero; ++j) zero = power[i][j].is_zero();
            if (zero) break;
        }
        if (coeffs[k] == 0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i][j] += coeffs[k] * power[i][j];
    }
    return out;
}

std::vector<Scalar> invariant_frame_series(int maxdeg) {
    // Invert q(z) = (1 - e^{-z})/z = sum (-z)^m / (m+1)!.
    std::vector<Scalar> q(maxdeg + 1), c(maxdeg + 1, Scalar(0));
    Integer fact = 1;
    for (int m = 0; m <= maxdeg; ++m) {
        fact *= (m + 1);
        q[m] = Scalar(((m % 2) ? Integer(-1) : Integer(1)), fact);
    }
    c[0] = Scalar(1);
    for (int m = 1; m <= maxdeg; ++m) {
        Scalar acc(0);
        for (int i = 0; i < m; ++i) acc += c[i] * q[m - i];
        c[m] = -acc;
    }
    return c;
}

Poly ExpChart::pullback(const Poly& f) const { return f.substituted(phi, jet_degree); }

Poly ExpChart::pushforward(const Poly& f) const { return f.substituted(psi, jet_degree); }

ExpChart exp_chart(const CentralExtension& ext, int jet_degree) {
    const int n = ext.base_dim;
    const int m = n + 1;
    // ad of the generic base point (X, 0) in h, entries linear in X_1..X_n.
    PolyMat ad(m, std::vector<Poly>(m, Poly(n)));
    for (int k = 0; k < m; ++k)
        for (int b = 0; b < m; ++b)
            for (int i = 0; i < n; ++i)
                if (ext.h.c(i, b, k) != 0) ad[k][b] += ext.h.c(i, b, k) * Poly::variable(i, n);

    std::vector<Scalar> expc(jet_degree + 1);
    Integer fact = 1;
    for (int d = 0; d <= jet_degree; ++d) {
        if (d > 0) fact *= d;
        expc[d] = Scalar(((d % 2) ? Integer(-1) : Integer(1)), fact);
    }
    PolyMat e = matrix_series(expc, ad, jet_degree);

    ExpChart ch;
    ch.base_dim = n;
    ch.jet_degree = jet_degree;
    // The orbit coordinates: x_a(X) = <C, exp(-ad_X) e_a>; the contact
    // covector picks out the last row.  The level coordinate stays at 1.
    for (int a = 0; a < n; ++a) ch.phi.push_back(e[n][a]);
    if (!(e[n][n] == Poly::constant(Scalar(1), n)))
        throw MathError("exp_chart: level coordinate not fixed by the chart");

    ch.linear = Mat(n, Vec(n, Scalar(0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Expo eb(n, 0);
            eb[b] = 1;
            ch.linear[a][b] = ch.phi[a].coeff(eb);
        }
    // Invert the linear part exactly.
    Mat inv(n, Vec(n, Scalar(0)));
    {
        Mat a = ch.linear;
        Mat id(n, Vec(n, Scalar(0)));
        for (int i = 0; i < n; ++i) id[i][i] = Scalar(1);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (a[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw MathError("exp_chart: chart differential is singular");
            std::swap(a[piv], a[col]);
            std::swap(id[piv], id[col]);
            Scalar d = a[col][col];
            for (int c = 0; c < n; ++c) {
                a[col][c] /= d;
                id[col][c] /= d;
            }
            for (int r = 0; r < n; ++r)
                if (r != col && a[r][col] != 0) {
                    Scalar f = a[r][col];
                    for (int c = 0; c < n; ++c) {
                        a[r][c] -= f * a[col][c];
                        id[r][c] -= f * id[col][c];
                    }
                }
        }
        inv = id;
    }

    // psi by iteration: X = A^{-1} (x - N(X)), N = phi - A X.
    std::vector<Poly> nonlin;
    for (int a = 0; a < n; ++a) {
        Poly na = ch.phi[a];
        for (int b = 0; b < n; ++b)
            na -= ch.linear[a][b] * Poly::variable(b, n);
        nonlin.push_back(na);
    }
    std::vector<Poly> psi(n, Poly(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (inv[a][b] != 0) psi[a] += inv[a][b] * Poly::variable(b, n);
    for (int it = 0; it < jet_degree; ++it) {
        std::vector<Poly> next(n, Poly(n));
        for (int a = 0; a < n; ++a) {
            Poly acc(n);
            for (int b = 0; b < n; ++b) {
                Poly inner = Poly::variable(b, n) - nonlin[b].substituted(psi, jet_degree);
                if (inv[a][b] != 0) acc += inv[a][b] * inner;
            }
            next[a] = acc.truncated(jet_degree);
        }
        if (next == psi) break;
        psi = std::move(next);
    }
    ch.psi = psi;

    // Verify both compositions to the jet degree.
    for (int a = 0; a < n; ++a) {
        if (!(ch.psi[a].substituted(ch.phi, jet_degree) == Poly::variable(a, n)))
            throw MathError("exp_chart: psi(phi) != id to the jet degree");
        if (!(ch.phi[a].substituted(ch.psi, jet_degree) == Poly::variable(a, n)))
            throw MathError("exp_chart: phi(psi) != id to the jet degree");
    }
    return ch;
}

std::vector<LinDiffOp> invariant_frame(const LieAlgebra& g, int jet_degree, bool left) {
    const int n = g.dim();
    std::vector<Scalar> c = invariant_frame_series(jet_degree);
    if (!left)
        for (size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    PolyMat m = matrix_series(c, ad_matrix_poly(g), jet_degree);
    std::vector<LinDiffOp> frame;
    for (int i = 0; i < n; ++i) {
        LinDiffOp li(n);
        for (int j = 0; j < n; ++j)
            if (!m[j][i].is_zero()) {
                Expo d(n, 0);
                d[j] = 1;
                li.add_term(d, m[j][i]);
            }
        frame.push_back(std::move(li));
    }
    return frame;
}

}  // namespace dq
