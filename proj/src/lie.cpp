#include "dq/lie.hpp"

#include <algorithm>

namespace dq {

LieAlgebra::LieAlgebra(int dim, std::vector<std::string> basis_labels)
    : n_(dim), labels_(std::move(basis_labels)), c_(static_cast<size_t>(dim) * dim * dim) {
    if (dim < 0) throw InputError("negative dimension");
    if (labels_.empty()) {
        for (int i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i + 1));
    }
    if (static_cast<int>(labels_.size()) != dim) throw InputError("basis label count != dim");
}

void LieAlgebra::set_structure(int i, int j, int k, const Scalar& v) {
    if (i < 0 || j < 0 || k < 0 || i >= n_ || j >= n_ || k >= n_)
        throw InputError("structure constant index out of range");
    if (i >= j) throw InputError("structure constants must be given for i < j");
    c_[(i * n_ + j) * n_ + k] = v;
    c_[(j * n_ + i) * n_ + k] = -v;
}

Vec LieAlgebra::bracket(int i, int j) const {
    Vec out(n_, Scalar(0));
    for (int k = 0; k < n_; ++k) out[k] = c(i, j, k);
    return out;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
    Vec out(n_, Scalar(0));
    for (int i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (y[j] == 0) continue;
            Scalar f = x[i] * y[j];
            for (int k = 0; k < n_; ++k) out[k] += f * c(i, j, k);
        }
    }
    return out;
}

Mat LieAlgebra::ad(int i) const {
    Mat m(n_, Vec(n_, Scalar(0)));
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) m[k][j] = c(i, j, k);
    return m;
}

std::vector<JacobiViolation> jacobi_check(const LieAlgebra& g) {
    std::vector<JacobiViolation> out;
    const int n = g.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Vec ei(n, Scalar(0)), ej(n, Scalar(0)), ek(n, Scalar(0));
                ei[i] = ej[j] = ek[k] = Scalar(1);
                Vec r = g.bracket(g.bracket(ei, ej), ek);
                Vec s = g.bracket(g.bracket(ej, ek), ei);
                Vec t = g.bracket(g.bracket(ek, ei), ej);
                bool zero = true;
                for (int m = 0; m < n; ++m) {
                    r[m] += s[m] + t[m];
                    if (r[m] != 0) zero = false;
                }
                if (!zero) out.push_back({i, j, k, r});
            }
    return out;
}

AltForm ce_differential(const AltForm& alpha, const LieAlgebra& g) {
    const int n = g.dim();
    const int k = alpha.degree();
    AltForm out(n, k + 1);
    if (k + 1 > n) return out;  // degree overflow -> zero form
    for (const auto& tuple : increasing_tuples(n, k + 1)) {
        Scalar val(0);
        for (int p = 0; p <= k; ++p)
            for (int q = p + 1; q <= k; ++q) {
                Vec br = g.bracket(tuple[p], tuple[q]);
                std::vector<int> rest;
                rest.reserve(k + 1);
                rest.push_back(0);  // placeholder for the bracket slot
                for (int m = 0; m <= k; ++m)
                    if (m != p && m != q) rest.push_back(tuple[m]);
                Scalar term(0);
                for (int b = 0; b < n; ++b) {
                    if (br[b] == 0) continue;
                    rest[0] = b;
                    term += br[b] * alpha.at(rest);
                }
                // Sign (-1)^{p+q+1}: on 1-forms (delta alpha)(X,Y) =
                // alpha([X,Y]), so that delta C = -p* omega on the
                // adapted extension.
                if ((p + q) % 2 == 0) term = -term;
                val += term;
            }
        out.add(tuple, val);
    }
    return out;
}

namespace {

// Matrix of delta_k : Lambda^k -> Lambda^{k+1} in the increasing-tuple bases.
Mat ce_matrix(const LieAlgebra& g, int k) {
    const int n = g.dim();
    auto dom = increasing_tuples(n, k);
    auto cod = increasing_tuples(n, k + 1);
    std::map<std::vector<int>, int> cod_index;
    for (size_t i = 0; i < cod.size(); ++i) cod_index[cod[i]] = static_cast<int>(i);
    Mat m(cod.size(), Vec(dom.size(), Scalar(0)));
    for (size_t c = 0; c < dom.size(); ++c) {
        AltForm basis(n, k);
        basis.add(dom[c], Scalar(1));
        AltForm img = ce_differential(basis, g);
        for (const auto& [idx, v] : img.components()) m[cod_index[idx]][c] = v;
    }
    return m;
}

AltForm form_from_vector(const Vec& v, int n, int k) {
    AltForm f(n, k);
    auto tuples = increasing_tuples(n, k);
    for (size_t i = 0; i < tuples.size(); ++i) f.add(tuples[i], v[i]);
    return f;
}

Vec vector_from_form(const AltForm& f, int n, int k) {
    auto tuples = increasing_tuples(n, k);
    Vec v(tuples.size(), Scalar(0));
    for (size_t i = 0; i < tuples.size(); ++i) v[i] = f.at(tuples[i]);
    return v;
}

}  // namespace

Cohomology ce_cohomology(const LieAlgebra& g, int k) {
    const int n = g.dim();
    if (k < 0 || k > n) throw InputError("cohomology degree out of range");
    auto dom = increasing_tuples(n, k);
    const int dim_k = static_cast<int>(dom.size());

    Mat dk = ce_matrix(g, k);
    std::vector<Vec> kernel;
    if (dk.empty()) {
        // delta_k maps into Lambda^{k+1} = 0: everything is a cocycle.
        for (int i = 0; i < dim_k; ++i) {
            Vec v(dim_k, Scalar(0));
            v[i] = Scalar(1);
            kernel.push_back(v);
        }
    } else {
        kernel = solve_exact(dk, Vec(dk.size(), Scalar(0))).kernel_basis;
    }

    // Image of delta_{k-1} as columns.
    std::vector<Vec> image_cols;
    if (k >= 1) {
        Mat dk1 = ce_matrix(g, k - 1);
        size_t dom1 = increasing_tuples(n, k - 1).size();
        for (size_t c = 0; c < dom1; ++c) {
            Vec col(dim_k, Scalar(0));
            for (int r = 0; r < dim_k; ++r) col[r] = dk1[r][c];
            image_cols.push_back(std::move(col));
        }
    }

    // Greedily pick cocycles independent modulo the coboundaries.
    Cohomology out{0, {}};
    std::vector<Vec> span = image_cols;
    auto rank_of = [&](const std::vector<Vec>& cols) {
        if (cols.empty()) return 0;
        Mat m(dim_k, Vec(cols.size(), Scalar(0)));
        for (size_t c = 0; c < cols.size(); ++c)
            for (int r = 0; r < dim_k; ++r) m[r][c] = cols[c][r];
        return rank(m);
    };
    int base_rank = rank_of(span);
    for (const auto& z : kernel) {
        auto trial = span;
        trial.push_back(z);
        int r = rank_of(trial);
        if (r > base_rank) {
            base_rank = r;
            span = std::move(trial);
            out.representatives.push_back(form_from_vector(z, n, k));
            ++out.dimension;
        }
    }
    return out;
}

Vec cohomology_class(const AltForm& alpha, const LieAlgebra& g) {
    const int n = g.dim();
    const int k = alpha.degree();
    if (!ce_differential(alpha, g).is_zero()) throw MathError("cohomology_class: form is not closed");
    Cohomology h = ce_cohomology(g, k);
    // Solve alpha = sum a_r h_r + delta(mu) for (a, mu).
    auto dom = increasing_tuples(n, k);
    const int dim_k = static_cast<int>(dom.size());
    Mat dk1 = k >= 1 ? ce_matrix(g, k - 1) : Mat{};
    size_t mu_dim = k >= 1 ? increasing_tuples(n, k - 1).size() : 0;
    Mat a(dim_k, Vec(h.representatives.size() + mu_dim, Scalar(0)));
    for (size_t c = 0; c < h.representatives.size(); ++c) {
        Vec col = vector_from_form(h.representatives[c], n, k);
        for (int r = 0; r < dim_k; ++r) a[r][c] = col[r];
    }
    for (size_t c = 0; c < mu_dim; ++c)
        for (int r = 0; r < dim_k; ++r) a[r][h.representatives.size() + c] = dk1[r][c];
    auto res = solve_exact(a, vector_from_form(alpha, n, k));
    if (!res.solution) throw MathError("cohomology_class: decomposition failed");
    Vec coords(h.representatives.size());
    for (size_t i = 0; i < coords.size(); ++i) coords[i] = (*res.solution)[i];
    return coords;
}

SymplecticLieAlgebra::SymplecticLieAlgebra(LieAlgebra algebra, AltForm omega)
    : g_(std::move(algebra)), omega_(std::move(omega)) {
    if (omega_.degree() != 2 || omega_.nvars() != g_.dim())
        throw InputError("omega must be a 2-form on g");
    auto violations = jacobi_check(g_);
    if (!violations.empty()) throw MathError("Jacobi identity fails on the base algebra");
    AltForm d = ce_differential(omega_, g_);
    if (!d.is_zero()) {
        auto& [idx, v] = *d.components().begin();
        throw MathError("omega is not CE-closed: nonzero on triple (" + std::to_string(idx[0] + 1) +
                        "," + std::to_string(idx[1] + 1) + "," + std::to_string(idx[2] + 1) + ")");
    }
    if (rank(omega_.matrix()) != g_.dim()) throw MathError("omega is degenerate");
}

AltForm SymplecticLieAlgebra::omega_inverse() const {
    const int n = g_.dim();
    Mat m = omega_.matrix();
    // Invert by solving m * X = I column by column.
    Mat inv(n, Vec(n, Scalar(0)));
    for (int c = 0; c < n; ++c) {
        Vec e(n, Scalar(0));
        e[c] = Scalar(1);
        auto res = solve_exact(m, e);
        if (!res.solution) throw MathError("omega not invertible");
        for (int r = 0; r < n; ++r) inv[r][c] = (*res.solution)[r];
    }
    AltForm out(n, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.add({i, j}, inv[i][j]);
    return out;
}

CentralExtension central_extension(const SymplecticLieAlgebra& sg) {
    const int n = sg.algebra().dim();
    auto labels = sg.algebra().labels();
    labels.push_back("z");
    LieAlgebra h(n + 1, labels);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                Scalar v = sg.algebra().c(i, j, k);
                if (v != 0) h.set_structure(i, j, k, v);
            }
            Scalar w = sg.omega().at({i, j});
            if (w != 0) h.set_structure(i, j, n, -w);
        }
    auto violations = jacobi_check(h);
    if (!violations.empty()) {
        auto& v = violations.front();
        throw MathError("central extension fails Jacobi on triple (" + std::to_string(v.i + 1) +
                        "," + std::to_string(v.j + 1) + "," + std::to_string(v.k + 1) + ")");
    }
    return {std::move(h), n, sg.omega()};
}

int coadjoint_orbit_dim(const LieAlgebra& g, const Vec& alpha) {
    const int n = g.dim();
    Mat m(n, Vec(n, Scalar(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec br = g.bracket(i, j);
            Scalar v(0);
            for (int k = 0; k < n; ++k) v -= alpha[k] * br[k];
            m[i][j] = v;
        }
    return rank(m);
}

namespace {

// Dense antisymmetric component matrix of a bivector.
Mat bivector_matrix(const AltForm& r, int n) {
    Mat rho(n, Vec(n, Scalar(0)));
    for (const auto& [e, v] : r.components()) {
        rho[e[0]][e[1]] = v;
        rho[e[1]][e[0]] = -v;
    }
    return rho;
}

}  // namespace

AltForm schouten_mixed(const LieAlgebra& g, const AltForm& r, const AltForm& s) {
    const int n = g.dim();
    Mat rho = bivector_matrix(r, n), sig = bivector_matrix(s, n);
    // T^3 tensor t[a][b][c] of [r12,s13] + [r12,s23] + [r13,s23],
    // symmetrized in (r,s) so that 2*mixed polarizes the square.
    std::vector<Scalar> t(static_cast<size_t>(n) * n * n, Scalar(0));
    auto acc = [&](int a, int b, int c, const Scalar& v) { t[(a * n + b) * n + c] += v; };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (rho[a][b] == 0 && sig[a][b] == 0) continue;
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    Scalar f = (rho[a][b] * sig[c][d] + sig[a][b] * rho[c][d]) / 2;
                    if (f == 0) continue;
                    Vec br_ac = g.bracket(a, c);
                    Vec br_bc = g.bracket(b, c);
                    Vec br_bd = g.bracket(b, d);
                    for (int m = 0; m < n; ++m) {
                        if (br_ac[m] != 0) acc(m, b, d, f * br_ac[m]);  // [r12, s13]
                        if (br_bc[m] != 0) acc(a, m, d, f * br_bc[m]);  // [r12, s23]
                        if (br_bd[m] != 0) acc(a, c, m, f * br_bd[m]);  // [r13, s23]
                    }
                }
        }
    AltForm out(n, 3);
    static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    static const int signs[6] = {1, 1, 1, -1, -1, -1};
    for (const auto& tuple : increasing_tuples(n, 3)) {
        Scalar v(0);
        for (int p = 0; p < 6; ++p) {
            int a = tuple[perms[p][0]], b = tuple[perms[p][1]], c = tuple[perms[p][2]];
            Scalar w = t[(a * n + b) * n + c];
            v += signs[p] > 0 ? w : -w;
        }
        out.add(tuple, v);
    }
    return out;
}

AltForm schouten_cybe(const LieAlgebra& g, const AltForm& r) {
    return schouten_mixed(g, r, r);
}

Connection symplectic_connection(const SymplecticLieAlgebra& sg) {
    const LieAlgebra& g = sg.algebra();
    const int n = g.dim();
    Mat w = sg.omega().matrix();

    // Half-bracket connection Gamma0^k_{ij} = C^k_{ij}/2 and its covariant
    // derivative of omega: (D0_X w)(Y,Z) = -w(D0_X Y, Z) - w(Y, D0_X Z).
    auto g0 = [&](int i, int j, int k) { return g.c(i, j, k) / 2; };
    auto d0w = [&](int i, int j, int k) {
        Scalar v(0);
        for (int m = 0; m < n; ++m) v -= g0(i, j, m) * w[m][k] + g0(i, k, m) * w[j][m];
        return v;
    };

    // Hess trick: w(D_X Y, Z) = w(D0_X Y, Z) + (D0_X w)(Y,Z)/3 + (D0_Y w)(X,Z)/3.
    Connection out{n, std::vector<Scalar>(static_cast<size_t>(n) * n * n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec rhs(n, Scalar(0));
            for (int k = 0; k < n; ++k) {
                Scalar v(0);
                for (int m = 0; m < n; ++m) v += g0(i, j, m) * w[m][k];
                v += d0w(i, j, k) / 3 + d0w(j, i, k) / 3;
                // v = w(D_i e_j, e_k); the solve is against w(e_k, -).
                rhs[k] = -v;
            }
            auto res = solve_exact(w, rhs);
            if (!res.solution) throw MathError("symplectic_connection: omega solve failed");
            for (int k = 0; k < n; ++k) out.gamma[(i * n + j) * n + k] = (*res.solution)[k];
        }

    // Verify both defining invariants exactly.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (out.at(i, j, k) - out.at(j, i, k) != g.c(i, j, k))
                    throw MathError("symplectic_connection: torsion check failed");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Scalar v(0);
                for (int m = 0; m < n; ++m) v += out.at(i, j, m) * w[m][k] + out.at(i, k, m) * w[j][m];
                if (v != 0) throw MathError("symplectic_connection: nabla omega != 0");
            }
    return out;
}

}  // namespace dq
