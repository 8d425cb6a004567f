#include "dq/starlab.hpp"

#include <set>

namespace dq {

namespace {

/// Incremental dense RREF accumulator; rows are streamed in, consistency
/// is tracked as they arrive.  Free variables are fixed to zero, which
/// keeps the output deterministic.
class IncrementalSolver {
public:
    explicit IncrementalSolver(int ncols) : ncols_(ncols) {}

    /// Returns false when the row makes the system inconsistent.
    bool add(Vec row, Scalar rhs) {
        for (const auto& [p, pr] : rows_) {
            if (row[p] == 0) continue;
            Scalar f = row[p];
            for (int c = 0; c < ncols_; ++c)
                if (pr.first[c] != 0) row[c] -= f * pr.first[c];
            rhs -= f * pr.second;
        }
        int piv = -1;
        for (int c = 0; c < ncols_; ++c)
            if (row[c] != 0) {
                piv = c;
                break;
            }
        if (piv < 0) {
            if (rhs != 0) consistent_ = false;
            return consistent_;
        }
        Scalar d = row[piv];
        for (int c = 0; c < ncols_; ++c) row[c] /= d;
        rhs /= d;
        // Keep the basis fully reduced.
        for (auto& [p, pr] : rows_) {
            if (pr.first[piv] == 0) continue;
            Scalar f = pr.first[piv];
            for (int c = 0; c < ncols_; ++c)
                if (row[c] != 0) pr.first[c] -= f * row[c];
            pr.second -= f * rhs;
        }
        rows_.emplace(piv, std::make_pair(std::move(row), std::move(rhs)));
        return consistent_;
    }

    bool consistent() const { return consistent_; }

    Vec solution() const {
        Vec x(ncols_, Scalar(0));
        for (const auto& [p, pr] : rows_) x[p] = pr.second;
        return x;
    }

private:
    int ncols_;
    bool consistent_ = true;
    std::map<int, std::pair<Vec, Scalar>> rows_;
};

}  // namespace

RelativeClassResult relative_class(const StarProduct& s1, const StarProduct& s2,
                                   const LieAlgebra& g, int order, RelativeClassOptions opt) {
    const int n = g.dim();
    if (s1.nvars != n || s2.nvars != n)
        throw InputError("relative_class: star products must live on Poly(g*)");
    if (s1.order < order || s2.order < order)
        throw InputError("relative_class: star products truncated below the requested order");

    int valid = -1;
    if (s1.coeff_valid_degree) valid = *s1.coeff_valid_degree;
    if (s2.coeff_valid_degree)
        valid = valid < 0 ? *s2.coeff_valid_degree : std::min(valid, *s2.coeff_valid_degree);

    std::vector<LinDiffOp> frame = opt.frame;
    if (frame.empty())
        for (int i = 0; i < n; ++i) {
            LinDiffOp d(n);
            Expo e(n, 0);
            e[i] = 1;
            d.add_term(e, Poly::constant(Scalar(1), n));
            frame.push_back(d);
        }
    std::vector<LinDiffOp> sym = opt.symmetries;
    if (sym.empty() && opt.use_default_coadjoint) sym = coadjoint_derivations(g);

    Cohomology h2 = ce_cohomology(g, 2);

    RelativeClassResult res;
    res.obstruction = AltForm(n, 2);
    std::vector<LinDiffOp> t;  // T_1 .. T_{k-1}

    auto window = monomials_up_to(n, opt.degree_window);
    auto apply_t = [&](int a, const Poly& f) {
        return a == 0 ? f : t[a - 1].apply(f);
    };

    for (int k = 1; k <= order; ++k) {
        const int coeff_deg = opt.coeff_degree > 0 ? opt.coeff_degree : 2 * k;
        const int eq_valid = valid < 0 ? -1 : valid - 2 * (k - 1);

        // Ansatz for T_k: either the caller-supplied invariant basis, or
        // the generic terms x^e d^d with 1 <= |d| <= 2k, |e| <= coeff_deg.
        std::vector<LinDiffOp> ansatz;
        if (!opt.t_basis.empty()) {
            ansatz = opt.t_basis;
        } else {
            for (const auto& d : monomials_up_to(n, 2 * k)) {
                int dd = 0;
                for (int v : d) dd += v;
                if (dd == 0) continue;
                for (const auto& e : monomials_up_to(n, coeff_deg)) {
                    LinDiffOp op(n);
                    op.add_term(d, Poly::monomial(e, Scalar(1)));
                    ansatz.push_back(std::move(op));
                }
            }
        }
        const int nbase = (int)ansatz.size();
        std::vector<std::pair<int, int>> lambda_idx;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) lambda_idx.emplace_back(i, j);
        const int ncols = nbase + (int)lambda_idx.size();

        // Row sources: (poly per column, rhs poly); flattened over monomials.
        IncrementalSolver base(nbase);
        std::set<std::pair<Vec, Scalar>> seen;  // dedup; kept for the lambda re-solve

        auto push_rows = [&](const std::vector<Poly>& cols, const Poly& rhs) {
            std::set<Expo> monos;
            auto collect = [&](const Poly& p) {
                for (const auto& [e, c] : p.terms()) {
                    int deg = 0;
                    for (int v : e) deg += v;
                    if (eq_valid < 0 || deg <= eq_valid) monos.insert(e);
                }
            };
            for (const auto& p : cols) collect(p);
            collect(rhs);
            for (const auto& e : monos) {
                Vec row(ncols, Scalar(0));
                for (int c = 0; c < ncols; ++c) row[c] = cols[c].coeff(e);
                Scalar b = rhs.coeff(e);
                if (!seen.insert({row, b}).second) continue;
                base.add(Vec(row.begin(), row.begin() + nbase), b);
            }
        };

        for (const auto& ea : window)
            for (const auto& eb : window) {
                int da = 0, db = 0;
                for (int v : ea) da += v;
                for (int v : eb) db += v;
                if (da == 0 || db == 0 || da + db > opt.degree_window) continue;
                Poly f = Poly::monomial(ea, Scalar(1));
                Poly gp = Poly::monomial(eb, Scalar(1));

                // Known part K = sum_{a+b+c=k, b,c<k} B2_a(T_b f, T_c g)
                //              - sum_{a+b=k, a<k} T_a(B1_b(f, g)).
                Poly known(n);
                for (int a = 0; a <= k; ++a)
                    for (int b = 0; a + b <= k; ++b) {
                        int c = k - a - b;
                        if (b == k || c == k) continue;
                        known += s2.b[a].apply(apply_t(b, f), apply_t(c, gp));
                    }
                for (int a = 0; a < k; ++a) known -= apply_t(a, s1.b[k - a].apply(f, gp));

                std::vector<Poly> cols;
                cols.reserve(ncols);
                Poly fg = f * gp;
                for (const auto& op : ansatz)
                    cols.push_back(op.apply(fg) - op.apply(f) * gp - f * op.apply(gp));
                for (const auto& [i, j] : lambda_idx)
                    cols.push_back(frame[i].apply(f) * frame[j].apply(gp) -
                                   frame[j].apply(f) * frame[i].apply(gp));
                push_rows(cols, known);
            }

        // Invariance rows: [T_k, v] = 0 on the window (a supplied invariant
        // basis carries its invariance by construction).
        if (opt.t_basis.empty())
            for (const auto& v : sym)
                for (const auto& em : window) {
                    Poly m = Poly::monomial(em, Scalar(1));
                    Poly vm = v.apply(m);
                    std::vector<Poly> cols;
                    cols.reserve(ncols);
                    for (const auto& op : ansatz)
                        cols.push_back(op.apply(vm) - v.apply(op.apply(m)));
                    for (size_t li = 0; li < lambda_idx.size(); ++li) cols.push_back(Poly(n));
                    push_rows(cols, Poly(n));
                }

        if (base.consistent()) {
            Vec x = base.solution();
            LinDiffOp tk(n);
            for (int c = 0; c < nbase; ++c)
                if (x[c] != 0) tk += x[c] * ansatz[c];
            t.push_back(std::move(tk));
            res.classes.push_back(Vec());
            continue;
        }

        IncrementalSolver full(ncols);
        for (const auto& [row, b] : seen)
            if (!full.add(row, b)) break;
        if (!full.consistent())
            throw MathError("relative_class: order " + std::to_string(k) +
                            " unsolvable even with a cohomology source; enlarge the ansatz");
        Vec x = full.solution();
        AltForm lam(n, 2);
        for (size_t li = 0; li < lambda_idx.size(); ++li)
            if (x[nbase + li] != 0)
                lam.add({lambda_idx[li].first, lambda_idx[li].second}, x[nbase + li]);
        Vec cls = cohomology_class(lam, g);
        bool allzero = true;
        for (const auto& c : cls)
            if (c != 0) allzero = false;
        if (allzero)
            throw MathError("relative_class: obstruction at order " + std::to_string(k) +
                            " is exact; enlarge the equivalence ansatz");
        res.trivial = false;
        res.first_obstructed_order = k;
        res.obstruction = lam;
        res.classes.push_back(cls);
        return res;
    }

    res.trivial = true;
    res.equivalence = t;
    return res;
}

}  // namespace dq
