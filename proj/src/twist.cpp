#include "dq/twist.hpp"

#include <sstream>

namespace dq {

TwistAxiomReport twist_axiom_check(PbwContext& ctx, const TensorSquareU& f) {
    if (ctx.hbar_graded())
        throw InputError("twist_axiom_check: requires a classical enveloping context");
    const LieAlgebra* alg = f.algebra();
    const int order = f.order();
    TwistAxiomReport rep{false,
                         false,
                         true,
                         TensorCubeU(alg, order),
                         PBWElement(alg, order),
                         PBWElement(alg, order)};

    TensorSquareU unit = TensorSquareU::unit(alg, order);
    TensorSquareU lead = f;
    lead -= unit;
    rep.normalized = true;
    for (const auto& [key, v] : lead.terms()) {
        if (v[0] != 0) rep.normalized = false;
        if (order >= 1 && v[1] != 0) rep.first_order_zero = false;
    }

    TensorCubeU lhs = multiply(ctx, coproduct_left(f), tensor_with_unit_right(f));
    TensorCubeU rhs = multiply(ctx, coproduct_right(f), tensor_with_unit_left(f));
    rep.cocycle_residual = lhs - rhs;

    rep.counit_left_residual = counit_left(f) - PBWElement::unit(alg, order);
    rep.counit_right_residual = counit_right(f) - PBWElement::unit(alg, order);

    rep.ok = rep.normalized && rep.cocycle_residual.is_zero() &&
             rep.counit_left_residual.is_zero() && rep.counit_right_residual.is_zero();
    return rep;
}

AltForm classical_limit(const TensorSquareU& f) {
    const int n = f.algebra()->dim();
    if (f.order() < 1) throw MathError("classical_limit: series truncated below hbar^1");
    TensorSquareU lead = f;
    lead -= TensorSquareU::unit(f.algebra(), f.order());
    AltForm r(n, 2);
    for (const auto& [key, v] : lead.terms()) {
        if (v[0] != 0) throw MathError("classical_limit: hbar^0 term is not the unit");
        if (v[1] == 0) continue;
        if (key.first.size() > 1 || key.second.size() > 1)
            throw MathError("classical_limit: hbar^1 term has a leg of PBW degree > 1");
        if (key.first.size() == 1 && key.second.size() == 1)
            r.add({key.first[0], key.second[0]}, v[1]);
    }
    return r;
}

bool lie_action_valid(const LieAction& act, const LieAlgebra& g) {
    const int n = g.dim();
    if ((int)act.images.size() != n) return false;
    for (const auto& v : act.images)
        for (const auto& [d, c] : v.terms()) {
            int s = 0;
            for (int e : d) s += e;
            if (s != 1) return false;  // must be a vector field
        }
    // Bracket relations, checked on coordinate functions (enough for
    // vector fields).
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec br = g.bracket(i, j);
            for (int a = 0; a < act.nvars; ++a) {
                Poly xa = Poly::variable(a, act.nvars);
                Poly lhs = act.images[i].apply(act.images[j].apply(xa)) -
                           act.images[j].apply(act.images[i].apply(xa));
                Poly rhs(act.nvars);
                for (int k = 0; k < n; ++k)
                    if (br[k] != 0) rhs += br[k] * act.images[k].apply(xa);
                if (!(lhs == rhs)) return false;
            }
        }
    return true;
}

static Poly apply_word(const LieAction& act, const PbwMono& m, const Poly& f) {
    Poly out = f;
    for (auto it = m.rbegin(); it != m.rend(); ++it) out = act.images[*it].apply(out);
    return out;
}

PolySeries twisted_product(const TensorSquareU& f, const LieAction& act, const Poly& a,
                           const Poly& b) {
    PolySeries out(act.nvars, f.order());
    for (const auto& [key, v] : f.terms()) {
        Poly fa = apply_word(act, key.first, a);
        Poly fb = apply_word(act, key.second, b);
        if (fa.is_zero() || fb.is_zero()) continue;
        out += v * PolySeries::from_poly(fa * fb, f.order());
    }
    return out;
}

/// S tensor S as an element of U(g)^{tensor 2}.
static TensorSquareU tensor_square(const PBWElement& s) {
    TensorSquareU out(s.algebra(), s.order());
    for (const auto& [m1, v1] : s.terms())
        for (const auto& [m2, v2] : s.terms()) out.add_term(m1, m2, v1 * v2);
    return out;
}

TensorSquareU gauge_transform(PbwContext& ctx, const TensorSquareU& f, const PBWElement& s) {
    if (ctx.hbar_graded())
        throw InputError("gauge_transform: requires a classical enveloping context");
    if (s.coeff({})[0] != 1)
        throw InputError("gauge_transform: S must be 1 + O(hbar)");
    TensorSquareU ds = coproduct(s);
    TensorSquareU dsinv = invert_unital(ctx, ds);
    return multiply(ctx, dsinv, multiply(ctx, f, tensor_square(s)));
}

/// Coefficients of an hbar order of a tensor square as a flat row keyed by
/// monomial pair.
static std::map<std::pair<PbwMono, PbwMono>, Scalar> order_slice(const TensorSquareU& t, int k) {
    std::map<std::pair<PbwMono, PbwMono>, Scalar> out;
    for (const auto& [key, v] : t.terms())
        if (v[k] != 0) out.emplace(key, v[k]);
    return out;
}

/// All weakly increasing words over [0, n) of length 1..maxdeg.
static std::vector<PbwMono> pbw_monomials(int n, int maxdeg) {
    std::vector<PbwMono> out, layer;
    layer.push_back({});
    for (int d = 1; d <= maxdeg; ++d) {
        std::vector<PbwMono> next;
        for (const auto& w : layer)
            for (int i = w.empty() ? 0 : w.back(); i < n; ++i) {
                PbwMono ext = w;
                ext.push_back(i);
                next.push_back(ext);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

TwistEquivalence twist_equivalence_solve(PbwContext& ctx, const TensorSquareU& f,
                                         const TensorSquareU& fp, int max_degree) {
    if (ctx.hbar_graded())
        throw InputError("twist_equivalence_solve: requires a classical enveloping context");
    const LieAlgebra* alg = f.algebra();
    const int order = f.order();
    if (!(classical_limit(f) == classical_limit(fp)))
        throw InputError("twist_equivalence_solve: classical limits differ");

    TwistEquivalence res;
    res.gauge = PBWElement::unit(alg, order);
    res.obstruction = TensorSquareU(alg, order);

    for (int k = 1; k <= order; ++k) {
        // Residual of the defining relation F (S tensor S) = Delta(S) F'
        // with the current partial S; only hbar^k matters, S_k enters
        // through S_k ox 1 + 1 ox S_k - Delta(S_k).
        TensorSquareU resid = multiply(ctx, f, tensor_square(res.gauge)) -
                              multiply(ctx, coproduct(res.gauge), fp);
        auto rhs_slice = order_slice(resid, k);
        if (rhs_slice.empty()) continue;

        int deg = max_degree > 0 ? max_degree : 2 * k;
        std::vector<PbwMono> cand = pbw_monomials(alg->dim(), deg);
        std::vector<std::map<std::pair<PbwMono, PbwMono>, Scalar>> cols;
        for (const auto& m : cand) {
            PBWElement em(alg, order);
            em.add_term(m, HbarSeries::one(order));
            TensorSquareU g = coproduct(em);
            TensorSquareU side(alg, order);
            side.add_term(m, {}, HbarSeries::one(order));
            side.add_term({}, m, HbarSeries::one(order));
            g -= side;
            cols.push_back(order_slice(g, 0));
        }

        // Row index set.
        std::map<std::pair<PbwMono, PbwMono>, int> rows;
        for (const auto& [key, v] : rhs_slice) rows.emplace(key, 0);
        for (const auto& col : cols)
            for (const auto& [key, v] : col) rows.emplace(key, 0);
        int nr = 0;
        for (auto& [key, idx] : rows) idx = nr++;

        Mat a(nr, Vec(cand.size(), Scalar(0)));
        Vec b(nr, Scalar(0));
        for (size_t c = 0; c < cols.size(); ++c)
            for (const auto& [key, v] : cols[c]) a[rows[key]][c] = v;
        // The hbar^k slice of F (S ox S) - Delta(S) F' with S_k inserted
        // is residual + S_k ox 1 + 1 ox S_k - Delta(S_k) = residual -
        // G(S_k), so the update solves G(S_k) = residual.
        for (const auto& [key, v] : rhs_slice) b[rows[key]] = v;

        LinearSolveResult sol = solve_exact(a, b);
        if (!sol.solution) {
            res.ok = false;
            res.obstructed_order = k;
            for (const auto& [key, v] : rhs_slice)
                res.obstruction.add_term(key.first, key.second,
                                         HbarSeries::monomial(v, k, order));
            return res;
        }
        for (size_t c = 0; c < cand.size(); ++c)
            if ((*sol.solution)[c] != 0)
                res.gauge.add_term(cand[c], HbarSeries::monomial((*sol.solution)[c], k, order));
    }

    // Verify the round trip exactly.
    if (!(gauge_transform(ctx, f, res.gauge) == fp))
        throw MathError("twist_equivalence_solve: verification of the solved gauge failed");
    res.ok = true;
    return res;
}

std::string twist_to_string(const TensorSquareU& f) {
    const auto& labels = f.algebra()->labels();
    auto mono_str = [&](const PbwMono& m) {
        if (m.empty()) return std::string("1");
        std::string s;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i) s += " ";
            s += labels[m[i]];
        }
        return s;
    };
    std::ostringstream os;
    bool any = false;
    for (int k = 0; k <= f.order(); ++k)
        for (const auto& [key, v] : f.terms()) {
            if (v[k] == 0) continue;
            os << to_string(v[k]) << " * (" << mono_str(key.first) << " (x) "
               << mono_str(key.second) << ") * h^" << k << "\n";
            any = true;
        }
    if (!any) os << "0\n";
    return os.str();
}

}  // namespace dq
