#include "dq/build_twist.hpp"

#include <algorithm>

namespace dq {

static LinDiffOp word_operator(const std::vector<LinDiffOp>& frame, const PbwMono& m,
                               int trunc_degree) {
    const int n = frame.empty() ? 0 : frame[0].nvars();
    LinDiffOp acc = LinDiffOp::identity(n);
    for (auto it = m.rbegin(); it != m.rend(); ++it)
        acc = compose(frame[*it], acc, trunc_degree);
    return acc;
}

/// All weakly increasing words of length mindeg..maxdeg over [0, n).
static std::vector<PbwMono> words(int n, int mindeg, int maxdeg) {
    std::vector<PbwMono> out, layer;
    layer.push_back({});
    if (mindeg == 0) out.push_back({});
    for (int d = 1; d <= maxdeg; ++d) {
        std::vector<PbwMono> next;
        for (const auto& w : layer)
            for (int i = w.empty() ? 0 : w.back(); i < n; ++i) {
                PbwMono ext = w;
                ext.push_back(i);
                next.push_back(ext);
            }
        if (d >= mindeg) out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

static TensorSquareU solve_twist_at_jet(const SymplecticLieAlgebra& sg, int order, int jet,
                                        const BuildOptions& opt, StarProduct* transported_out,
                                        ExpChart* chart_out, std::vector<LinDiffOp>* frame_out) {
    const LieAlgebra& g = sg.algebra();
    const int n = g.dim();

    CentralExtension ext = central_extension(sg);
    PbwContext hctx(&ext.h, order);
    StarProduct gutt = gutt_star_product(hctx, opt.gutt_check_degree);
    StarProduct restricted = restrict_to_D(gutt);

    ExpChart chart = exp_chart(ext, jet);
    const int valid = jet - order;
    if (valid < opt.match_window)
        throw MathError("build_drinfeld_twist: jet order " + std::to_string(jet) +
                        " leaves a window below the matching degree; need at least " +
                        std::to_string(opt.match_window + order));

    // The restricted star product transported to the exponential chart.
    StarProduct trans;
    trans.nvars = n;
    trans.order = order;
    trans.coeff_valid_degree = valid;
    for (int k = 0; k <= order; ++k) {
        auto fn = [&](const Expo& a, const Expo& b) {
            Poly fa = chart.pushforward(Poly::monomial(a, Scalar(1)));
            Poly fb = chart.pushforward(Poly::monomial(b, Scalar(1)));
            return chart.pullback(restricted.b[k].apply(fa, fb)).truncated(valid);
        };
        trans.b.push_back(bidiff_extract(fn, n, k, opt.match_window, valid));
    }

    std::vector<LinDiffOp> frame = invariant_frame(g, jet, opt.left_frame);

    // Matching solve: at each hbar order find constant leg coefficients
    // with sum c * (Phi(m1) tensor Phi(m2)) = B_k as jet bidifferential
    // operators.  Legs of PBW degree up to 2k per slot: a slot operator
    // of differential order k can need higher words whose leading parts
    // cancel.
    TensorSquareU f = TensorSquareU::unit(&g, order);
    for (int k = 1; k <= order; ++k) {
        std::vector<PbwMono> legs = words(n, 1, 2 * k);
        std::vector<std::pair<PbwMono, PbwMono>> cand;
        std::vector<LinDiffOp> legop;
        for (const auto& m : legs) legop.push_back(word_operator(frame, m, jet));
        std::vector<BiDiffOp> col_op;
        for (size_t i = 0; i < legs.size(); ++i)
            for (size_t j = 0; j < legs.size(); ++j) {
                cand.emplace_back(legs[i], legs[j]);
                col_op.push_back(tensor_bidiff(legop[i], legop[j], valid));
            }

        // Equation index: (derivative pair, coefficient monomial).
        std::map<std::pair<std::pair<Expo, Expo>, Expo>, size_t> eq_index;
        auto keys_of = [&](const BiDiffOp& op) {
            for (const auto& [dk, c] : op.terms())
                for (const auto& [e, v] : c.terms())
                    eq_index.emplace(std::make_pair(dk, e), eq_index.size());
        };
        for (const auto& op : col_op) keys_of(op);
        keys_of(trans.b[k]);

        std::vector<Vec> rows(eq_index.size(), Vec(cand.size(), Scalar(0)));
        Vec rhs(eq_index.size(), Scalar(0));
        for (size_t c = 0; c < col_op.size(); ++c)
            for (const auto& [dk, coeff] : col_op[c].terms())
                for (const auto& [e, v] : coeff.terms())
                    rows[eq_index.at({dk, e})][c] = v;
        for (const auto& [dk, coeff] : trans.b[k].terms())
            for (const auto& [e, v] : coeff.terms()) rhs[eq_index.at({dk, e})] = v;

        LinearSolveResult sol = solve_exact(Mat(rows.begin(), rows.end()), rhs);
        if (!sol.solution)
            throw MathError("build_drinfeld_twist: no twist legs match at hbar^" +
                            std::to_string(k) + " with jet order " + std::to_string(jet) +
                            "; increase the jet order");
        for (size_t c = 0; c < cand.size(); ++c)
            if ((*sol.solution)[c] != 0)
                f.add_term(cand[c].first, cand[c].second,
                           HbarSeries::monomial((*sol.solution)[c], k, order));
    }

    if (transported_out) *transported_out = std::move(trans);
    if (chart_out) *chart_out = std::move(chart);
    if (frame_out) *frame_out = std::move(frame);
    return f;
}

BuiltTwist build_drinfeld_twist(const SymplecticLieAlgebra& sg, int order, BuildOptions opt) {
    const int jet =
        opt.jet_degree > 0 ? opt.jet_degree
                           : std::max(2 * order + 2, order + opt.match_window + 1);
    BuiltTwist out;
    TensorSquareU f =
        solve_twist_at_jet(sg, order, jet, opt, &out.transported, &out.chart, &out.frame);

    if (opt.stability_check && order > 0) {
        TensorSquareU f2 = solve_twist_at_jet(sg, order, jet + 2, opt, nullptr, nullptr, nullptr);
        if (!(f == f2))
            throw MathError("build_drinfeld_twist: twist coefficients not stable between jet "
                            "orders " +
                            std::to_string(jet) + " and " + std::to_string(jet + 2));
    }

    // Twist axioms live in classical U(g): the frame fields the legs act
    // through compose with hbar-free commutators.
    PbwContext gctx(&sg.algebra(), order, false);
    TwistAxiomReport rep = twist_axiom_check(gctx, f);
    if (!rep.ok)
        throw MathError("build_drinfeld_twist: matched element fails the twist axioms at jet "
                        "order " +
                        std::to_string(jet) + "; increase the jet order");

    out.twist.value = f;
    out.twist.verified_order = order;
    return out;
}

std::vector<LinDiffOp> frame_word_basis(const std::vector<LinDiffOp>& frame, int min_len,
                                        int max_len, int trunc_degree) {
    const int n = (int)frame.size();
    std::vector<LinDiffOp> basis;
    for (const auto& w : words(n, min_len, max_len))
        basis.push_back(word_operator(frame, w, trunc_degree));
    return basis;
}

StarProduct star_from_twist(const Twist& f, const std::vector<LinDiffOp>& frame,
                            int jet_degree) {
    const int n = frame.empty() ? 0 : frame[0].nvars();
    const int order = f.value.order();
    StarProduct s;
    s.nvars = n;
    s.order = order;
    s.coeff_valid_degree = jet_degree - order;
    s.b.assign(order + 1, BiDiffOp(n));
    for (const auto& [key, v] : f.value.terms()) {
        LinDiffOp l = word_operator(frame, key.first, jet_degree);
        LinDiffOp r = word_operator(frame, key.second, jet_degree);
        BiDiffOp t = tensor_bidiff(l, r, jet_degree);
        for (int k = 0; k <= order; ++k)
            if (v[k] != 0)
                for (const auto& [dk, c] : t.terms())
                    s.b[k].add_term(dk.first, dk.second, v[k] * c);
    }
    return s;
}

}  // namespace dq
