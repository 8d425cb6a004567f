#include "dq/bidiff.hpp"

#include <algorithm>

namespace dq {

std::vector<Expo> monomials_up_to(int nvars, int degree) {
    std::vector<Expo> out;
    Expo cur(nvars, 0);
    // Graded enumeration: all exponents of total degree d, for d = 0..degree.
    std::function<void(int, int, int)> rec = [&](int var, int remaining, int target) {
        if (var == nvars) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[var] = e;
            rec(var + 1, remaining - e, target);
        }
        cur[var] = 0;
    };
    for (int d = 0; d <= degree; ++d) rec(0, d, d);
    return out;
}

AssocReport assoc_residual(const StarProduct& s, int order, int degree) {
    AssocReport rep;
    auto monos = monomials_up_to(s.nvars, degree);
    for (const auto& ef : monos)
        for (const auto& eg : monos)
            for (const auto& eh : monos) {
                int total = 0;
                for (int v : ef) total += v;
                for (int v : eg) total += v;
                for (int v : eh) total += v;
                if (total > degree) continue;
                Poly f = Poly::monomial(ef, Scalar(1));
                Poly g = Poly::monomial(eg, Scalar(1));
                Poly h = Poly::monomial(eh, Scalar(1));
                PolySeries lhs = s.apply(s.apply(f, g), PolySeries::from_poly(h, s.order));
                PolySeries rhs = s.apply(PolySeries::from_poly(f, s.order), s.apply(g, h));
                PolySeries diff = lhs - rhs;
                // Composing two applications of jet-truncated operators
                // contaminates the top degrees: a derivative of slot order
                // up to `order` can pull degree-(valid+1) truncation error
                // down to degree valid+1-order.
                if (s.coeff_valid_degree)
                    diff = diff.truncated_degree(*s.coeff_valid_degree - order);
                for (int k = 0; k <= std::min(order, diff.order()); ++k) {
                    if (!diff[k].is_zero()) {
                        rep.ok = false;
                        rep.hbar_order = k;
                        rep.triple = {ef, eg, eh};
                        rep.residual = diff[k];
                        return rep;
                    }
                }
            }
    return rep;
}

StarProduct star_from_bidiff(std::vector<BiDiffOp> b, std::optional<int> coeff_valid_degree,
                             int check_degree) {
    if (b.empty()) throw InputError("star_from_bidiff: empty operator list");
    StarProduct s;
    s.nvars = b[0].nvars();
    s.order = static_cast<int>(b.size()) - 1;
    s.b = std::move(b);
    s.coeff_valid_degree = coeff_valid_degree;
    if (!(s.b[0] == BiDiffOp::multiplication(s.nvars)))
        throw MathError("star_from_bidiff: B0 is not the multiplication operator");
    auto rep = assoc_residual(s, s.order, check_degree);
    if (!rep.ok)
        throw MathError("star_from_bidiff: associativity fails at hbar^" +
                        std::to_string(rep.hbar_order));
    return s;
}

BiDiffOp bidiff_extract(const std::function<Poly(const Expo&, const Expo&)>& fn, int nvars,
                        int max_order, int verify_degree, std::optional<int> valid_degree) {
    auto monos = monomials_up_to(nvars, max_order);
    // Graded order guarantees triangularity of the recovery.
    std::stable_sort(monos.begin(), monos.end(), [](const Expo& a, const Expo& b) {
        int da = 0, db = 0;
        for (int v : a) da += v;
        for (int v : b) db += v;
        return da < db;
    });

    auto falling = [](const Expo& big, const Expo& small) {
        // prod_i big_i! / (big_i - small_i)!  (0 when small exceeds big)
        Scalar f(1);
        for (size_t i = 0; i < big.size(); ++i) {
            if (small[i] > big[i]) return Scalar(0);
            for (int m = 0; m < small[i]; ++m) f *= big[i] - m;
        }
        return f;
    };

    BiDiffOp op(nvars);
    for (const auto& bi : monos)
        for (const auto& bj : monos) {
            Poly rem = fn(bi, bj);
            for (const auto& [key, coeff] : op.terms()) {
                Scalar cl = falling(bi, key.first);
                if (cl == 0) continue;
                Scalar cr = falling(bj, key.second);
                if (cr == 0) continue;
                Expo e(nvars);
                for (int v = 0; v < nvars; ++v) e[v] = bi[v] - key.first[v] + bj[v] - key.second[v];
                rem -= (cl * cr) * (coeff * Poly::monomial(e, Scalar(1)));
            }
            if (valid_degree) rem = rem.truncated(*valid_degree);
            Scalar norm = falling(bi, bi) * falling(bj, bj);  // I! J!
            op.add_term(bi, bj, Scalar(1) / norm * rem);
        }

    // Guard the order bound: re-verify on a larger window.
    auto verify = monomials_up_to(nvars, verify_degree);
    for (const auto& bi : verify)
        for (const auto& bj : verify) {
            Poly want = fn(bi, bj);
            Poly got = op.apply(Poly::monomial(bi, Scalar(1)), Poly::monomial(bj, Scalar(1)));
            Poly diff = want - got;
            if (valid_degree) diff = diff.truncated(*valid_degree);
            if (!diff.is_zero())
                throw MathError("bidiff_extract: operator order bound " +
                                std::to_string(max_order) + " is insufficient");
        }
    return op;
}

LinDiffOp compose(const LinDiffOp& a, const LinDiffOp& b, int trunc_degree) {
    const int n = a.nvars();
    LinDiffOp out(n);
    for (const auto& [da, ca] : a.terms())
        for (const auto& [db, cb] : b.terms()) {
            // Leibniz: d^I (c_b d^J f) = sum_{I' <= I} binom(I, I')
            // (d^{I'} c_b) d^{I - I' + J} f.
            std::vector<Expo> subs;
            subs.push_back(Expo(n, 0));
            for (int v = 0; v < n; ++v) {
                std::vector<Expo> next;
                for (const auto& s : subs)
                    for (int m = 0; m <= da[v]; ++m) {
                        Expo e = s;
                        e[v] = m;
                        next.push_back(e);
                    }
                subs = std::move(next);
            }
            for (const auto& ip : subs) {
                Scalar binom(1);
                for (int v = 0; v < n; ++v)
                    for (int m = 0; m < ip[v]; ++m)
                        binom *= Scalar(da[v] - m) / Scalar(ip[v] - m);
                Poly dcb = cb;
                for (int v = 0; v < n && !dcb.is_zero(); ++v)
                    for (int m = 0; m < ip[v]; ++m) dcb = dcb.derivative(v);
                if (dcb.is_zero()) continue;
                Poly coeff = (binom * ca) * dcb;
                if (trunc_degree >= 0) coeff = coeff.truncated(trunc_degree);
                Expo d(n);
                for (int v = 0; v < n; ++v) d[v] = da[v] - ip[v] + db[v];
                out.add_term(d, coeff);
            }
        }
    return out;
}

BiDiffOp tensor_bidiff(const LinDiffOp& a, const LinDiffOp& b, int trunc_degree) {
    BiDiffOp out(a.nvars());
    for (const auto& [da, ca] : a.terms())
        for (const auto& [db, cb] : b.terms()) {
            Poly c = ca * cb;
            if (trunc_degree >= 0) c = c.truncated(trunc_degree);
            out.add_term(da, db, c);
        }
    return out;
}

}  // namespace dq
