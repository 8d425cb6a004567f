// dqtwist: command-line front end for the twist / star-product kernel.
//
// Input documents are UTF-8 JSON (see README for the schema); all numbers
// are rationals-as-strings.  Exit codes: 0 success, 1 mathematical
// failure, 2 input error.

#include "CLI11.hpp"
#include "json.hpp"

#include "dq/catalog.hpp"
#include "dq/fedosov.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace dq;

namespace {

struct AlgebraSpec {
    std::string name;
    LieAlgebra algebra = LieAlgebra(0, {});
    bool has_omega = false;
    AltForm omega;
};

Scalar rat(const json& j, const std::string& where) {
    if (!j.is_string()) throw InputError(where + ": rationals must be strings");
    return parse_rational(j.get<std::string>());
}

AlgebraSpec parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("document root must be an object");
    AlgebraSpec spec;
    spec.name = doc.value("name", std::string("unnamed"));
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw InputError("dim: missing or not an integer");
    int n = doc["dim"].get<int>();
    if (n <= 0 || n > 16) throw InputError("dim: out of range [1, 16]");
    std::vector<std::string> labels;
    if (doc.contains("basis")) {
        for (const auto& b : doc["basis"]) labels.push_back(b.get<std::string>());
        if (static_cast<int>(labels.size()) != n)
            throw InputError("basis: expected " + std::to_string(n) + " labels");
    } else {
        for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
    }
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw InputError("basis: duplicate label " + labels[i]);
    LieAlgebra g(n, labels);
    if (doc.contains("brackets")) {
        for (const auto& br : doc["brackets"]) {
            if (!br.contains("i") || !br.contains("j") || !br.contains("coeffs"))
                throw InputError("brackets: each entry needs i, j, coeffs");
            int i = br["i"].get<int>(), j = br["j"].get<int>();
            if (i < 0 || j < 0 || i >= n || j >= n)
                throw InputError("brackets: index out of range at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
            if (i >= j) throw InputError("brackets: require i < j");
            for (const auto& [label, val] : br["coeffs"].items()) {
                auto it = std::find(labels.begin(), labels.end(), label);
                if (it == labels.end()) throw InputError("brackets: unknown label " + label);
                int k = static_cast<int>(it - labels.begin());
                g.set_structure(i, j, k, rat(val, "brackets coefficient " + label));
            }
        }
    }
    spec.algebra = g;
    if (doc.contains("omega")) {
        const auto& m = doc["omega"];
        if (!m.is_array() || static_cast<int>(m.size()) != n)
            throw InputError("omega: expected an " + std::to_string(n) + "x" +
                             std::to_string(n) + " matrix");
        Mat w(n, Vec(n));
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(m[i].size()) != n) throw InputError("omega: ragged matrix");
            for (int j = 0; j < n; ++j)
                w[i][j] = rat(m[i][j], "omega[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (w[i][j] != -w[j][i])
                    throw InputError("omega: not antisymmetric at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
        spec.omega = AltForm(n, 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) spec.omega.add({i, j}, w[i][j]);
        spec.has_omega = true;
    }
    return spec;
}

AlgebraSpec load_spec(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw InputError("cannot open input document: " + path);
        buf << in.rdbuf();
    }
    return parse_spec(buf.str());
}

// ---- tiny expression grammar ----------------------------------------
// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor (('*'|'^') factor)*
// factor := rational | identifier
// Identifiers are basis labels or x<k> (1-based coordinate k); '^' wedges
// exactly two identifiers into a bivector term.

struct Token {
    char kind;  // 'n' number, 'i' ident, or one of + - * ^
    std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    size_t p = 0;
    while (p < s.size()) {
        char c = s[p];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++p;
        } else if (c == '+' || c == '-' || c == '*' || c == '^') {
            out.push_back({c, std::string(1, c)});
            ++p;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t q = p;
            while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
            if (q < s.size() && s[q] == '/') {
                ++q;
                while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
            }
            out.push_back({'n', s.substr(p, q - p)});
            p = q;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t q = p;
            while (q < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[q])) || s[q] == '_'))
                ++q;
            out.push_back({'i', s.substr(p, q - p)});
            p = q;
        } else {
            throw InputError(std::string("expression: unexpected character '") + c + "'");
        }
    }
    return out;
}

int resolve_index(const std::string& ident, const std::vector<std::string>& labels) {
    for (size_t k = 0; k < labels.size(); ++k)
        if (labels[k] == ident) return static_cast<int>(k);
    if (ident.size() >= 2 && ident[0] == 'x' &&
        std::all_of(ident.begin() + 1, ident.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        int k = std::stoi(ident.substr(1));
        if (k >= 1 && k <= static_cast<int>(labels.size())) return k - 1;
    }
    throw InputError("expression: unknown identifier " + ident);
}

struct ParsedTerm {
    Scalar coeff = Scalar(1);
    std::vector<int> factors;  // resolved identifier indices
    bool wedge = false;
};

std::vector<ParsedTerm> parse_terms(const std::string& text,
                                    const std::vector<std::string>& labels) {
    std::vector<Token> toks = tokenize(text);
    std::vector<ParsedTerm> terms;
    size_t p = 0;
    bool first = true;
    while (p < toks.size() || first) {
        if (p >= toks.size()) throw InputError("expression: empty");
        ParsedTerm t;
        if (toks[p].kind == '+' || toks[p].kind == '-') {
            if (toks[p].kind == '-') t.coeff = Scalar(-1);
            ++p;
        } else if (!first) {
            throw InputError("expression: expected + or - between terms");
        }
        bool want_factor = true;
        while (p < toks.size() && (want_factor || toks[p].kind == '*' || toks[p].kind == '^')) {
            if (!want_factor) {
                if (toks[p].kind == '^') t.wedge = true;
                ++p;
                want_factor = true;
                continue;
            }
            if (p >= toks.size()) throw InputError("expression: dangling operator");
            if (toks[p].kind == 'n') {
                t.coeff *= parse_rational(toks[p].text);
            } else if (toks[p].kind == 'i') {
                t.factors.push_back(resolve_index(toks[p].text, labels));
            } else {
                throw InputError("expression: expected a factor, got '" + toks[p].text + "'");
            }
            ++p;
            want_factor = false;
        }
        if (want_factor) throw InputError("expression: dangling operator");
        terms.push_back(std::move(t));
        first = false;
    }
    return terms;
}

Poly parse_poly(const std::string& text, const std::vector<std::string>& labels) {
    Poly out(static_cast<int>(labels.size()));
    for (const auto& t : parse_terms(text, labels)) {
        if (t.wedge) throw InputError("expression: '^' is only valid in bivectors");
        Expo e(labels.size(), 0);
        for (int f : t.factors) e[f] += 1;
        out.add_term(e, t.coeff);
    }
    return out;
}

AltForm parse_bivector(const std::string& text, const std::vector<std::string>& labels) {
    AltForm out(static_cast<int>(labels.size()), 2);
    for (const auto& t : parse_terms(text, labels)) {
        if (t.factors.size() != 2)
            throw InputError("bivector expression: each term needs exactly two generators");
        out.add(t.factors, t.coeff);
    }
    return out;
}

// ---- reporting -------------------------------------------------------

struct Report {
    bool as_json = false;
    json j = json::object();
    std::ostringstream text;

    void field(const std::string& key, const std::string& value) {
        j[key] = value;
        text << key << ": " << value << "\n";
    }
    void field(const std::string& key, int value) {
        j[key] = value;
        text << key << ": " << value << "\n";
    }
    void line(const std::string& s) {
        if (!j.contains("lines")) j["lines"] = json::array();
        j["lines"].push_back(s);
        text << s << "\n";
    }
    int finish(int code) {
        j["exit"] = code;
        if (as_json)
            std::cout << j.dump(2) << "\n";
        else
            std::cout << text.str();
        return code;
    }
};

std::string altform_str(const AltForm& a, const std::vector<std::string>& labels) {
    if (a.is_zero()) return "0";
    std::string s;
    for (const auto& [idx, v] : a.components()) {
        if (!s.empty()) s += " + ";
        s += to_string(v);
        for (size_t p = 0; p < idx.size(); ++p) s += (p ? "^" : "*") + labels[idx[p]];
    }
    return s;
}

std::vector<std::string> coord_names(const LieAlgebra& g) {
    std::vector<std::string> names;
    for (int i = 0; i < g.dim(); ++i) names.push_back("x" + std::to_string(i + 1));
    return names;
}

std::string op_str(const LinDiffOp& op, const std::vector<std::string>& vars) {
    if (op.is_zero()) return "0";
    std::string s;
    for (const auto& [deriv, coeff] : op.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + coeff.str(vars) + ")";
        for (size_t i = 0; i < deriv.size(); ++i)
            for (int m = 0; m < deriv[i]; ++m) s += " d/d" + vars[i];
    }
    return s;
}

int max_order(int requested) {
    int cap = 2;
    if (const char* env = std::getenv("DQTWIST_MAX_ORDER")) {
        try {
            cap = std::stoi(env);
        } catch (...) {
            throw InputError("DQTWIST_MAX_ORDER: not an integer");
        }
    }
    cap = std::min(cap, 4);
    if (requested > cap)
        throw InputError("order " + std::to_string(requested) + " exceeds the cap " +
                         std::to_string(cap) + " (DQTWIST_MAX_ORDER, hard max 4)");
    if (requested < 0) throw InputError("order must be nonnegative");
    return requested;
}

SymplecticLieAlgebra require_symplectic(const AlgebraSpec& spec) {
    if (!spec.has_omega) throw InputError("this subcommand requires an omega matrix");
    return SymplecticLieAlgebra(spec.algebra, spec.omega);
}

std::string weyl_str(const WeylElement& w, const std::vector<std::string>& vars) {
    if (w.is_zero()) return "0";
    std::ostringstream os;
    for (const auto& [key, c] : w.terms()) {
        os << "  [";
        for (size_t i = 0; i < key.first.size(); ++i) {
            for (int m = 0; m < key.first[i]; ++m) os << " y" << (i + 1);
        }
        os << " |";
        for (int f : key.second) os << " e^" << (f + 1);
        os << " ] :";
        for (int k = 0; k <= c.order(); ++k)
            if (!c[k].is_zero()) os << " h^" << k << " * (" << c[k].str(vars) << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"dqtwist: formal Drinfel'd twists and star products for symplectic Lie algebras"};
    app.require_subcommand(1);
    std::string input = "-";
    bool as_json = false;
    app.add_option("-i,--input", input, "input JSON document (default: stdin)");
    app.add_flag("--json", as_json, "emit a structured JSON report");

    int k_arg = 2, order_arg = 2, dito_r = 1;
    std::string f_expr, g_expr, r_expr;

    CLI::App* c_check = app.add_subcommand("check", "validate the algebra document");
    CLI::App* c_coh = app.add_subcommand("cohomology", "dimension of H^k");
    c_coh->add_option("--k", k_arg, "cohomology degree")->required();
    CLI::App* c_ext = app.add_subcommand("extend", "central extension adapted to omega");
    CLI::App* c_orb = app.add_subcommand("orbit-dim", "coadjoint orbit dimension at the contact covector");
    CLI::App* c_cybe = app.add_subcommand("cybe", "Schouten self-bracket of a bivector");
    c_cybe->add_option("--r", r_expr, "bivector expression, e.g. \"e1^e2 - 1/2*e1^e3\"")->required();
    CLI::App* c_gutt = app.add_subcommand("gutt", "Gutt star product of two polynomials");
    c_gutt->add_option("--f", f_expr, "left factor, e.g. \"x1*x2 - 1/2*x3\"")->required();
    c_gutt->add_option("--g", g_expr, "right factor")->required();
    c_gutt->add_option("--order", order_arg, "hbar truncation order");
    CLI::App* c_twist = app.add_subcommand("twist", "construct and verify the Drinfel'd twist");
    c_twist->add_option("--order", order_arg, "hbar truncation order");
    CLI::App* c_fed = app.add_subcommand("fedosov", "Fedosov reference data over the CE complex");
    c_fed->add_option("--order", order_arg, "hbar truncation order");
    CLI::App* c_cmp = app.add_subcommand("compare", "order-by-order relative class of twist vs Fedosov");
    c_cmp->add_option("--order", order_arg, "hbar truncation order");
    CLI::App* c_dito = app.add_subcommand("dito", "trace operator D_r on the extension");
    c_dito->add_option("--r", dito_r, "number of ad factors")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Report rep;
    rep.as_json = as_json;
    AlgebraSpec spec = load_spec(input);
    rep.field("algebra", spec.name);
    const LieAlgebra& g = spec.algebra;

    if (app.got_subcommand(c_check)) {
        auto violations = jacobi_check(g);
        if (!violations.empty()) {
            const auto& v = violations.front();
            rep.field("invariant", "jacobi");
            rep.line("jacobi violated at (" + std::to_string(v.i) + "," + std::to_string(v.j) +
                     "," + std::to_string(v.k) + ")");
            std::string res;
            for (const auto& q : v.residual) res += (res.empty() ? "" : " ") + to_string(q);
            rep.field("residual", res);
            return rep.finish(1);
        }
        rep.line("jacobi: ok");
        if (spec.has_omega) {
            AltForm d = ce_differential(spec.omega, g);
            if (!d.is_zero()) {
                rep.field("invariant", "omega-closed");
                rep.field("residual", altform_str(d, g.labels()));
                return rep.finish(1);
            }
            require_symplectic(spec);  // nondegeneracy
            rep.line("omega: closed and nondegenerate");
        }
        rep.line("check: ok");
        return rep.finish(0);
    }
    if (app.got_subcommand(c_coh)) {
        if (k_arg < 0 || k_arg > g.dim()) throw InputError("--k out of range");
        Cohomology h = ce_cohomology(g, k_arg);
        rep.line("dim H^" + std::to_string(k_arg) + " = " + std::to_string(h.dimension));
        rep.field("dimension", h.dimension);
        return rep.finish(0);
    }
    if (app.got_subcommand(c_ext)) {
        SymplecticLieAlgebra sg = require_symplectic(spec);
        CentralExtension ext = central_extension(sg);
        rep.field("dim", ext.h.dim());
        for (int i = 0; i < ext.h.dim(); ++i)
            for (int j = i + 1; j < ext.h.dim(); ++j) {
                Vec b = ext.h.bracket(i, j);
                std::string s;
                for (int k = 0; k < ext.h.dim(); ++k)
                    if (b[k] != 0)
                        s += (s.empty() ? "" : " + ") + to_string(b[k]) + "*" + ext.h.labels()[k];
                if (!s.empty())
                    rep.line("[" + ext.h.labels()[i] + ", " + ext.h.labels()[j] + "] = " + s);
            }
        return rep.finish(0);
    }
    if (app.got_subcommand(c_orb)) {
        SymplecticLieAlgebra sg = require_symplectic(spec);
        CentralExtension ext = central_extension(sg);
        int d = coadjoint_orbit_dim(ext.h, ext.contact());
        rep.line("orbit dim = " + std::to_string(d));
        rep.field("orbit_dim", d);
        rep.field("base_dim", ext.base_dim);
        return rep.finish(d == ext.base_dim ? 0 : 1);
    }
    if (app.got_subcommand(c_cybe)) {
        AltForm r = parse_bivector(r_expr, g.labels());
        AltForm s = schouten_cybe(g, r);
        rep.field("schouten", altform_str(s, g.labels()));
        rep.line(s.is_zero() ? "cybe: satisfied" : "cybe: violated");
        return rep.finish(s.is_zero() ? 0 : 1);
    }
    if (app.got_subcommand(c_gutt)) {
        int order = max_order(order_arg);
        std::vector<std::string> vars = coord_names(g);
        Poly f = parse_poly(f_expr, g.labels());
        Poly g2 = parse_poly(g_expr, g.labels());
        PbwContext ctx(&g, order);
        PolySeries s = ctx.gutt_star(f, g2);
        for (int k = 0; k <= order; ++k) rep.line("h^" + std::to_string(k) + ": " + s[k].str(vars));
        return rep.finish(0);
    }
    if (app.got_subcommand(c_twist)) {
        int order = max_order(order_arg);
        SymplecticLieAlgebra sg = require_symplectic(spec);
        BuiltTwist bt = build_drinfeld_twist(sg, order);
        rep.field("verified_order", bt.twist.verified_order);
        rep.field("classical_limit",
                  altform_str(classical_limit(bt.twist.value), g.labels()));
        rep.line(twist_to_string(bt.twist.value));
        return rep.finish(0);
    }
    if (app.got_subcommand(c_fed)) {
        int order = max_order(order_arg);
        SymplecticLieAlgebra sg = require_symplectic(spec);
        Connection gamma = symplectic_connection(sg);
        int jet = 2 * order + 6;
        std::vector<LinDiffOp> frame = invariant_frame(g, jet, true);
        FedosovData d = fedosov_recursion(sg, gamma, {sg.omega()}, order, frame, jet);
        std::vector<std::string> vars = coord_names(g);
        std::string gs;
        for (int i = 0; i < g.dim(); ++i)
            for (int j = 0; j < g.dim(); ++j)
                for (int k = 0; k < g.dim(); ++k)
                    if (gamma.at(i, j, k) != 0)
                        gs += "Gamma^" + std::to_string(k + 1) + "_" + std::to_string(i + 1) +
                              std::to_string(j + 1) + " = " + to_string(gamma.at(i, j, k)) + "\n";
        rep.line("connection:\n" + (gs.empty() ? std::string("0\n") : gs) + "r:\n" +
                 weyl_str(d.r, vars));
        return rep.finish(0);
    }
    if (app.got_subcommand(c_cmp)) {
        int order = max_order(order_arg);
        SymplecticLieAlgebra sg = require_symplectic(spec);
        MainTheoremVerdict v = main_theorem_check(sg, order);
        for (size_t k = 0; k < v.rel.classes.size(); ++k) {
            std::string cs;
            for (const auto& q : v.rel.classes[k]) cs += (cs.empty() ? "" : " ") + to_string(q);
            rep.line("class at h^" + std::to_string(k + 1) + ": " + (cs.empty() ? "0" : cs));
        }
        if (v.trivial) {
            rep.line("trivial class confirmed to order " + std::to_string(order));
            return rep.finish(0);
        }
        rep.field("invariant", "relative-class");
        rep.field("first_obstructed_order", v.rel.first_obstructed_order);
        rep.field("obstruction", altform_str(v.rel.obstruction, g.labels()));
        return rep.finish(1);
    }
    if (app.got_subcommand(c_dito)) {
        if (dito_r < 1 || dito_r > 6) throw InputError("--r out of range [1, 6]");
        LinDiffOp op;
        std::vector<std::string> vars;
        if (spec.has_omega) {
            CentralExtension ext = central_extension(require_symplectic(spec));
            op = dito_operator(ext.h, dito_r);
            vars = coord_names(ext.h);
        } else {
            op = dito_operator(g, dito_r);
            vars = coord_names(g);
        }
        rep.line("D_" + std::to_string(dito_r) + " = " + op_str(op, vars));
        return rep.finish(0);
    }
    throw InputError("no subcommand dispatched");
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        std::cerr << "math failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
