#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace dq {

/// Exact rational scalar. Always reduced, denominator > 0; no floating
/// point anywhere in the kernel.
using Scalar = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A violated mathematical invariant (failed precondition, inconsistent
/// solve, broken axiom). Separate from InputError so the CLI can map the
/// two onto distinct exit codes.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Scalar frac(long long p, long long q) {
    if (q == 0) throw InputError("zero denominator");
    return Scalar(Integer(p), Integer(q));
}

/// Parses "p", "-p" or "p/q". Used by the CLI's rational-as-string schema.
inline Scalar parse_rational(const std::string& s) {
    auto bad = [&] { return InputError("malformed rational: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Scalar(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw bad();
        return Scalar(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

inline std::string to_string(const Scalar& q) {
    return q.str();
}

}  // namespace dq
