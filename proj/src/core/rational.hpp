#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "errors.hpp"

namespace chandeg {

// Arbitrary-precision rationals keep channel construction and validation
// exact; doubles are derived from these only at information-computation
// boundaries.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

/// Canonical text form: "num/den", or just "num" when den == 1.
inline std::string rat_to_string(const Rat& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Parses "a/b" or "a" with optional sign. Returns nullopt on malformed text.
inline std::optional<Rat> parse_rational(const std::string& s) {
    const auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(s)) return std::nullopt;
            return Rat(BigInt(s));
        }
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        BigInt d(den);
        if (d == 0) return std::nullopt;
        return Rat(BigInt(num), d);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline BigInt binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt out = 1;
    for (long long i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

}  // namespace chandeg
