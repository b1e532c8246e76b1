#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcluster {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Floor division for machine integers (C++ truncates toward zero).
inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long mod_floor(long long a, long long b) { return a - floor_div(a, b) * b; }

inline BigInt floor(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

inline BigInt ceil(const Rational& r) { return -floor(Rational(-r)); }

inline int sign(const Rational& r) { return r.sign(); }

// "p/q" with q > 0 and gcd 1; integers print without the denominator.
inline std::string to_string(const Rational& r) {
    const BigInt& den = boost::multiprecision::denominator(r);
    std::string s = boost::multiprecision::numerator(r).str();
    if (den != 1) s += "/" + den.str();
    return s;
}

inline Rational parse_rational(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("malformed rational: '" + std::string(text) + "'"); };
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw bad();
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw bad();
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw bad();
        return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

}  // namespace pcluster
