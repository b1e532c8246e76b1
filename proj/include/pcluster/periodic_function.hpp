#pragma once

#include "quiver.hpp"
#include "rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pcluster {

// pi(1..n) together with the increment m: pi(k + n) = pi(k) + m.
struct PeriodicFunction {
    std::vector<Rational> values;
    Rational m;

    int n() const { return static_cast<int>(values.size()); }

    Rational at(long long k) const {
        if (values.empty()) throw std::logic_error("empty periodic function");
        int r = residue(k, n());
        long long q = (k - r) / n();
        return values[static_cast<std::size_t>(r - 1)] + Rational(q) * m;
    }

    PeriodicFunction operator-() const {
        PeriodicFunction out = *this;
        for (auto& v : out.values) v = -v;
        out.m = -out.m;
        return out;
    }

    friend bool operator==(const PeriodicFunction&, const PeriodicFunction&) = default;
};

struct HeightVector {
    std::vector<Rational> y;

    Rational sum() const {
        Rational s = 0;
        for (const auto& v : y) s += v;
        return s;
    }

    friend bool operator==(const HeightVector&, const HeightVector&) = default;
};

inline HeightVector F_map(const PeriodicFunction& pi) {
    HeightVector h;
    for (int i = 1; i <= pi.n(); ++i) h.y.push_back(pi.at(i) - pi.at(i - 1));
    return h;
}

// Inverse of F_map with pi(0) = 0 (heights determine pi up to an additive constant).
inline PeriodicFunction from_heights(const HeightVector& h) {
    PeriodicFunction pi;
    Rational acc = 0;
    for (const auto& v : h.y) {
        acc += v;
        pi.values.push_back(acc);
    }
    pi.m = acc;
    return pi;
}

// Two indices with equal values, or nothing when pi is injective on Z.
inline std::optional<std::pair<long long, long long>> find_collision(const PeriodicFunction& pi) {
    const int n = pi.n();
    if (pi.m == 0) return std::make_pair(1LL, 1LL + n);
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            Rational d = (pi.values[a - 1] - pi.values[b - 1]) / pi.m;
            if (boost::multiprecision::denominator(d) == 1) {
                // pi(a) = pi(b + d n)
                long long t = static_cast<long long>(boost::multiprecision::numerator(d));
                return std::make_pair(static_cast<long long>(a), b + t * n);
            }
        }
    return std::nullopt;
}

inline bool is_injective(const PeriodicFunction& pi) { return !find_collision(pi).has_value(); }

}  // namespace pcluster
