#pragma once

#include "periodic_function.hpp"
#include "quiver.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcluster {

struct RootVector {
    int n = 0;
    long long i = 0;
    long long j = 0;
    IntVector vec;
    int sign = 1;

    IntVector signed_vec() const {
        IntVector v = vec;
        for (auto& x : v) x *= sign;
        return v;
    }
};

enum class RootType { Preprojective, Preinjective, Regular, NullMultiple, NotARoot };

inline std::string to_string(RootType t) {
    switch (t) {
    case RootType::Preprojective: return "preprojective";
    case RootType::Preinjective: return "preinjective";
    case RootType::Regular: return "regular";
    case RootType::NullMultiple: return "null_multiple";
    case RootType::NotARoot: return "not_a_root";
    }
    return "?";
}

inline bool is_real_schur(RootType t) {
    return t == RootType::Preprojective || t == RootType::Preinjective || t == RootType::Regular;
}

inline RootVector root_vector(int n, long long i, long long j, int sign = 1) {
    if (i >= j) throw std::invalid_argument("root_vector requires i < j");
    RootVector r{n, i, j, IntVector(static_cast<std::size_t>(n), 0), sign};
    long long len = j - i;
    for (auto& x : r.vec) x = len / n;
    for (long long t = i + 1; t <= i + len % n; ++t) r.vec[residue(t, n) - 1] += 1;
    return r;
}

inline RootType classify_root(const SignFunction& eps, long long i, long long j) {
    if (i >= j) throw std::invalid_argument("classify_root requires i < j");
    const int n = eps.n();
    int ei = eps.at(i), ej = eps.at(j);
    if (ei < 0 && ej > 0) return RootType::Preprojective;
    if (ei > 0 && ej < 0) return RootType::Preinjective;
    if (j - i < n) return RootType::Regular;
    if ((j - i) % n == 0) return RootType::NullMultiple;
    return RootType::NotARoot;
}

namespace detail {

inline void require_real_schur(const SignFunction& eps, long long i, long long j) {
    if (i >= j || !is_real_schur(classify_root(eps, i, j)))
        throw std::invalid_argument("(" + std::to_string(i) + "," + std::to_string(j) +
                                    ") is not a real Schur root for " + eps.str());
}

}  // namespace detail

inline std::vector<std::pair<long long, long long>> subroots(const SignFunction& eps, long long i, long long j) {
    detail::require_real_schur(eps, i, j);
    const long long n = eps.n();
    std::vector<std::pair<long long, long long>> out;
    for (long long a = i; a < j; ++a) {
        // admissible s for the left end: any if eps_a = -, else only (a - i)/n
        bool a_any = eps.minus(a);
        bool a_fixed = !a_any && mod_floor(a - i, n) == 0;
        if (!a_any && !a_fixed) continue;
        for (long long b = a + 1; b <= j; ++b) {
            bool b_any = eps.plus(b);
            bool b_fixed = !b_any && mod_floor(b - j, n) == 0;
            if (!b_any && !b_fixed) continue;
            bool ok = a_any || b_any || (a - i) / n == (b - j) / n;
            if (ok) out.emplace_back(a, b);
        }
    }
    return out;
}

enum class Stability { Interior, Boundary, Outside };

inline std::string to_string(Stability s) {
    switch (s) {
    case Stability::Interior: return "interior";
    case Stability::Boundary: return "boundary";
    case Stability::Outside: return "outside";
    }
    return "?";
}

// Membership in D(beta_ij) read off from pi.
inline Stability in_stability_domain(const SignFunction& eps, long long i, long long j, const PeriodicFunction& pi) {
    detail::require_real_schur(eps, i, j);
    if (pi.n() != eps.n()) throw std::invalid_argument("function and sign period differ");
    const Rational pii = pi.at(i), pij = pi.at(j);
    if (pii != pij) return Stability::Outside;
    bool tight = false;
    for (long long a = i + 1; a < j; ++a) {
        Rational v = pi.at(a);
        if (eps.minus(a)) {
            if (v < pij) return Stability::Outside;
            if (v == pij) tight = true;
        } else {
            if (v > pii) return Stability::Outside;
            if (v == pii) tight = true;
        }
    }
    return tight ? Stability::Boundary : Stability::Interior;
}

enum class SubrootFamily { All, Anchored, RealSchur };

// Verdict from <v, beta_ab> = pi(b) - pi(a) over a family of proper subroots.
inline Stability stability_by_subroots(const SignFunction& eps, long long i, long long j,
                                       const PeriodicFunction& pi, SubrootFamily family) {
    if (pi.at(i) != pi.at(j)) return Stability::Outside;
    bool tight = false;
    for (auto [a, b] : subroots(eps, i, j)) {
        if (a == i && b == j) continue;
        if (family == SubrootFamily::Anchored && a != i && b != j) continue;
        if (family == SubrootFamily::RealSchur && !is_real_schur(classify_root(eps, a, b))) continue;
        Rational pairing = pi.at(b) - pi.at(a);
        if (pairing > 0) return Stability::Outside;
        if (pairing == 0) tight = true;
    }
    return tight ? Stability::Boundary : Stability::Interior;
}

inline PeriodicFunction interior_witness(const SignFunction& eps, long long i, long long j) {
    detail::require_real_schur(eps, i, j);
    if (eps.plus(i)) return -interior_witness(eps.negated(), i, j);
    const long long n = eps.n();
    auto value = [&](long long k) -> long long {
        if (eps.plus(k) || mod_floor(k - j, n) == 0) return floor_div(k - j, n);
        return floor_div(k - i + n - 1, n);
    };
    PeriodicFunction pi;
    for (long long k = 1; k <= n; ++k) pi.values.emplace_back(value(k));
    pi.m = Rational(value(n + 1) - value(1));
    return pi;
}

// D(beta) membership for v given in vertex coordinates: y = E^t v, pi = F^{-1}(y).
inline Stability in_stability_domain_v(const SignFunction& eps, long long i, long long j,
                                       const std::vector<Rational>& v) {
    IntMatrix et = euler_matrix(eps).transpose();
    HeightVector h;
    for (std::size_t r = 0; r < et.rows(); ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < et.cols(); ++c) s += Rational(et(r, c)) * v[c];
        h.y.push_back(s);
    }
    return in_stability_domain(eps, i, j, from_heights(h));
}

}  // namespace pcluster
