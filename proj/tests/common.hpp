#pragma once

#include "pcluster/pcluster.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace testing_support {

using namespace pcluster;

inline PeriodicTree positive_tree() {
    return PeriodicTree(SignFunction("-++"), {{1, 5, Dir::Down}, {2, 3, Dir::Down}, {1, 8, Dir::Up}});
}

inline PeriodicTree level_tree() {
    return PeriodicTree(SignFunction("+++-"),
                        {{0, 2, Dir::Up}, {2, 4, Dir::Down}, {3, 4, Dir::Up}, {3, 5, Dir::Down}});
}

inline PeriodicFunction make_pi(std::vector<long long> v, long long m) {
    PeriodicFunction pi;
    for (long long x : v) pi.values.emplace_back(x);
    pi.m = m;
    return pi;
}

inline std::vector<SignFunction> all_eps(int lo, int hi) {
    std::vector<SignFunction> out;
    for (int n = lo; n <= hi; ++n)
        for (auto& e : SignFunction::all_surjective(n)) out.push_back(e);
    return out;
}

// Arrows of the quiver as (tail, head), 1-based.
inline std::vector<std::pair<int, int>> arrows(const SignFunction& eps) {
    std::vector<std::pair<int, int>> out;
    const int n = eps.n();
    for (int j = 1; j <= n; ++j) {
        int a = j, b = residue(j + 1, n);
        if (eps.minus(j)) out.emplace_back(a, b);
        else out.emplace_back(b, a);
    }
    return out;
}

// <x,y> = sum x_i y_i - sum over arrows i->j of x_i y_j.
inline long long ringel_form(const SignFunction& eps, const IntVector& x, const IntVector& y) {
    long long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    for (auto [a, b] : arrows(eps)) s -= x[a - 1] * y[b - 1];
    return s;
}

// Number of paths from vertex j to each vertex (the quiver is acyclic for surjective eps).
inline IntVector path_counts(const SignFunction& eps, int j) {
    const int n = eps.n();
    IntVector out(n, 0);
    auto arr = arrows(eps);
    std::function<void(int)> go = [&](int v) {
        out[v - 1] += 1;
        for (auto [a, b] : arr)
            if (a == v) go(b);
    };
    go(j);
    return out;
}

// Sum of e_{k mod n} over k in (l, r].
inline IntVector interval_sum(int n, long long l, long long r) {
    IntVector v(n, 0);
    for (long long k = l + 1; k <= r; ++k) v[residue(k, n) - 1] += 1;
    return v;
}

// Laplace expansion.
inline long long laplace_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    long long d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t cc = 0, k = 0; cc < n; ++cc)
                if (cc != c) minor(r - 1, k++) = m(r, cc);
        long long term = m(0, c) * laplace_det(minor);
        d += (c % 2 ? -term : term);
    }
    return d;
}

// Does pi rise along every edge towards its upper end?
inline bool endpoints_respect(const PeriodicTree& t, const PeriodicFunction& pi) {
    for (const Edge& e : t.edges()) {
        Rational a = pi.at(e.left), b = pi.at(e.right);
        if (e.dir == Dir::Up ? !(b > a) : !(a > b)) return false;
    }
    return true;
}

// Injective rational pi with small denominators; m is never zero.
inline PeriodicFunction random_pi(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<long long> num(-60, 60), den(1, 7);
    for (;;) {
        PeriodicFunction pi;
        for (int k = 0; k < n; ++k) pi.values.emplace_back(Rational(num(rng), den(rng)));
        pi.m = Rational(num(rng), den(rng));
        if (pi.m != 0 && is_injective(pi)) return pi;
    }
}

inline bool permutation_equal_columns(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    std::vector<std::size_t> p(a.cols());
    std::iota(p.begin(), p.end(), 0);
    do {
        if (a.permute_columns(p) == b) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

inline bool permutation_equal_square(const IntMatrix& a, const IntMatrix& b) {
    std::vector<std::size_t> p(a.cols());
    std::iota(p.begin(), p.end(), 0);
    do {
        if (a.permute_columns(p).permute_rows(p) == b) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

}  // namespace testing_support
