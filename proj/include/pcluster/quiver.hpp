#pragma once

#include "int_matrix.hpp"
#include "rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcluster {

// Residue of k in 1..n.
inline int residue(long long k, int n) { return static_cast<int>(mod_floor(k - 1, n)) + 1; }

// n-periodic sign function, stored as epsilon_1..epsilon_n (+1 / -1).
class SignFunction {
public:
    SignFunction() = default;

    explicit SignFunction(std::string_view text) {
        for (char ch : text) {
            if (ch == '+') signs_.push_back(1);
            else if (ch == '-') signs_.push_back(-1);
            else throw std::invalid_argument("sign string may only contain '+' and '-'");
        }
        check();
    }

    explicit SignFunction(std::vector<int> signs) : signs_(std::move(signs)) {
        for (int s : signs_)
            if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
        check();
    }

    int n() const { return static_cast<int>(signs_.size()); }
    int at(long long k) const { return signs_[residue(k, n()) - 1]; }
    bool plus(long long k) const { return at(k) > 0; }
    bool minus(long long k) const { return at(k) < 0; }
    const std::vector<int>& signs() const { return signs_; }

    std::string str() const {
        std::string s;
        for (int x : signs_) s += x > 0 ? '+' : '-';
        return s;
    }

    // Sign function of the reflection x -> -x.
    SignFunction mirrored() const {
        std::vector<int> out(signs_.size());
        for (int k = 1; k <= n(); ++k) out[k - 1] = at(-k);
        return SignFunction(std::move(out));
    }

    // All signs flipped.
    SignFunction negated() const {
        std::vector<int> out(signs_);
        for (int& x : out) x = -x;
        return SignFunction(std::move(out));
    }

    friend bool operator==(const SignFunction& a, const SignFunction& b) { return a.signs_ == b.signs_; }

    // Every surjective sign function of period n, in lexicographic order of their strings.
    static std::vector<SignFunction> all_surjective(int n) {
        std::vector<SignFunction> out;
        for (long long mask = 0; mask < (1LL << n); ++mask) {
            std::string s;
            for (int i = n - 1; i >= 0; --i) s += ((mask >> i) & 1) ? '-' : '+';
            if (s.find('+') != std::string::npos && s.find('-') != std::string::npos)
                out.emplace_back(s);
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.str() < b.str(); });
        return out;
    }

private:
    void check() const {
        if (signs_.size() < 2) throw std::invalid_argument("sign function needs n >= 2");
        bool has_plus = std::find(signs_.begin(), signs_.end(), 1) != signs_.end();
        bool has_minus = std::find(signs_.begin(), signs_.end(), -1) != signs_.end();
        if (!has_plus || !has_minus)
            throw std::invalid_argument("sign function must take both values (quiver would have an oriented cycle)");
    }

    std::vector<int> signs_;
};

inline IntMatrix euler_matrix(const SignFunction& eps) {
    const int n = eps.n();
    IntMatrix e = IntMatrix::identity(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        std::size_t a = static_cast<std::size_t>(residue(j, n) - 1);
        std::size_t b = static_cast<std::size_t>(residue(j + 1, n) - 1);
        if (eps.minus(j)) e(a, b) -= 1;  // arrow j -> j+1
        else e(b, a) -= 1;               // arrow j+1 -> j
    }
    return e;
}

inline long long euler_form(const IntMatrix& e, const IntVector& x, const IntVector& y) {
    if (!e.square() || e.rows() != x.size() || x.size() != y.size())
        throw std::invalid_argument("euler_form dimension mismatch");
    return dot(x, e * y);
}

// Columns of (E^t)^{-1}.
inline std::vector<IntVector> projective_roots(const IntMatrix& e) {
    IntMatrix inv = inverse_unimodular(e.transpose());
    std::vector<IntVector> out;
    for (std::size_t j = 0; j < inv.cols(); ++j) out.push_back(inv.column(j));
    return out;
}

inline IntVector null_root(int n) {
    if (n < 2) throw std::invalid_argument("null_root needs n >= 2");
    return IntVector(static_cast<std::size_t>(n), 1);
}

}  // namespace pcluster
