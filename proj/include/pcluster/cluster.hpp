#pragma once

#include "int_matrix.hpp"
#include "quiver.hpp"
#include "roots.hpp"
#include "tree.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcluster {

inline IntMatrix edge_matrix(const PeriodicTree& t) {
    std::vector<IntVector> cols;
    for (std::size_t k = 0; k < t.edges().size(); ++k) cols.push_back(edge_vector(t, k).signed_vec());
    return IntMatrix::from_columns(cols);
}

inline IntMatrix exchange_matrix(const PeriodicTree& t) {
    IntMatrix e = euler_matrix(t.eps());
    IntMatrix g = edge_matrix(t);
    return g.transpose() * (e.transpose() - e) * g;
}

struct ExtendedExchangeMatrix {
    IntMatrix top;     // B
    IntMatrix bottom;  // C = -Gamma

    IntMatrix stacked() const { return IntMatrix::vstack(top, bottom); }
    friend bool operator==(const ExtendedExchangeMatrix&, const ExtendedExchangeMatrix&) = default;
};

inline ExtendedExchangeMatrix extended_exchange_matrix(const PeriodicTree& t) {
    return {exchange_matrix(t), -edge_matrix(t)};
}

inline ExtendedExchangeMatrix fz_mutate(const ExtendedExchangeMatrix& bt, std::size_t k) {
    const std::size_t n = bt.top.cols();
    if (k >= n) throw std::out_of_range("mutation index out of range");
    IntMatrix b = bt.stacked();
    IntMatrix out = b;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k) {
                out(i, j) = -b(i, j);
                continue;
            }
            long long bik = b(i, k), bkj = b(k, j);
            if ((bik > 0 && bkj > 0) || (bik < 0 && bkj < 0)) out(i, j) = b(i, j) + bik * std::llabs(bkj);
        }
    }
    return {out.block(0, 0, n, n), out.block(n, 0, b.rows() - n, n)};
}

inline std::vector<IntVector> c_vectors(const PeriodicTree& t) {
    IntMatrix c = -edge_matrix(t);
    std::vector<IntVector> out;
    for (std::size_t j = 0; j < c.cols(); ++j) out.push_back(c.column(j));
    return out;
}

// V with V^t E Gamma = I; column k is dim M_k.
inline IntMatrix dimension_matrix(const PeriodicTree& t) {
    IntMatrix eg = euler_matrix(t.eps()) * edge_matrix(t);
    return inverse_unimodular(eg).transpose();
}

// F-image of the function collapsing every edge but k, with edge k rising by one.
inline IntVector psi_infinity(const PeriodicTree& t, std::size_t k) {
    if (k >= t.edges().size()) throw std::out_of_range("edge index out of range");
    std::vector<Rational> rise(t.edges().size(), Rational(0));
    rise[k] = t.edge(k).dir == Dir::Up ? 1 : -1;
    std::size_t closing = detail::pick_closing(t, std::nullopt);
    auto sol = detail::solve_heights(t, rise, closing);
    if (sol.closing_rise.d == 0) throw std::invalid_argument("closing edge does not wind around the quotient");
    Rational m = (rise[closing] - sol.closing_rise.c) / sol.closing_rise.d;
    HeightVector h = F_map(detail::function_from_heights(sol, m));
    IntVector y;
    for (const auto& v : h.y) {
        if (boost::multiprecision::denominator(v) != 1) throw std::logic_error("non-integral psi_infinity");
        y.push_back(static_cast<long long>(boost::multiprecision::numerator(v)));
    }
    return y;
}

enum class SummandKind { Preprojective, Regular, Preinjective, ShiftedProjective };

inline std::string to_string(SummandKind k) {
    switch (k) {
    case SummandKind::Preprojective: return "preprojective";
    case SummandKind::Regular: return "regular";
    case SummandKind::Preinjective: return "preinjective";
    case SummandKind::ShiftedProjective: return "shifted_projective";
    }
    return "?";
}

struct ClusterSummand {
    IntVector dim;
    SummandKind kind = SummandKind::Regular;
    friend bool operator==(const ClusterSummand&, const ClusterSummand&) = default;
};

inline bool is_negative_projective(const SignFunction& eps, const IntVector& dim) {
    for (IntVector p : projective_roots(euler_matrix(eps))) {
        for (auto& x : p) x = -x;
        if (p == dim) return true;
    }
    return false;
}

inline ClusterSummand summand(const PeriodicTree& t, std::size_t k) {
    IntVector y = psi_infinity(t, k);
    IntMatrix et_inv = inverse_unimodular(euler_matrix(t.eps()).transpose());
    ClusterSummand s{et_inv * y, SummandKind::Regular};
    auto steps = walk_infinite_path(t);
    auto on_path = std::find_if(steps.begin(), steps.end(), [&](const PathStep& p) { return p.edge == k; });
    if (on_path == steps.end()) return s;
    // Edge slope is read along the path: an edge the path crosses right to left counts reversed.
    Slope slope = classify_slope(t);
    if (slope == Slope::Positive || (slope == Slope::Zero && on_path->climbs))
        s.kind = SummandKind::Preprojective;
    else if (is_negative_projective(t.eps(), s.dim))
        s.kind = SummandKind::ShiftedProjective;
    else
        s.kind = SummandKind::Preinjective;
    return s;
}

// Second classifier: the slope of psi_infinity, refined by the projective test.
inline SummandKind summand_kind_from_slope(const SignFunction& eps, const IntVector& y, const IntVector& dim) {
    long long m = 0;
    for (long long v : y) m += v;
    if (m > 0) return SummandKind::Preprojective;
    if (m == 0) return SummandKind::Regular;
    return is_negative_projective(eps, dim) ? SummandKind::ShiftedProjective : SummandKind::Preinjective;
}

// Number of vertex classes shared by edges i and j.
inline IntMatrix shared_endpoint_counts(const PeriodicTree& t) {
    const std::size_t n = static_cast<std::size_t>(t.n());
    IntMatrix c(n, n);
    for (long long x = 0; x < t.n(); ++x) {
        auto inc = incidences(t, x);
        for (std::size_t a = 0; a < inc.size(); ++a)
            for (std::size_t b = 0; b < inc.size(); ++b)
                if (inc[a].edge != inc[b].edge) c(inc[a].edge, inc[b].edge) += 1;
    }
    return c;
}

// Arrows read off the tree: around each vertex the incident edges are ordered
// parent, left child, right child (sign +) or child, right parent, left parent (sign -),
// and each edge points to the next one present in that cyclic order.
inline IntMatrix geometric_quiver(const PeriodicTree& t) {
    const std::size_t n = static_cast<std::size_t>(t.n());
    IntMatrix q(n, n);
    for (long long x = 0; x < t.n(); ++x) {
        long long slot[3] = {-1, -1, -1};
        bool plus = t.eps().plus(x);
        for (const auto& inc : incidences(t, x)) {
            int role;
            if (plus) role = inc.neighbor_above ? 0 : (inc.neighbor_left ? 1 : 2);
            else role = !inc.neighbor_above ? 0 : (inc.neighbor_left ? 2 : 1);
            slot[role] = static_cast<long long>(inc.edge);
        }
        for (int r = 0; r < 3; ++r) {
            long long from = slot[r], to = slot[(r + 1) % 3];
            if (from >= 0 && to >= 0) q(static_cast<std::size_t>(from), static_cast<std::size_t>(to)) += 1;
        }
    }
    return q;
}

inline IntMatrix algebraic_quiver(const IntMatrix& b) {
    IntMatrix q(b.rows(), b.cols());
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) q(i, j) = b(i, j) > 0 ? b(i, j) : 0;
    return q;
}

// Arrow multiplicities q(i, j) for v_i -> v_j; both constructions must agree.
inline IntMatrix quiver_of_cluster(const PeriodicTree& t) {
    IntMatrix alg = algebraic_quiver(exchange_matrix(t));
    IntMatrix geo = geometric_quiver(t);
    if (!(alg == geo)) throw std::logic_error("tree quiver disagrees with exchange matrix");
    return alg;
}

}  // namespace pcluster
