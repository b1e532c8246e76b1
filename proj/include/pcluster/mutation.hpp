#pragma once

#include "cluster.hpp"
#include "tree.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcluster {

enum class MutationRule { Reversed, SlideParent, SlideChild, SlideBoth, Unchanged };

inline std::string to_string(MutationRule r) {
    switch (r) {
    case MutationRule::Reversed: return "reversed";
    case MutationRule::SlideParent: return "slide_parent";
    case MutationRule::SlideChild: return "slide_child";
    case MutationRule::SlideBoth: return "slide_both";
    case MutationRule::Unchanged: return "unchanged";
    }
    return "?";
}

struct MutationResult {
    PeriodicTree tree;
    std::vector<std::size_t> index_map;  // old edge index -> new canonical index
    std::vector<MutationRule> rules;     // rule applied to each old edge
};

namespace detail {

inline Edge mirror(const Edge& e) { return {-e.right, -e.left, flip(e.dir)}; }

struct RawMutation {
    std::vector<Edge> edges;
    std::vector<MutationRule> rules;
};

// Mutation at an edge of positive slope; edges keep their positions.
inline RawMutation mutate_rising(const SignFunction& eps, const std::vector<Edge>& edges, std::size_t k) {
    const int n = eps.n();
    const long long a = edges[k].left, b = edges[k].right;
    RawMutation out{edges, std::vector<MutationRule>(edges.size(), MutationRule::Unchanged)};
    out.edges[k] = {a, b, Dir::Down};
    out.rules[k] = MutationRule::Reversed;

    // With `unique` the single neighbour of that kind, otherwise the one on the given side.
    auto pick = [&](long long x, bool want_parent, bool unique, bool left) -> std::optional<Incidence> {
        std::vector<Incidence> found;
        for (const auto& inc : incidences(edges, n, x))
            if (inc.neighbor_above == want_parent && (unique || inc.neighbor_left == left)) found.push_back(inc);
        if (found.size() > 1) throw std::invalid_argument("vertex has too many neighbours of one kind");
        if (found.empty()) return std::nullopt;
        return found[0];
    };

    // unique parent of p_b, or its left parent when eps_b = -
    std::optional<std::size_t> both;
    if (auto p = pick(b, true, eps.plus(b), true)) {
        long long c = p->neighbor;
        if (mod_floor(c - a, n) != 0) {
            out.edges[p->edge] = make_edge(a, c, c);
            out.rules[p->edge] = MutationRule::SlideParent;
        } else {
            long long s = (c - a) / n;
            out.edges[p->edge] = make_edge(a, b + s * n, b + s * n);
            out.rules[p->edge] = MutationRule::SlideBoth;
            both = p->edge;
        }
    }
    // unique child of p_a, or its right child when eps_a = +
    if (auto d = pick(a, false, eps.minus(a), false)) {
        long long x = d->neighbor;
        if (mod_floor(x - b, n) != 0) {
            if (out.rules[d->edge] != MutationRule::Unchanged) throw std::logic_error("mutation rules overlap");
            out.edges[d->edge] = make_edge(x, b, b);
            out.rules[d->edge] = MutationRule::SlideChild;
        } else if (!both || *both != d->edge) {
            throw std::logic_error("translate slide seen from one side only");
        }
    }
    return out;
}

}  // namespace detail

inline MutationResult mutate_tree(const PeriodicTree& t, std::size_t k) {
    if (k >= t.edges().size()) throw std::out_of_range("edge index out of range");
    detail::RawMutation raw;
    if (t.edge(k).dir == Dir::Up) {
        raw = detail::mutate_rising(t.eps(), t.edges(), k);
    } else {
        // Reflect x -> -x so that left and right trade places.
        std::vector<Edge> mirrored;
        for (const Edge& e : t.edges()) mirrored.push_back(detail::mirror(e));
        raw = detail::mutate_rising(t.eps().mirrored(), mirrored, k);
        for (Edge& e : raw.edges) e = detail::mirror(e);
    }
    MutationResult res{PeriodicTree(t.eps(), raw.edges), {}, raw.rules};
    for (const Edge& e : raw.edges) res.index_map.push_back(*res.tree.find(e));
    return res;
}

inline IntMatrix mutate_edge_vectors(const IntMatrix& gamma, const IntMatrix& b, std::size_t k) {
    if (!gamma.square() || !b.square() || gamma.cols() != b.cols())
        throw std::invalid_argument("mutate_edge_vectors dimension mismatch");
    if (k >= gamma.cols()) throw std::out_of_range("mutation index out of range");
    IntVector gk = gamma.column(k);
    int sk = 0;
    for (long long v : gk)
        if (v != 0) {
            sk = v > 0 ? 1 : -1;
            break;
        }
    IntMatrix out = gamma;
    for (std::size_t r = 0; r < gamma.rows(); ++r) out(r, k) = -gk[r];
    for (std::size_t j = 0; j < gamma.cols(); ++j) {
        if (j == k) continue;
        long long bkj = b(k, j);
        if (bkj == 0 || (bkj > 0) == (sk > 0)) continue;
        for (std::size_t r = 0; r < gamma.rows(); ++r) out(r, j) += std::llabs(bkj) * gk[r];
    }
    return out;
}

// Columns of `m` moved to the positions given by index_map.
inline IntMatrix align_columns(const IntMatrix& m, const std::vector<std::size_t>& index_map) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t r = 0; r < m.rows(); ++r) out(r, index_map[j]) = m(r, j);
    return out;
}

inline IntMatrix align_square(const IntMatrix& m, const std::vector<std::size_t>& index_map) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(index_map[i], index_map[j]) = m(i, j);
    return out;
}

inline bool check_mutation_consistency(const PeriodicTree& t, std::size_t k) {
    MutationResult res = mutate_tree(t, k);
    IntMatrix predicted = mutate_edge_vectors(edge_matrix(t), exchange_matrix(t), k);
    return align_columns(predicted, res.index_map) == edge_matrix(res.tree);
}

// fz_mutate(B~(T), k) against B~(mu_k T) after relabelling by index_map.
inline bool check_fz_agreement(const PeriodicTree& t, std::size_t k) {
    MutationResult res = mutate_tree(t, k);
    ExtendedExchangeMatrix fz = fz_mutate(extended_exchange_matrix(t), k);
    ExtendedExchangeMatrix direct = extended_exchange_matrix(res.tree);
    return align_square(fz.top, res.index_map) == direct.top &&
           align_columns(fz.bottom, res.index_map) == direct.bottom;
}

}  // namespace pcluster
