#pragma once

#include "cluster.hpp"
#include "mutation.hpp"
#include "roots.hpp"
#include "tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcluster {

inline std::string canonical_key(const PeriodicTree& t) {
    std::string key = t.eps().str() + "|";
    for (std::size_t k = 0; k < t.edges().size(); ++k) {
        const Edge& e = t.edge(k);
        if (k) key += ';';
        key += (e.dir == Dir::Up ? 'U' : 'D') + std::to_string(e.left) + "," + std::to_string(e.right);
    }
    return key;
}

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct BatteryReport {
    std::vector<CheckResult> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }
    const CheckResult* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

namespace detail {

inline bool sign_coherent(const IntVector& v) {
    bool pos = false, neg = false;
    for (long long x : v) {
        pos |= x > 0;
        neg |= x < 0;
    }
    return !(pos && neg);
}

inline std::string vec_str(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

}  // namespace detail

inline BatteryReport invariant_battery(const PeriodicTree& t) {
    BatteryReport rep;
    auto run = [&](const std::string& name, auto&& body) {
        CheckResult c{name, true, {}};
        try {
            c.detail = body();
            c.pass = c.detail.empty();
        } catch (const std::exception& ex) {
            c.pass = false;
            c.detail = std::string("exception: ") + ex.what();
        }
        rep.checks.push_back(std::move(c));
    };
    const int n = t.n();
    const std::size_t nn = static_cast<std::size_t>(n);

    run("validate", [&]() -> std::string {
        auto v = validate(t);
        return v.empty() ? "" : v[0].check + " " + v[0].witness;
    });
    if (!rep.ok()) return rep;

    const IntMatrix e = euler_matrix(t.eps());
    const IntMatrix g = edge_matrix(t);
    const IntMatrix b = exchange_matrix(t);

    run("det_gamma", [&]() -> std::string {
        long long d = determinant(g);
        return (d == 1 || d == -1) ? "" : "det = " + std::to_string(d);
    });
    run("sign_coherence", [&]() -> std::string {
        IntMatrix inv = inverse_unimodular(g);
        for (std::size_t j = 0; j < nn; ++j)
            if (!detail::sign_coherent(inv.column(j))) return "column " + std::to_string(j) + " of inverse";
        return "";
    });
    run("column_sums", [&]() -> std::string {
        for (std::size_t j = 0; j < nn; ++j) {
            long long s = 0;
            for (long long x : g.column(j)) s += x;
            if (mod_floor(s, n) == 0) return "column " + std::to_string(j);
        }
        return "";
    });
    run("schur_roots", [&]() -> std::string {
        for (const Edge& x : t.edges())
            if (!is_real_schur(classify_root(t.eps(), x.left, x.right))) return to_string(x);
        return "";
    });
    run("skew_exchange", [&]() -> std::string { return b.transpose() == -b ? "" : "B not skew"; });
    run("endpoint_count", [&]() -> std::string {
        IntMatrix c = shared_endpoint_counts(t);
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = 0; j < nn; ++j) {
                if (std::llabs(b(i, j)) != c(i, j))
                    return "b(" + std::to_string(i) + "," + std::to_string(j) + ")";
                long long pairing = euler_form(e, g.column(j), g.column(i)) - euler_form(e, g.column(i), g.column(j));
                if (pairing != b(i, j)) return "euler pairing at " + std::to_string(i) + "," + std::to_string(j);
            }
        return "";
    });
    run("quiver", [&]() -> std::string { return geometric_quiver(t) == algebraic_quiver(b) ? "" : "mismatch"; });
    run("dimension_identity", [&]() -> std::string {
        IntMatrix v = dimension_matrix(t);
        if (!(v.transpose() * e * g == IntMatrix::identity(nn))) return "V^t E Gamma != I";
        long long d = determinant(v);
        return (d == 1 || d == -1) ? "" : "det V = " + std::to_string(d);
    });
    run("summands", [&]() -> std::string {
        IntMatrix v = dimension_matrix(t);
        IntMatrix et = e.transpose();
        for (std::size_t k = 0; k < nn; ++k) {
            IntVector y = psi_infinity(t, k);
            if (y != et * v.column(k)) return "psi_infinity path mismatch at " + std::to_string(k);
            ClusterSummand s = summand(t, k);
            if (s.dim != v.column(k)) return "dim mismatch at " + std::to_string(k);
            if (s.kind != summand_kind_from_slope(t.eps(), y, s.dim))
                return "classifiers disagree at " + std::to_string(k);
            if (s.kind != SummandKind::ShiftedProjective) {
                if (std::any_of(s.dim.begin(), s.dim.end(), [](long long x) { return x < 0; }))
                    return "negative dim at " + std::to_string(k);
                if (euler_form(e, s.dim, s.dim) != 1) return "not exceptional at " + std::to_string(k);
            }
        }
        return "";
    });
    run("round_trip", [&]() -> std::string {
        PeriodicFunction pi = synthesize_morphism(t);
        if (!in_region(t, pi)) return "synthesized function outside region";
        return tree_from_function(t.eps(), pi) == t ? "" : "tree_from_function differs";
    });
    run("monotone_paths", [&]() -> std::string {
        PeriodicFunction pi = synthesize_morphism(t);
        for (const Edge& x : t.edges()) {
            Rational lo = std::min(pi.at(x.left), pi.at(x.right));
            Rational hi = std::max(pi.at(x.left), pi.at(x.right));
            for (long long k = x.left + 1; k < x.right; ++k) {
                Rational v = pi.at(k);
                if (t.eps().plus(k) ? !(v < lo) : !(v > hi)) return to_string(x) + " at " + std::to_string(k);
            }
        }
        return "";
    });
    run("involution", [&]() -> std::string {
        for (std::size_t k = 0; k < nn; ++k) {
            MutationResult r = mutate_tree(t, k);
            if (!is_valid(r.tree)) return "mutation " + std::to_string(k) + " invalid";
            if (!(mutate_tree(r.tree, r.index_map[k]).tree == t)) return "mu mu != id at " + std::to_string(k);
        }
        return "";
    });
    run("mutation_rules", [&]() -> std::string {
        for (std::size_t k = 0; k < nn; ++k) {
            MutationResult r = mutate_tree(t, k);
            IntMatrix g2 = edge_matrix(r.tree);
            for (std::size_t j = 0; j < nn; ++j) {
                if (j == k) continue;
                IntVector diff = g2.column(r.index_map[j]);
                IntVector gj = g.column(j), gk = g.column(k);
                long long coef = 0;
                for (std::size_t i = 0; i < nn; ++i)
                    if (gk[i] != 0) {
                        coef = (diff[i] - gj[i]) / gk[i];
                        break;
                    }
                for (std::size_t i = 0; i < nn; ++i)
                    if (diff[i] != gj[i] + coef * gk[i]) return "not a multiple of gamma_k";
                long long expect = r.rules[j] == MutationRule::Unchanged   ? 0
                                   : r.rules[j] == MutationRule::SlideBoth ? 2
                                                                           : 1;
                if (coef != expect) return "coefficient " + std::to_string(coef) + " under " + to_string(r.rules[j]);
            }
        }
        return "";
    });
    run("fz_agreement", [&]() -> std::string {
        for (std::size_t k = 0; k < nn; ++k) {
            if (!check_fz_agreement(t, k)) return "extended matrix at " + std::to_string(k);
            if (!check_mutation_consistency(t, k)) return "edge vectors at " + std::to_string(k);
        }
        return "";
    });
    run("slope_trichotomy", [&]() -> std::string {
        Slope slope = classify_slope(t);
        bool pp = false, pi = false;
        for (std::size_t k = 0; k < nn; ++k) {
            SummandKind kind = summand(t, k).kind;
            pp |= kind == SummandKind::Preprojective;
            pi |= kind == SummandKind::Preinjective || kind == SummandKind::ShiftedProjective;
        }
        if (slope == Slope::Positive && pi) return "positive slope with preinjective summand";
        if (slope == Slope::Negative && pp) return "negative slope with preprojective summand";
        if (slope == Slope::Zero && !(pp && pi)) return "zero slope missing a side";
        PeriodicFunction f = synthesize_morphism(t);
        int expect = slope == Slope::Positive ? 1 : slope == Slope::Negative ? -1 : 0;
        if (expect != 0 && f.m.sign() != expect) return "synthesized slope sign";
        return "";
    });
    run("face_stability", [&]() -> std::string {
        for (std::size_t k = 0; k < nn; ++k) {
            const Edge& x = t.edge(k);
            PeriodicFunction f = face_point(t, k);
            if (in_stability_domain(t.eps(), x.left, x.right, f) == Stability::Outside)
                return "face of " + to_string(x);
        }
        return "";
    });
    return rep;
}

struct Arc {
    std::string from;
    std::size_t edge;
    std::string to;
    friend bool operator==(const Arc&, const Arc&) = default;
};

struct ExchangeGraph {
    std::vector<std::string> order;  // discovery order
    std::map<std::string, PeriodicTree> nodes;
    std::map<std::string, int> depth;
    std::vector<Arc> arcs;
};

class BatteryFailure : public std::runtime_error {
public:
    BatteryFailure(const std::string& key, const CheckResult& c)
        : std::runtime_error("battery check '" + c.name + "' failed on " + key + ": " + c.detail), key(key), check(c) {}
    std::string key;
    CheckResult check;
};

inline ExchangeGraph bfs(const SignFunction& eps, int max_depth, std::size_t max_nodes = 100000, bool verify = true) {
    if (max_depth < 0 || max_nodes == 0) throw std::invalid_argument("bfs limits must be positive");
    ExchangeGraph g;
    auto visit = [&](const PeriodicTree& t, int d) {
        std::string key = canonical_key(t);
        if (verify) {
            BatteryReport rep = invariant_battery(t);
            if (auto* f = rep.first_failure()) throw BatteryFailure(key, *f);
        }
        g.nodes.emplace(key, t);
        g.depth[key] = d;
        g.order.push_back(key);
        return key;
    };
    std::vector<std::string> frontier{visit(initial_tree(eps), 0)};
    for (int d = 0; d < max_depth && !frontier.empty(); ++d) {
        std::sort(frontier.begin(), frontier.end());
        std::map<std::string, PeriodicTree> next;
        for (const auto& key : frontier) {
            const PeriodicTree& t = g.nodes.at(key);
            for (std::size_t k = 0; k < static_cast<std::size_t>(eps.n()); ++k) {
                PeriodicTree m = mutate_tree(t, k).tree;
                std::string mk = canonical_key(m);
                g.arcs.push_back({key, k, mk});
                if (g.nodes.count(mk) || next.count(mk)) continue;
                if (g.nodes.size() + next.size() >= max_nodes) continue;
                next.emplace(mk, std::move(m));
            }
        }
        frontier.clear();
        for (const auto& [mk, m] : next) frontier.push_back(visit(m, d + 1));
    }
    return g;
}

struct DescentResult {
    std::optional<PeriodicTree> tree;  // empty when the cap was hit
    std::size_t steps = 0;
};

inline std::size_t default_descent_cap(const PeriodicFunction& pi) {
    BigInt den = boost::multiprecision::denominator(pi.m);
    for (const auto& v : pi.values) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
    Rational bound = abs(pi.m);
    for (int k = 0; k <= pi.n(); ++k) bound = std::max(bound, Rational(abs(pi.at(k))));
    BigInt b = ceil(bound * Rational(den));
    return static_cast<std::size_t>(10 * pi.n()) * (1 + static_cast<std::size_t>(b));
}

enum class DescentRule {
    ExitWall,   // cross the wall where the segment towards pi leaves the current region
    LeastIndex  // cross the least-index wall pi lies beyond (may not terminate)
};

namespace detail {

inline Rational wall_pairing(const PeriodicTree& t, std::size_t k, const HeightVector& h) {
    IntVector g = edge_vector(t, k).signed_vec();
    Rational s = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i]) s += h.y[i] * g[i];
    return s;
}

// Decreasing function in the region of T_0, perturbed off special positions.
inline PeriodicFunction descent_start(int n) {
    PeriodicFunction p;
    const long long den = 7919;
    for (long long k = 1; k <= n; ++k) p.values.emplace_back(Rational(-k * den - k * k, den));
    p.m = -n;
    return p;
}

// A point with m = 0 inside the region of some zero-slope tree.
inline std::pair<PeriodicTree, PeriodicFunction> horizontal_anchor(const SignFunction& eps) {
    const int n = eps.n();
    std::vector<long long> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        // residues get distinct offsets k/101, which no multiple of m = 1/(128n) can cancel
        PeriodicFunction q;
        for (long long k = 0; k < n; ++k) q.values.emplace_back(Rational(perm[k] * 101 + k + 1, 101));
        q.m = Rational(1, 128 * n);
        PeriodicTree t = tree_from_function(eps, q);
        q.m = 0;
        if (in_region(t, q)) return {t, q};
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw std::logic_error("no horizontal region point found for " + eps.str());
}

// Follow the segment from `from` (a point of R(t)) to `to`. Returns false when the cap is hit.
inline bool walk_segment(PeriodicTree& t, const PeriodicFunction& from, const PeriodicFunction& to, std::size_t limit,
                         std::size_t& steps) {
    HeightVector h0 = F_map(from), h1 = F_map(to);
    for (;;) {
        std::optional<std::size_t> exit;
        Rational best;
        for (std::size_t k = 0; k < t.edges().size(); ++k) {
            Rational s1 = wall_pairing(t, k, h1);
            if (s1 == 0) throw std::domain_error("function lies on a wall");
            if (s1 > 0) continue;
            Rational s0 = wall_pairing(t, k, h0);
            Rational at = s0 / (s0 - s1);
            if (!exit || at < best) {
                exit = k;
                best = at;
            }
        }
        if (!exit) return true;
        if (steps >= limit) return false;
        t = mutate_tree(t, *exit).tree;
        ++steps;
    }
}

}  // namespace detail

// Walk from T_0 through the exchange graph into the region containing pi.
inline DescentResult mutation_descent(const SignFunction& eps, const PeriodicFunction& pi,
                                      std::optional<std::size_t> cap = std::nullopt,
                                      DescentRule rule = DescentRule::ExitWall) {
    if (pi.n() != eps.n()) throw std::invalid_argument("function and sign period differ");
    if (pi.m == 0) throw std::domain_error("slope increment m must be nonzero");
    if (auto c = find_collision(pi)) throw NonInjectiveError(c->first, c->second);
    const std::size_t limit = cap.value_or(default_descent_cap(pi));
    PeriodicTree t = initial_tree(eps);
    DescentResult res;

    if (rule == DescentRule::LeastIndex) {
        HeightVector h = F_map(pi);
        for (;;) {
            std::optional<std::size_t> wall;
            for (std::size_t k = 0; k < t.edges().size() && !wall; ++k) {
                Rational s = detail::wall_pairing(t, k, h);
                if (s == 0) throw std::domain_error("function lies on a wall");
                if (s < 0) wall = k;
            }
            if (!wall) {
                res.tree = t;
                return res;
            }
            if (res.steps >= limit) return res;
            t = mutate_tree(t, *wall).tree;
            ++res.steps;
        }
    }

    // Segments stay off m = 0 except at a point inside a zero-slope region.
    PeriodicFunction start = detail::descent_start(eps.n());
    if (pi.m > 0) {
        auto [anchor_tree, anchor] = detail::horizontal_anchor(eps);
        if (!detail::walk_segment(t, start, anchor, limit, res.steps)) return res;
        if (!(t == anchor_tree)) throw std::logic_error("descent missed the horizontal anchor region");
        start = anchor;
    }
    if (detail::walk_segment(t, start, pi, limit, res.steps)) res.tree = t;
    return res;
}

}  // namespace pcluster
