#pragma once

#include "periodic_function.hpp"
#include "quiver.hpp"
#include "rational.hpp"
#include "roots.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcluster {

enum class Dir { Up, Down };

inline Dir flip(Dir d) { return d == Dir::Up ? Dir::Down : Dir::Up; }

// Up: p_left < p_right.  Down: p_left > p_right.
struct Edge {
    long long left = 0;
    long long right = 0;
    Dir dir = Dir::Up;

    long long length() const { return right - left; }
    long long lower() const { return dir == Dir::Up ? left : right; }
    long long upper() const { return dir == Dir::Up ? right : left; }

    auto operator<=>(const Edge&) const = default;
};

inline std::string to_string(const Edge& e) {
    return std::string(e.dir == Dir::Up ? "Up(" : "Down(") + std::to_string(e.left) + "," +
           std::to_string(e.right) + ")";
}

inline Edge make_edge(long long a, long long b, long long upper_end) {
    Edge e{std::min(a, b), std::max(a, b), Dir::Up};
    e.dir = (upper_end == e.right) ? Dir::Up : Dir::Down;
    return e;
}

// Representative with left endpoint in 0..n-1.
inline Edge normalize(Edge e, int n) {
    long long q = floor_div(e.left, n);
    e.left -= q * n;
    e.right -= q * n;
    return e;
}

class PeriodicTree {
public:
    PeriodicTree() = default;

    PeriodicTree(SignFunction eps, std::vector<Edge> edges) : eps_(std::move(eps)), edges_(std::move(edges)) {
        const int n = eps_.n();
        if (static_cast<int>(edges_.size()) != n)
            throw std::invalid_argument("a " + std::to_string(n) + "-periodic tree needs exactly " +
                                        std::to_string(n) + " edge classes, got " +
                                        std::to_string(edges_.size()));
        for (auto& e : edges_) {
            if (e.right <= e.left)
                throw std::invalid_argument("edge " + to_string(e) + " must have right > left");
            e = normalize(e, n);
        }
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t k = 1; k < edges_.size(); ++k)
            if (edges_[k].left == edges_[k - 1].left && edges_[k].right == edges_[k - 1].right)
                throw std::invalid_argument("duplicate edge class " + to_string(edges_[k]));
    }

    int n() const { return eps_.n(); }
    const SignFunction& eps() const { return eps_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t k) const { return edges_.at(k); }

    // Position of the class of e in the canonical order.
    std::optional<std::size_t> find(const Edge& e) const {
        Edge ne = normalize(e, n());
        auto it = std::lower_bound(edges_.begin(), edges_.end(), ne);
        if (it != edges_.end() && *it == ne) return static_cast<std::size_t>(it - edges_.begin());
        return std::nullopt;
    }

    friend bool operator==(const PeriodicTree& a, const PeriodicTree& b) {
        return a.eps_ == b.eps_ && a.edges_ == b.edges_;
    }

private:
    SignFunction eps_;
    std::vector<Edge> edges_;
};

// Line through p_0, p_1, p_2, ... descending with slope -1.
inline PeriodicTree initial_tree(const SignFunction& eps) {
    std::vector<Edge> edges;
    for (int i = 1; i <= eps.n(); ++i) edges.push_back({i - 1, i, Dir::Down});
    return PeriodicTree(eps, edges);
}

inline RootVector edge_vector(const PeriodicTree& t, std::size_t k) {
    const Edge& e = t.edge(k);
    return root_vector(t.n(), e.left, e.right, e.dir == Dir::Up ? 1 : -1);
}

// ---- local structure around a vertex ----------------------------------------------------------

struct Incidence {
    std::size_t edge;
    long long neighbor;
    bool neighbor_above;
    bool neighbor_left;
};

// Edge instances at p_x, for an edge list in any order.
inline std::vector<Incidence> incidences(const std::vector<Edge>& edges, int n, long long x) {
    std::vector<Incidence> out;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge& e = edges[k];
        if (mod_floor(x - e.left, n) == 0) {
            long long shift = x - e.left;
            out.push_back({k, e.right + shift, e.dir == Dir::Up, false});
        }
        if (mod_floor(x - e.right, n) == 0) {
            long long shift = x - e.right;
            out.push_back({k, e.left + shift, e.dir == Dir::Down, true});
        }
    }
    return out;
}

inline std::vector<Incidence> incidences(const PeriodicTree& t, long long x) {
    return incidences(t.edges(), t.n(), x);
}

struct LocalCounts {
    int left_parents = 0, right_parents = 0, left_children = 0, right_children = 0;
    int parents() const { return left_parents + right_parents; }
    int children() const { return left_children + right_children; }
    int degree() const { return parents() + children(); }
};

inline LocalCounts local_counts(const PeriodicTree& t, long long x) {
    LocalCounts c;
    for (const auto& inc : incidences(t, x)) {
        if (inc.neighbor_above) (inc.neighbor_left ? c.left_parents : c.right_parents)++;
        else (inc.neighbor_left ? c.left_children : c.right_children)++;
    }
    return c;
}

// ---- quotient graph ---------------------------------------------------------------------------

namespace detail {

struct QuotientInfo {
    bool connected = false;
    std::vector<std::size_t> cycle_edges;  // empty unless exactly one cycle survives pruning
    std::vector<long long> winding;        // per non-spanning edge: lift mismatch / n
};

inline QuotientInfo analyze_quotient(const PeriodicTree& t) {
    const int n = t.n();
    QuotientInfo info;
    const auto& edges = t.edges();
    auto res = [&](long long x) { return static_cast<std::size_t>(mod_floor(x, n)); };

    // Lift each residue to a concrete index along a spanning tree.
    std::vector<std::optional<long long>> lift(static_cast<std::size_t>(n));
    std::vector<bool> used(edges.size(), false);
    lift[0] = 0;
    std::queue<std::size_t> q;
    q.push(0);
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop();
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (used[k]) continue;
            const Edge& e = edges[k];
            std::size_t l = res(e.left), r = res(e.right);
            if (l == r) continue;
            if (l == u && !lift[r]) {
                lift[r] = *lift[u] + e.length();
            } else if (r == u && !lift[l]) {
                lift[l] = *lift[u] - e.length();
            } else {
                continue;
            }
            used[k] = true;
            q.push(l == u ? r : l);
        }
    }
    info.connected = std::all_of(lift.begin(), lift.end(), [](const auto& v) { return v.has_value(); });
    if (!info.connected) return info;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (used[k]) continue;
        const Edge& e = edges[k];
        long long mismatch = *lift[res(e.left)] + e.length() - *lift[res(e.right)];
        info.winding.push_back(mismatch / n);
    }

    // Prune degree-one vertices; what survives is the cycle.
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<bool> alive(edges.size(), true);
    for (const Edge& e : edges) {
        degree[res(e.left)]++;
        degree[res(e.right)]++;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (!alive[k]) continue;
            std::size_t l = res(edges[k].left), r = res(edges[k].right);
            if (degree[l] == 1 || degree[r] == 1) {
                alive[k] = false;
                degree[l]--;
                degree[r]--;
                changed = true;
            }
        }
    }
    for (std::size_t k = 0; k < edges.size(); ++k)
        if (alive[k]) info.cycle_edges.push_back(k);
    return info;
}

}  // namespace detail

inline std::vector<std::size_t> infinite_path_edges(const PeriodicTree& t) {
    return detail::analyze_quotient(t).cycle_edges;
}

enum class Slope { Positive, Zero, Negative };

inline std::string to_string(Slope s) {
    switch (s) {
    case Slope::Positive: return "positive";
    case Slope::Zero: return "zero";
    case Slope::Negative: return "negative";
    }
    return "?";
}

struct PathStep {
    std::size_t edge;
    bool climbs;  // walking the path rightwards, this edge goes up
};

// The quotient cycle walked once in the direction of increasing index.
inline std::vector<PathStep> walk_infinite_path(const PeriodicTree& t) {
    const int n = t.n();
    auto cycle = infinite_path_edges(t);
    if (cycle.empty()) throw std::invalid_argument("tree has no quotient cycle");
    std::set<std::size_t> remaining(cycle.begin(), cycle.end());
    const long long start = t.edge(cycle[0]).left;
    long long x = start;
    std::size_t current = cycle[0];
    std::vector<PathStep> steps;
    for (;;) {
        remaining.erase(current);
        const Edge& e = t.edge(current);
        long long y;
        bool climb;
        if (mod_floor(x - e.left, n) == 0) {
            y = e.right + (x - e.left);
            climb = e.dir == Dir::Up;
        } else {
            y = e.left + (x - e.right);
            climb = e.dir == Dir::Down;
        }
        steps.push_back({current, climb});
        x = y;
        if (remaining.empty()) break;
        std::optional<std::size_t> next;
        for (std::size_t k : remaining) {
            const Edge& f = t.edge(k);
            if (mod_floor(x - f.left, n) == 0 || mod_floor(x - f.right, n) == 0) {
                next = k;
                break;
            }
        }
        if (!next) throw std::logic_error("quotient cycle walk got stuck");
        current = *next;
    }
    if ((x - start) % n != 0 || (x - start) / n == 0)
        throw std::invalid_argument("quotient cycle does not wind around once");
    if (x < start)
        for (auto& s : steps) s.climbs = !s.climbs;
    return steps;
}

inline Slope classify_slope(const PeriodicTree& t) {
    auto steps = walk_infinite_path(t);
    bool up = std::any_of(steps.begin(), steps.end(), [](const PathStep& s) { return s.climbs; });
    bool down = std::any_of(steps.begin(), steps.end(), [](const PathStep& s) { return !s.climbs; });
    if (!down) return Slope::Positive;
    if (!up) return Slope::Negative;
    return Slope::Zero;
}

// Residues 1..n of degree-one vertices.
inline std::vector<int> leaves(const PeriodicTree& t) {
    std::vector<int> out;
    for (int x = 1; x <= t.n(); ++x)
        if (local_counts(t, x).degree() == 1) out.push_back(x);
    return out;
}

struct Extrema {
    std::vector<int> maxima;
    std::vector<int> minima;
};

inline Extrema internal_extrema(const PeriodicTree& t) {
    Extrema out;
    for (int x = 1; x <= t.n(); ++x) {
        LocalCounts c = local_counts(t, x);
        if (c.children() == 2 && c.parents() == 0) out.maxima.push_back(x);
        if (c.parents() == 2 && c.children() == 0) out.minima.push_back(x);
    }
    return out;
}

// ---- heights on the quotient ------------------------------------------------------------------

namespace detail {

// c + d*m
struct Affine {
    Rational c = 0;
    Rational d = 0;

    Rational eval(const Rational& m) const { return c + d * m; }
    friend Affine operator+(Affine a, const Affine& b) { return {a.c + b.c, a.d + b.d}; }
    friend Affine operator-(Affine a, const Affine& b) { return {a.c - b.c, a.d - b.d}; }
};

struct HeightSolution {
    std::vector<Affine> h;  // height of the representative r in 0..n-1
    std::size_t closing = 0;
    Affine closing_rise;    // pi(right) - pi(left) along the closing edge
};

// Heights with pi(right) - pi(left) = rise[k] on every edge except `closing`.
inline HeightSolution solve_heights(const PeriodicTree& t, const std::vector<Rational>& rise, std::size_t closing) {
    const int n = t.n();
    const auto& edges = t.edges();
    auto res = [&](long long x) { return static_cast<std::size_t>(mod_floor(x, n)); };
    auto per = [&](long long x) { return floor_div(x, n); };

    HeightSolution sol;
    sol.closing = closing;
    std::vector<std::optional<Affine>> h(static_cast<std::size_t>(n));
    h[0] = Affine{};
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (k == closing) continue;
            const Edge& e = edges[k];
            std::size_t l = res(e.left), r = res(e.right);
            // pi(left) = h[l] + per(left) m, pi(right) = h[r] + per(right) m
            Affine shift{rise[k], Rational(per(e.left) - per(e.right))};
            if (h[l] && !h[r]) {
                h[r] = *h[l] + shift;
                progress = true;
            } else if (h[r] && !h[l]) {
                h[l] = *h[r] - shift;
                progress = true;
            }
        }
    }
    for (auto& v : h) {
        if (!v) throw std::invalid_argument("quotient graph is disconnected");
        sol.h.push_back(*v);
    }
    const Edge& e = edges[closing];
    sol.closing_rise = (sol.h[res(e.right)] + Affine{0, Rational(per(e.right))}) -
                       (sol.h[res(e.left)] + Affine{0, Rational(per(e.left))});
    return sol;
}

inline PeriodicFunction function_from_heights(const HeightSolution& sol, const Rational& m) {
    const std::size_t n = sol.h.size();
    PeriodicFunction pi;
    pi.m = m;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational v = sol.h[k % n].eval(m);
        if (k == n) v += m;
        pi.values.push_back(v);
    }
    return pi;
}

inline std::vector<Rational> unit_rises(const PeriodicTree& t) {
    std::vector<Rational> rise;
    for (const Edge& e : t.edges()) rise.emplace_back(e.dir == Dir::Up ? 1 : -1);
    return rise;
}

inline std::size_t pick_closing(const PeriodicTree& t, std::optional<std::size_t> avoid) {
    for (std::size_t k : infinite_path_edges(t))
        if (!avoid || k != *avoid) return k;
    throw std::invalid_argument("tree has no usable quotient cycle edge");
}

// Integer m != 0 making the closing edge rise strictly in the direction of `want`.
inline Rational strict_slope(const Affine& a, int want) {
    if (a.d == 0) throw std::invalid_argument("closing edge does not wind around the quotient");
    // want * (c + d m) > 0
    Rational bound = -a.c / a.d;
    bool above = (want > 0) == (a.d > 0);
    BigInt m = above ? floor(bound) + 1 : ceil(bound) - 1;
    if (m == 0) m = above ? 1 : -1;
    return Rational(m);
}

}  // namespace detail

// Integral periodic function in R(T) with unit rises on every spanning edge (not perturbed).
inline PeriodicFunction integral_morphism(const PeriodicTree& t, std::optional<std::size_t> horizontal = std::nullopt) {
    auto rise = detail::unit_rises(t);
    if (horizontal) rise[*horizontal] = 0;
    std::size_t closing = detail::pick_closing(t, horizontal);
    auto sol = detail::solve_heights(t, rise, closing);
    Rational m = detail::strict_slope(sol.closing_rise, rise[closing] > 0 ? 1 : -1);
    return detail::function_from_heights(sol, m);
}

// pi(k) + k delta for k = 1..n, with m kept; strict inequalities survive since (n-1) delta < 1/den.
inline PeriodicFunction perturb_to_injective(PeriodicFunction pi) {
    const int n = pi.n();
    BigInt den = 1;
    for (const auto& v : pi.values) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
    den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(pi.m));
    Rational delta(BigInt(1), den * n * n + 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
        PeriodicFunction out = pi;
        for (int k = 1; k <= n; ++k) out.values[k - 1] += Rational(k) * delta;
        if (is_injective(out)) return out;
        delta /= 2;
    }
    throw std::logic_error("failed to perturb periodic function to an injective one");
}

inline PeriodicFunction synthesize_morphism(const PeriodicTree& t) { return perturb_to_injective(integral_morphism(t)); }

// Point on the face of R(T) where edge k is horizontal and all other edges strict.
inline PeriodicFunction face_point(const PeriodicTree& t, std::size_t k) { return integral_morphism(t, k); }

inline bool in_region(const PeriodicTree& t, const PeriodicFunction& pi) {
    if (pi.n() != t.n()) throw std::invalid_argument("function and tree period differ");
    HeightVector h = F_map(pi);
    for (std::size_t k = 0; k < t.edges().size(); ++k) {
        IntVector g = edge_vector(t, k).signed_vec();
        Rational s = 0;
        for (std::size_t i = 0; i < g.size(); ++i) s += h.y[i] * g[i];
        if (s <= 0) return false;
    }
    return true;
}

// ---- unique tree from a function --------------------------------------------------------------

class NonInjectiveError : public std::domain_error {
public:
    NonInjectiveError(long long a, long long b)
        : std::domain_error("function is not injective: pi(" + std::to_string(a) + ") = pi(" + std::to_string(b) + ")"),
          first(a), second(b) {}
    long long first;
    long long second;
};

namespace detail {

struct LocalFunction {
    int n;
    std::vector<int> signs;
    std::vector<Rational> vals;
    Rational m;

    int sign(long long k) const { return signs[residue(k, n) - 1]; }
    Rational at(long long k) const {
        int r = residue(k, n);
        return vals[r - 1] + Rational((k - r) / n) * m;
    }
};

using Pair = std::pair<long long, long long>;

inline Pair ordered(long long a, long long b) { return a < b ? Pair{a, b} : Pair{b, a}; }

// Nearest positions on either side with sign s, searched within one period.
inline std::optional<Pair> neighbours_with_sign(const LocalFunction& f, long long j, int s) {
    std::optional<long long> lo, hi;
    for (long long d = 1; d <= f.n && !lo; ++d)
        if (f.sign(j - d) == s) lo = j - d;
    for (long long d = 1; d <= f.n && !hi; ++d)
        if (f.sign(j + d) == s) hi = j + d;
    if (!lo || !hi) return std::nullopt;
    return Pair{*lo, *hi};
}

// j beats every other index of [lo, hi]: above all when want_max, below all otherwise.
// Returns the runner-up index.
inline std::optional<long long> strict_extremum(const LocalFunction& f, long long j, Pair range, bool want_max) {
    Rational pj = f.at(j);
    std::optional<long long> best;
    Rational best_val;
    for (long long t = range.first; t <= range.second; ++t) {
        if (t == j) continue;
        Rational v = f.at(t);
        if (want_max ? !(pj > v) : !(pj < v)) return std::nullopt;
        if (!best || (want_max ? v > best_val : v < best_val)) {
            best = t;
            best_val = v;
        }
    }
    return best;
}

inline std::vector<Pair> build_tree(const LocalFunction& f) {
    const int n = f.n;
    if (n == 1) return {{1, 2}};

    // Case 1: a leaf, found among consecutive equal-sign positions.
    for (long long j = 1; j <= n; ++j) {
        int s = f.sign(j);
        auto range = neighbours_with_sign(f, j, s);
        if (!range) continue;
        auto partner = strict_extremum(f, j, *range, s < 0);
        if (!partner) continue;

        int r = static_cast<int>(j);
        LocalFunction g{n - 1, {}, {}, f.m};
        for (int a = 1; a <= n; ++a) {
            if (a == r) continue;
            g.signs.push_back(f.signs[a - 1]);
            g.vals.push_back(f.vals[a - 1]);
        }
        auto to_old = [&](long long y) {
            long long q = floor_div(y - 1, n - 1);
            long long a = y - q * (n - 1);
            if (a >= r) ++a;
            return q * n + a;
        };
        std::vector<Pair> out;
        for (auto [a, b] : build_tree(g)) out.push_back(ordered(to_old(a), to_old(b)));
        out.push_back(ordered(j, *partner));
        return out;
    }

    // Case 2: a line. Collect internal maxima and minima.
    std::vector<long long> extrema;
    for (long long j = 1; j <= n; ++j) {
        int s = f.sign(j);
        auto range = neighbours_with_sign(f, j, -s);
        if (range && strict_extremum(f, j, *range, s > 0)) extrema.push_back(j);
    }

    std::vector<Pair> out;
    if (!extrema.empty()) {
        for (std::size_t t = 0; t < extrema.size(); ++t) {
            long long lo = extrema[t];
            long long hi = t + 1 < extrema.size() ? extrema[t + 1] : extrema[0] + n;
            std::vector<long long> idx;
            for (long long x = lo; x <= hi; ++x) idx.push_back(x);
            std::sort(idx.begin(), idx.end(), [&](long long a, long long b) { return f.at(a) < f.at(b); });
            for (std::size_t u = 0; u + 1 < idx.size(); ++u) out.push_back(ordered(idx[u], idx[u + 1]));
        }
        return out;
    }

    // No extrema: each vertex joins the vertex with the next larger value.
    for (long long a = 1; a <= n; ++a) {
        Rational va = f.at(a);
        std::optional<long long> best;
        Rational best_val;
        for (long long b = 1; b <= n; ++b) {
            Rational q = (va - f.vals[b - 1]) / f.m;
            BigInt t = f.m > 0 ? floor(q) + 1 : ceil(q) - 1;
            long long tt = static_cast<long long>(t);
            long long idx = b + tt * n;
            Rational v = f.at(idx);
            if (!best || v < best_val) {
                best = idx;
                best_val = v;
            }
        }
        out.push_back(ordered(a, *best));
    }
    return out;
}

}  // namespace detail

inline PeriodicTree tree_from_function(const SignFunction& eps, const PeriodicFunction& pi) {
    if (pi.n() != eps.n()) throw std::invalid_argument("function and sign period differ");
    if (pi.m == 0) throw std::domain_error("slope increment m must be nonzero");
    if (auto c = find_collision(pi)) throw NonInjectiveError(c->first, c->second);
    detail::LocalFunction f{eps.n(), eps.signs(), pi.values, pi.m};
    std::vector<Edge> edges;
    for (auto [a, b] : detail::build_tree(f)) edges.push_back(make_edge(a, b, pi.at(a) < pi.at(b) ? b : a));
    return PeriodicTree(eps, edges);
}

// ---- admissibility ----------------------------------------------------------------------------

struct Violation {
    std::string check;
    std::string witness;
};

inline std::vector<Violation> validate(const PeriodicTree& t) {
    const int n = t.n();
    const SignFunction& eps = t.eps();
    std::vector<Violation> out;
    auto pair_str = [](long long a, long long b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; };

    for (const Edge& e : t.edges()) {
        if (e.length() % n == 0 || (e.length() > n && eps.at(e.left) == eps.at(e.right)))
            out.push_back({"EDGE_LENGTH", pair_str(e.left, e.right)});
    }
    for (int x = 1; x <= n; ++x) {
        LocalCounts c = local_counts(t, x);
        std::string w = "p" + std::to_string(x);
        if (c.left_parents > 1 || c.right_parents > 1 || c.left_children > 1 || c.right_children > 1)
            out.push_back({"T1", w});
        if (eps.plus(x) && c.parents() > 1) out.push_back({"T2", w});
        if (eps.minus(x) && c.children() > 1) out.push_back({"T3", w});
    }
    auto q = detail::analyze_quotient(t);
    if (!q.connected) {
        out.push_back({"CYCLE", "disconnected"});
    } else if (q.winding.size() != 1 || (q.winding[0] != 1 && q.winding[0] != -1)) {
        std::string w = "winding";
        for (long long v : q.winding) w += " " + std::to_string(v);
        out.push_back({"CYCLE", w});
    }
    if (!out.empty()) return out;

    // T4 and Hasse minimality: the tree must be recovered from a point of its region.
    try {
        PeriodicFunction pi = synthesize_morphism(t);
        PeriodicTree back = tree_from_function(eps, pi);
        if (!(back == t)) {
            for (const Edge& e : t.edges())
                if (!back.find(e)) {
                    out.push_back({"T4", to_string(e)});
                    break;
                }
            if (out.empty()) out.push_back({"T4", "round trip differs"});
        }
    } catch (const std::exception& ex) {
        out.push_back({"T4", ex.what()});
    }
    return out;
}

inline bool is_valid(const PeriodicTree& t) { return validate(t).empty(); }

}  // namespace pcluster
