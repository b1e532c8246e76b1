#pragma once

#include "cluster.hpp"
#include "tree.hpp"

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace pcluster {

inline std::string to_dot(const PeriodicTree& t) {
    IntMatrix q = quiver_of_cluster(t);
    auto cv = c_vectors(t);
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (std::size_t i = 0; i < cv.size(); ++i) {
        os << "  v" << i + 1 << " [label=\"v" << i + 1 << " (";
        for (std::size_t r = 0; r < cv[i].size(); ++r) os << (r ? "," : "") << cv[i][r];
        os << ")\"];\n";
    }
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
            for (long long m = 0; m < q(i, j); ++m) os << "  v" << i + 1 << " -> v" << j + 1 << ";\n";
    os << "}\n";
    return os.str();
}

struct Point {
    Rational x, y;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
    Point a, b;
};

// Edge instances meeting the strip [-n, 2n], drawn at (k, pi(k)).
inline std::vector<Segment> embedding_segments(const PeriodicTree& t, const PeriodicFunction& pi) {
    const long long n = t.n();
    std::vector<Segment> out;
    for (const Edge& e : t.edges()) {
        for (long long s = floor_div(-n - e.right, n) ; e.left + s * n < 2 * n; ++s) {
            long long l = e.left + s * n, r = e.right + s * n;
            if (r < -n) continue;
            out.push_back({{Rational(l), pi.at(l)}, {Rational(r), pi.at(r)}});
        }
    }
    return out;
}

namespace detail {

inline int orient(const Point& p, const Point& q, const Point& r) {
    Rational c = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return c.sign();
}

inline bool on_segment(const Point& p, const Point& q, const Point& r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
}

}  // namespace detail

// Two segments meet somewhere other than a single shared endpoint.
inline bool segments_cross(const Segment& s, const Segment& u) {
    using detail::orient;
    using detail::on_segment;
    std::optional<Point> shared;
    Point so = s.b, uo = u.b;
    if (s.a == u.a) { shared = s.a; so = s.b; uo = u.b; }
    else if (s.a == u.b) { shared = s.a; so = s.b; uo = u.a; }
    else if (s.b == u.a) { shared = s.b; so = s.a; uo = u.b; }
    else if (s.b == u.b) { shared = s.b; so = s.a; uo = u.a; }
    if (shared) {
        if (orient(*shared, so, uo) != 0) return false;
        // collinear: overlap iff both point the same way
        Rational d = (so.x - shared->x) * (uo.x - shared->x) + (so.y - shared->y) * (uo.y - shared->y);
        return d > 0;
    }
    int o1 = orient(s.a, s.b, u.a), o2 = orient(s.a, s.b, u.b);
    int o3 = orient(u.a, u.b, s.a), o4 = orient(u.a, u.b, s.b);
    if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) return true;
    if (o1 == 0 && on_segment(s.a, s.b, u.a)) return true;
    if (o2 == 0 && on_segment(s.a, s.b, u.b)) return true;
    if (o3 == 0 && on_segment(u.a, u.b, s.a)) return true;
    if (o4 == 0 && on_segment(u.a, u.b, s.b)) return true;
    return false;
}

inline std::optional<std::pair<std::size_t, std::size_t>> find_crossing(const std::vector<Segment>& segs) {
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j)
            if (segments_cross(segs[i], segs[j])) return std::make_pair(i, j);
    return std::nullopt;
}

namespace detail {

inline std::string coord(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) return to_string(r);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", r.convert_to<double>());
    return buf;
}

}  // namespace detail

inline std::string to_svg(const PeriodicTree& t, const PeriodicFunction& pi) {
    if (!in_region(t, pi)) throw std::domain_error("function does not lie in the region of the tree");
    const long long n = t.n();
    std::vector<Segment> segs = embedding_segments(t, pi);
    Rational xlo(-n), xhi(2 * n), lo = pi.at(-n), hi = lo;
    for (long long k = -n; k <= 2 * n; ++k) {
        lo = std::min(lo, pi.at(k));
        hi = std::max(hi, pi.at(k));
    }
    for (const Segment& s : segs)
        for (const Point& p : {s.a, s.b}) {
            xlo = std::min(xlo, p.x);
            xhi = std::max(xhi, p.x);
            lo = std::min(lo, p.y);
            hi = std::max(hi, p.y);
        }
    Rational width = xhi - xlo;
    Rational height = hi - lo;
    if (height == 0) height = 1;
    Rational mx = width / 20, my = height / 20;
    using detail::coord;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"400\" preserveAspectRatio=\"none\" viewBox=\""
       << coord(xlo - mx) << ' ' << coord(-hi - my) << ' ' << coord(width + 2 * mx) << ' '
       << coord(height + 2 * my) << "\">\n";
    os << "  <g stroke=\"black\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\">\n";
    for (const Segment& s : segs)
        os << "    <line x1=\"" << coord(s.a.x) << "\" y1=\"" << coord(-s.a.y) << "\" x2=\"" << coord(s.b.x)
           << "\" y2=\"" << coord(-s.b.y) << "\"/>\n";
    os << "  </g>\n  <g fill=\"black\">\n";
    for (long long k = -n; k <= 2 * n; ++k)
        os << "    <circle cx=\"" << k << "\" cy=\"" << coord(-pi.at(k)) << "\" r=\"0.06\"><title>p" << k
           << "</title></circle>\n";
    os << "  </g>\n</svg>\n";
    return os.str();
}

}  // namespace pcluster
