#pragma once

#include "cluster.hpp"
#include "explorer.hpp"
#include "tree.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace pcluster {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormatTag = "periodic-cluster/1";

// Malformed or schema-violating input (as opposed to a well-formed but invalid object).
class ParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json to_json(const IntVector& v) { return json(v); }

inline json to_json(const IntMatrix& m) { return json(m.to_rows()); }

inline json to_json(const Edge& e) {
    return {{"left", e.left}, {"right", e.right}, {"dir", e.dir == Dir::Up ? "up" : "down"}};
}

inline json to_json(const PeriodicTree& t) {
    json edges = json::array();
    for (const Edge& e : t.edges()) edges.push_back(to_json(e));
    return {{"n", t.n()}, {"epsilon", t.eps().str()}, {"edges", edges}};
}

inline json to_json(const PeriodicFunction& pi) {
    json vals = json::array();
    for (const auto& v : pi.values) vals.push_back(to_string(v));
    return {{"values", vals}, {"m", to_string(pi.m)}};
}

inline json to_json(const ClusterSummand& s) { return {{"dim", s.dim}, {"kind", to_string(s.kind)}}; }

namespace detail {

inline const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline long long require_int(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
    return v.get<long long>();
}

inline std::string require_string(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

inline Rational rational_from_json(const json& v) {
    try {
        if (v.is_number_integer()) return Rational(v.get<long long>());
        if (v.is_string()) return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
    throw ParseError("rationals must be \"p/q\" strings or integers");
}

}  // namespace detail

// Accepts a bare tree object or a document carrying a "tree" field.
inline PeriodicTree tree_from_json(const json& doc) {
    const json& j = doc.is_object() && doc.contains("tree") ? doc.at("tree") : doc;
    long long n = detail::require_int(j, "n");
    std::string eps_text = detail::require_string(j, "epsilon");
    const json& edges = detail::require(j, "edges");
    if (!edges.is_array()) throw ParseError("field 'edges' must be an array");
    std::vector<Edge> out;
    for (const json& e : edges) {
        std::string dir = detail::require_string(e, "dir");
        if (dir != "up" && dir != "down") throw ParseError("edge dir must be \"up\" or \"down\"");
        out.push_back({detail::require_int(e, "left"), detail::require_int(e, "right"), dir == "up" ? Dir::Up : Dir::Down});
    }
    SignFunction eps(eps_text);
    if (eps.n() != n) throw std::invalid_argument("n does not match the length of epsilon");
    return PeriodicTree(eps, out);
}

inline PeriodicFunction function_from_json(const json& doc) {
    const json& j = doc.is_object() && doc.contains("function") ? doc.at("function") : doc;
    const json& vals = detail::require(j, "values");
    if (!vals.is_array()) throw ParseError("field 'values' must be an array");
    PeriodicFunction pi;
    for (const json& v : vals) pi.values.push_back(detail::rational_from_json(v));
    pi.m = detail::rational_from_json(detail::require(j, "m"));
    return pi;
}

inline IntMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
    IntMatrix m(j.size(), j[0].size());
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != m.cols()) throw ParseError("ragged matrix");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!j[r][c].is_number_integer()) throw ParseError("matrix entries must be integers");
            m(r, c) = j[r][c].get<long long>();
        }
    }
    return m;
}

inline json tree_document(const PeriodicTree& t) { return {{"format", kFormatTag}, {"tree", to_json(t)}}; }

inline json matrices_document(const PeriodicTree& t) {
    json doc = tree_document(t);
    ExtendedExchangeMatrix bt = extended_exchange_matrix(t);
    doc["edge_matrix"] = to_json(edge_matrix(t));
    doc["exchange_matrix"] = to_json(bt.top);
    doc["extended_exchange_matrix"] = to_json(bt.stacked());
    doc["dimension_matrix"] = to_json(dimension_matrix(t));
    json cv = json::array();
    for (const auto& c : c_vectors(t)) cv.push_back(c);
    doc["c_vectors"] = cv;
    return doc;
}

inline json summands_document(const PeriodicTree& t) {
    json doc = tree_document(t);
    json list = json::array();
    for (std::size_t k = 0; k < t.edges().size(); ++k) {
        json s = to_json(summand(t, k));
        s["edge"] = to_json(t.edge(k));
        s["psi_infinity"] = psi_infinity(t, k);
        list.push_back(s);
    }
    doc["summands"] = list;
    return doc;
}

inline json classify_document(const PeriodicTree& t) {
    json doc = tree_document(t);
    doc["slope"] = to_string(classify_slope(t));
    doc["leaves"] = leaves(t);
    Extrema ex = internal_extrema(t);
    doc["internal_maxima"] = ex.maxima;
    doc["internal_minima"] = ex.minima;
    json path = json::array();
    for (std::size_t k : infinite_path_edges(t)) path.push_back(k + 1);  // 1-based, as on the command line
    doc["infinite_path_edges"] = path;
    json roots = json::array();
    for (const Edge& e : t.edges()) roots.push_back(to_string(classify_root(t.eps(), e.left, e.right)));
    doc["edge_root_types"] = roots;
    return doc;
}

inline json graph_document(const ExchangeGraph& g) {
    json nodes = json::array();
    for (const auto& key : g.order) nodes.push_back({{"key", key}, {"depth", g.depth.at(key)}});
    json arcs = json::array();
    for (const Arc& a : g.arcs) arcs.push_back({{"from", a.from}, {"edge", a.edge + 1}, {"to", a.to}});
    return {{"format", kFormatTag}, {"nodes", nodes}, {"arcs", arcs}};
}

}  // namespace pcluster
