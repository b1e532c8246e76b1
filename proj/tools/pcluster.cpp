// Command-line front end for the periodic-tree / cluster library.

#include "pcluster/pcluster.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace pcluster;

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kParseError = 2;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

SignFunction parse_eps(const std::string& text) {
    try {
        return SignFunction(text);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
}

Rational parse_rat(const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
}

void print(const json& doc) { std::cout << doc.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic trees and cluster tilting objects of affine type A"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    std::string eps_text;
    app.add_flag("--json", as_json, "Machine-readable output");
    app.add_option("--epsilon", eps_text, "Sign function, e.g. -++");

    std::string tree_file;
    auto* validate_cmd = app.add_subcommand("validate", "Check admissibility of a tree");
    validate_cmd->add_option("file", tree_file, "Tree JSON")->required();

    std::vector<std::string> values;
    std::string m_text;
    auto* from_fn = app.add_subcommand("from-function", "Build the unique tree of an injective function");
    from_fn->add_option("--values", values, "pi(1),...,pi(n) as p/q")->delimiter(',')->required();
    from_fn->add_option("--m", m_text, "Increment m with pi(k+n) = pi(k) + m")->required();

    std::size_t edge_index = 0;
    auto* mutate_cmd = app.add_subcommand("mutate", "Mutate a tree at an edge");
    mutate_cmd->add_option("--tree", tree_file, "Tree JSON")->required();
    mutate_cmd->add_option("--edge", edge_index, "Edge index, 1-based in canonical order")->required();

    auto* matrices_cmd = app.add_subcommand("matrices", "Edge, exchange, extended and dimension matrices");
    matrices_cmd->add_option("--tree", tree_file, "Tree JSON")->required();

    auto* summands_cmd = app.add_subcommand("summands", "Cluster summands of a tree");
    summands_cmd->add_option("--tree", tree_file, "Tree JSON")->required();

    std::vector<long long> root;
    auto* classify_cmd = app.add_subcommand("classify", "Slope, leaves, extrema and path of a tree, or a root type");
    classify_cmd->add_option("--tree", tree_file, "Tree JSON");
    classify_cmd->add_option("--root", root, "i,j: classify beta_ij for --epsilon")->delimiter(',')->expected(2);

    int depth = 4;
    std::size_t max_nodes = 100000;
    bool verify = false, with_graph = false;
    auto* bfs_cmd = app.add_subcommand("bfs", "Breadth-first exploration of the exchange graph");
    bfs_cmd->add_option("--depth", depth, "Maximum depth");
    bfs_cmd->add_option("--max-nodes", max_nodes, "Node limit");
    bfs_cmd->add_flag("--verify", verify, "Run the invariant battery at every node");
    bfs_cmd->add_flag("--graph", with_graph, "Emit the full graph");

    bool dot = false, svg = false;
    std::vector<std::string> pi_text;
    auto* export_cmd = app.add_subcommand("export", "Graphviz quiver or SVG embedding");
    export_cmd->add_option("--tree", tree_file, "Tree JSON")->required();
    auto* dot_flag = export_cmd->add_flag("--dot", dot, "Quiver of the cluster as DOT");
    auto* svg_flag = export_cmd->add_flag("--svg", svg, "Embedding of the tree as SVG");
    dot_flag->excludes(svg_flag);
    export_cmd->add_option("--pi", pi_text, "pi(1),...,pi(n),m for the SVG embedding")->delimiter(',');

    auto* quiver_cmd = app.add_subcommand("quiver", "Quiver of the cluster as DOT");
    quiver_cmd->add_option("--tree", tree_file, "Tree JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseError;
    }

    try {
        if (*validate_cmd) {
            PeriodicTree t;
            std::vector<Violation> violations;
            try {
                t = tree_from_json(read_json_file(tree_file));
                violations = validate(t);
            } catch (const std::invalid_argument& ex) {
                violations.push_back({"STRUCTURE", ex.what()});
            }
            if (as_json) {
                json list = json::array();
                for (const auto& v : violations) list.push_back({{"check", v.check}, {"witness", v.witness}});
                print({{"valid", violations.empty()}, {"violations", list}});
            } else {
                for (const auto& v : violations) std::cout << v.check << '\t' << v.witness << '\n';
                if (violations.empty()) std::cout << "ok\n";
            }
            return violations.empty() ? kOk : kDomainError;
        }
        if (*from_fn) {
            SignFunction eps = parse_eps(eps_text);
            PeriodicFunction pi;
            for (const auto& v : values) pi.values.push_back(parse_rat(v));
            pi.m = parse_rat(m_text);
            if (pi.n() != eps.n()) throw ParseError("expected " + std::to_string(eps.n()) + " values");
            json doc = matrices_document(tree_from_function(eps, pi));
            doc["function"] = to_json(pi);
            print(doc);
            return kOk;
        }
        if (*mutate_cmd) {
            PeriodicTree t = tree_from_json(read_json_file(tree_file));
            if (edge_index < 1 || edge_index > static_cast<std::size_t>(t.n()))
                throw std::out_of_range("edge index must lie in 1.." + std::to_string(t.n()));
            MutationResult r = mutate_tree(t, edge_index - 1);
            json doc = tree_document(r.tree);
            json map = json::array();
            for (std::size_t j : r.index_map) map.push_back(j + 1);
            doc["index_map"] = map;
            json rules = json::array();
            for (auto rule : r.rules) rules.push_back(to_string(rule));
            doc["rules"] = rules;
            print(doc);
            return kOk;
        }
        if (*matrices_cmd) {
            print(matrices_document(tree_from_json(read_json_file(tree_file))));
            return kOk;
        }
        if (*summands_cmd) {
            print(summands_document(tree_from_json(read_json_file(tree_file))));
            return kOk;
        }
        if (*classify_cmd) {
            if (!root.empty()) {
                SignFunction eps = parse_eps(eps_text);
                print({{"epsilon", eps.str()}, {"i", root[0]}, {"j", root[1]},
                       {"type", to_string(classify_root(eps, root[0], root[1]))}});
                return kOk;
            }
            if (tree_file.empty()) throw ParseError("classify needs --tree or --root");
            print(classify_document(tree_from_json(read_json_file(tree_file))));
            return kOk;
        }
        if (*bfs_cmd) {
            SignFunction eps = parse_eps(eps_text);
            ExchangeGraph g = bfs(eps, depth, max_nodes, verify);
            json doc = {{"format", kFormatTag},
                        {"epsilon", eps.str()},
                        {"depth", depth},
                        {"nodes", g.nodes.size()},
                        {"arcs", g.arcs.size()},
                        {"battery", verify ? "all checks passed" : "not run"}};
            if (with_graph) doc["graph"] = graph_document(g);
            if (as_json || with_graph) {
                print(doc);
            } else {
                std::cout << "epsilon " << eps.str() << "\ndepth " << depth << "\nnodes " << g.nodes.size()
                          << "\narcs " << g.arcs.size() << "\nbattery " << doc["battery"].get<std::string>() << "\n";
            }
            return kOk;
        }
        if (*export_cmd || *quiver_cmd) {
            PeriodicTree t = tree_from_json(read_json_file(tree_file));
            if (*quiver_cmd || dot) {
                std::cout << to_dot(t);
                return kOk;
            }
            if (!svg) throw ParseError("export needs --dot or --svg");
            PeriodicFunction pi;
            if (pi_text.empty()) {
                pi = synthesize_morphism(t);
            } else {
                if (pi_text.size() != static_cast<std::size_t>(t.n()) + 1)
                    throw ParseError("--pi takes n values followed by m");
                for (std::size_t k = 0; k + 1 < pi_text.size(); ++k) pi.values.push_back(parse_rat(pi_text[k]));
                pi.m = parse_rat(pi_text.back());
            }
            std::cout << to_svg(t, pi);
            return kOk;
        }
    } catch (const ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return kParseError;
    } catch (const NonInjectiveError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        std::cout << "COLLISION\t" << ex.first << "," << ex.second << "\n";
        return kDomainError;
    } catch (const BatteryFailure& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kDomainError;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kDomainError;
    }
    return kOk;
}
