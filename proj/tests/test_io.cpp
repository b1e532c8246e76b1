#include "common.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

using namespace pcluster;
using namespace testing_support;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(PCLUSTER_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string sample(const std::string& name) { return std::string(PCLUSTER_SAMPLES) + "/" + name; }

}  // namespace

TEST(Json, TreeRoundTrip) {
    for (const auto& eps : all_eps(2, 4))
        for (const auto& [key, t] : bfs(eps, 2, 100000, false).nodes) {
            json j = to_json(t);
            EXPECT_EQ(tree_from_json(json::parse(j.dump())), t);
            EXPECT_EQ(tree_from_json(tree_document(t)), t);
        }
}

TEST(Json, SpecTreeForm) {
    json j = json::parse(R"({"n":3,"epsilon":"-++","edges":[{"left":1,"right":5,"dir":"down"},
                                {"left":2,"right":3,"dir":"down"},{"left":1,"right":8,"dir":"up"}]})");
    EXPECT_EQ(tree_from_json(j), positive_tree());
    EXPECT_THROW(tree_from_json(json::parse(R"({"n":3,"epsilon":"-++"})")), ParseError);
    EXPECT_THROW(tree_from_json(json::parse(R"({"n":3,"epsilon":"-++","edges":[{"left":1,"right":5,"dir":"sideways"}]})")),
                 ParseError);
}

TEST(Json, FunctionRoundTrip) {
    PeriodicFunction pi = make_pi({5, 1, 0}, 3);
    pi.values[1] = Rational(-7, 4);
    json j = to_json(pi);
    EXPECT_EQ(j["values"][1], "-7/4");
    EXPECT_EQ(function_from_json(json::parse(j.dump())), pi);
    EXPECT_EQ(function_from_json(json::parse(R"({"values":["5","1","0"],"m":"3"})")), make_pi({5, 1, 0}, 3));
    EXPECT_THROW(function_from_json(json::parse(R"({"values":["5","x","0"],"m":"3"})")), ParseError);
}

TEST(Json, MatrixDocuments) {
    for (const PeriodicTree& t : {positive_tree(), level_tree()}) {
        json doc = matrices_document(t);
        EXPECT_EQ(json::parse(doc.dump()), doc);
        EXPECT_EQ(doc["format"], "periodic-cluster/1");
        EXPECT_EQ(matrix_from_json(doc["edge_matrix"]), edge_matrix(t));
        EXPECT_EQ(matrix_from_json(doc["exchange_matrix"]), exchange_matrix(t));
        EXPECT_EQ(matrix_from_json(doc["extended_exchange_matrix"]), extended_exchange_matrix(t).stacked());
        EXPECT_EQ(matrix_from_json(doc["dimension_matrix"]), dimension_matrix(t));
        EXPECT_EQ(tree_from_json(doc), t);
        for (json d : {summands_document(t), classify_document(t)}) {
            EXPECT_EQ(json::parse(d.dump()), d);
            EXPECT_EQ(tree_from_json(d), t);
        }
    }
    json g = graph_document(bfs(SignFunction("-++"), 2));
    EXPECT_EQ(json::parse(g.dump()), g);
    EXPECT_THROW(matrix_from_json(json::parse("[[1,2],[3]]")), ParseError);
}

TEST(Export, DotArcsMatchQuiver) {
    std::string dot = to_dot(positive_tree());
    IntMatrix q = quiver_of_cluster(positive_tree());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::string arc = "v" + std::to_string(i + 1) + " -> v" + std::to_string(j + 1) + ";";
            std::size_t count = 0;
            for (std::size_t pos = dot.find(arc); pos != std::string::npos; pos = dot.find(arc, pos + 1)) ++count;
            EXPECT_EQ(static_cast<long long>(count), q(i, j));
        }
}

TEST(Export, EmbeddingHasNoCrossings) {
    std::mt19937_64 rng(8);
    for (const auto& eps : all_eps(2, 4))
        for (int trial = 0; trial < 20; ++trial) {
            PeriodicFunction pi = random_pi(rng, eps.n());
            PeriodicTree t = tree_from_function(eps, pi);
            EXPECT_FALSE(find_crossing(embedding_segments(t, pi)).has_value()) << canonical_key(t);
        }
    // a function outside the region is refused
    PeriodicFunction pi = make_pi({5, 1, 0}, 3);
    EXPECT_THROW(to_svg(initial_tree(SignFunction("-++")), pi), std::domain_error);
}

TEST(Export, PositiveTreeSegments) {
    auto segs = embedding_segments(positive_tree(), make_pi({5, 1, 0}, 3));
    // Down(2,3) at its base position: (2,1) to (3,0)
    bool found = false;
    for (const auto& s : segs)
        if (s.a == Point{2, 1} && s.b == Point{3, 0}) found = true;
    EXPECT_TRUE(found);
    std::string svg = to_svg(positive_tree(), make_pi({5, 1, 0}, 3));
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("x1=\"1\" y1=\"-5\" x2=\"8\" y2=\"-7\""), std::string::npos);
}

TEST(Export, CrossingDetector) {
    std::vector<Segment> x{{{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}};
    EXPECT_TRUE(find_crossing(x).has_value());
    std::vector<Segment> touching{{{0, 0}, {1, 1}}, {{1, 1}, {2, 0}}};
    EXPECT_FALSE(find_crossing(touching).has_value());
    std::vector<Segment> overlap{{{0, 0}, {2, 2}}, {{1, 1}, {3, 3}}};
    EXPECT_TRUE(find_crossing(overlap).has_value());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("validate " + sample("positive_slope.json")).code, 0);
    EXPECT_EQ(run_cli("validate " + sample("zero_slope.json")).code, 0);
    RunResult bad = run_cli("validate " + sample("bad_length.json"));
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(bad.out.substr(0, bad.out.find('\n')), "EDGE_LENGTH\t(1,4)");
    EXPECT_EQ(run_cli("validate " + sample("malformed.json")).code, 2);
    EXPECT_EQ(run_cli("validate /nonexistent/tree.json").code, 2);
    EXPECT_EQ(run_cli("--epsilon -++ from-function --values 0,0,1 --m 3").code, 1);
    EXPECT_EQ(run_cli("--epsilon -+x from-function --values 0,0,1 --m 3").code, 2);
    EXPECT_EQ(run_cli("frobnicate").code, 2);
}

TEST(Cli, Documents) {
    RunResult ff = run_cli("from-function --epsilon -++ --values 5,1,0 --m 3");
    ASSERT_EQ(ff.code, 0);
    EXPECT_EQ(tree_from_json(json::parse(ff.out)), positive_tree());

    RunResult t0 = run_cli("from-function --epsilon +-+ --values 3,2,1 --m -3");
    ASSERT_EQ(t0.code, 0);
    EXPECT_EQ(tree_from_json(json::parse(t0.out)), initial_tree(SignFunction("+-+")));

    RunResult mu = run_cli("mutate --tree " + sample("positive_slope.json") + " --edge 2");
    ASSERT_EQ(mu.code, 0);
    json m = json::parse(mu.out);
    EXPECT_EQ(tree_from_json(m), mutate_tree(positive_tree(), 1).tree);
    EXPECT_EQ(m["index_map"].size(), 3u);

    RunResult mat = run_cli("matrices --tree " + sample("positive_slope.json"));
    ASSERT_EQ(mat.code, 0);
    EXPECT_EQ(matrix_from_json(json::parse(mat.out)["exchange_matrix"]), exchange_matrix(positive_tree()));

    RunResult sm = run_cli("summands --tree " + sample("zero_slope.json"));
    ASSERT_EQ(sm.code, 0);
    EXPECT_EQ(json::parse(sm.out)["summands"][1]["kind"], "shifted_projective");

    RunResult bf = run_cli("bfs --epsilon -++ --depth 4 --verify --json");
    ASSERT_EQ(bf.code, 0);
    EXPECT_EQ(json::parse(bf.out)["nodes"], 22);

    RunResult dot = run_cli("export --tree " + sample("positive_slope.json") + " --dot");
    ASSERT_EQ(dot.code, 0);
    EXPECT_EQ(dot.out, to_dot(positive_tree()));

    RunResult svg = run_cli("export --tree " + sample("positive_slope.json") + " --svg --pi 5,1,0,3");
    ASSERT_EQ(svg.code, 0);
    EXPECT_EQ(svg.out, to_svg(positive_tree(), make_pi({5, 1, 0}, 3)));
    EXPECT_EQ(run_cli("export --tree " + sample("positive_slope.json") + " --svg --pi 0,1,0,3").code, 1);
}
