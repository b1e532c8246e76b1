#include "common.hpp"

#include <gtest/gtest.h>

using namespace pcluster;
using namespace testing_support;

namespace {

std::vector<PeriodicTree> sample_trees(int max_n, int depth) {
    std::vector<PeriodicTree> out;
    for (const auto& eps : all_eps(2, max_n)) {
        ExchangeGraph g = bfs(eps, depth, 100000, false);
        for (const auto& [key, t] : g.nodes) out.push_back(t);
    }
    return out;
}

}  // namespace

TEST(PeriodicTree, NormalizesAndSorts) {
    PeriodicTree t = positive_tree();
    ASSERT_EQ(t.edges().size(), 3u);
    EXPECT_EQ(t.edge(0), (Edge{1, 5, Dir::Down}));
    EXPECT_EQ(t.edge(1), (Edge{1, 8, Dir::Up}));
    EXPECT_EQ(t.edge(2), (Edge{2, 3, Dir::Down}));
    PeriodicTree shifted(SignFunction("-++"), {{4, 8, Dir::Down}, {-1, 0, Dir::Down}, {-2, 5, Dir::Up}});
    EXPECT_EQ(shifted, t);
}

TEST(PeriodicTree, RejectsMalformedEdgeLists) {
    SignFunction e("-++");
    EXPECT_THROW(PeriodicTree(e, {{1, 5, Dir::Down}, {2, 3, Dir::Down}}), std::invalid_argument);
    EXPECT_THROW(PeriodicTree(e, {{1, 5, Dir::Down}, {2, 3, Dir::Down}, {3, 3, Dir::Up}}), std::invalid_argument);
    EXPECT_THROW(PeriodicTree(e, {{1, 5, Dir::Down}, {2, 3, Dir::Down}, {4, 8, Dir::Down}}), std::invalid_argument);
}

TEST(EdgeVector, PositiveTree) {
    PeriodicTree t = positive_tree();
    EXPECT_EQ(edge_vector(t, 0).signed_vec(), (IntVector{-1, -2, -1}));
    EXPECT_EQ(edge_vector(t, 1).signed_vec(), (IntVector{2, 3, 2}));
    EXPECT_EQ(edge_vector(t, 2).signed_vec(), (IntVector{0, 0, -1}));
}

TEST(Validate, Examples) {
    EXPECT_TRUE(is_valid(positive_tree()));
    EXPECT_TRUE(is_valid(level_tree()));
    for (const auto& eps : all_eps(2, 5)) EXPECT_TRUE(is_valid(initial_tree(eps))) << eps.str();
    PeriodicTree bad(SignFunction("-++"), {{1, 4, Dir::Up}, {1, 5, Dir::Down}, {2, 3, Dir::Down}});
    auto v = validate(bad);
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v[0].check, "EDGE_LENGTH");
    EXPECT_EQ(v[0].witness, "(1,4)");
}

TEST(Validate, CorruptedDirectionIsRejected) {
    PeriodicTree t = positive_tree();
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<Edge> edges = t.edges();
        edges[k].dir = flip(edges[k].dir);
        EXPECT_FALSE(is_valid(PeriodicTree(t.eps(), edges))) << k;
    }
    // on T_0 a single flip can give another tree: the zigzag for +-
    PeriodicTree zigzag(SignFunction("+-"), {{0, 1, Dir::Up}, {1, 2, Dir::Down}});
    EXPECT_TRUE(is_valid(zigzag));
}

TEST(Slope, Examples) {
    EXPECT_EQ(classify_slope(positive_tree()), Slope::Positive);
    EXPECT_EQ(classify_slope(level_tree()), Slope::Zero);
    for (const auto& eps : all_eps(2, 5)) EXPECT_EQ(classify_slope(initial_tree(eps)), Slope::Negative);
}

TEST(Slope, AgreesWithSynthesizedIncrement) {
    for (const auto& t : sample_trees(4, 3)) {
        PeriodicFunction pi = integral_morphism(t);
        Slope s = classify_slope(t);
        if (s == Slope::Positive) {
            EXPECT_GT(pi.m, 0);
        } else if (s == Slope::Negative) {
            EXPECT_LT(pi.m, 0);
        }
    }
}

TEST(Structure, LeavesExtremaAndPath) {
    PeriodicTree f1 = positive_tree();
    EXPECT_EQ(leaves(f1), (std::vector<int>{3}));
    EXPECT_EQ(infinite_path_edges(f1), (std::vector<std::size_t>{0, 1}));

    PeriodicTree f2 = level_tree();
    EXPECT_EQ(leaves(f2), (std::vector<int>{1}));
    Extrema x2 = internal_extrema(f2);
    EXPECT_EQ(x2.maxima, (std::vector<int>{2}));
    EXPECT_TRUE(x2.minima.empty());
    EXPECT_EQ(infinite_path_edges(f2), (std::vector<std::size_t>{0, 1}));

    for (const auto& eps : all_eps(2, 5)) {
        PeriodicTree t0 = initial_tree(eps);
        EXPECT_TRUE(leaves(t0).empty());
        Extrema x = internal_extrema(t0);
        EXPECT_TRUE(x.maxima.empty() && x.minima.empty());
        EXPECT_EQ(infinite_path_edges(t0).size(), static_cast<std::size_t>(eps.n()));
    }
}

TEST(Region, Membership) {
    PeriodicTree f1 = positive_tree();
    EXPECT_TRUE(in_region(f1, make_pi({5, 1, 0}, 3)));
    EXPECT_FALSE(in_region(f1, make_pi({0, 1, 0}, 3)));
    for (const auto& eps : all_eps(2, 5)) {
        PeriodicFunction down;
        for (int k = 1; k <= eps.n(); ++k) down.values.emplace_back(-k);
        down.m = -eps.n();
        EXPECT_TRUE(in_region(initial_tree(eps), down));
    }
}

TEST(Region, SynthesizedMorphismLiesInRegion) {
    for (const auto& t : sample_trees(4, 3)) {
        PeriodicFunction pi = synthesize_morphism(t);
        EXPECT_TRUE(is_injective(pi)) << canonical_key(t);
        EXPECT_TRUE(in_region(t, pi)) << canonical_key(t);
        EXPECT_TRUE(endpoints_respect(t, pi)) << canonical_key(t);
    }
}

TEST(Region, FacePointIsOnExactlyOneWall) {
    for (const auto& t : sample_trees(3, 3))
        for (std::size_t k = 0; k < t.edges().size(); ++k) {
            PeriodicFunction pi = face_point(t, k);
            for (std::size_t j = 0; j < t.edges().size(); ++j) {
                const Edge& e = t.edge(j);
                Rational rise = pi.at(e.right) - pi.at(e.left);
                if (e.dir == Dir::Down) rise = -rise;
                if (j == k) EXPECT_EQ(rise, 0) << canonical_key(t) << " wall " << k;
                else EXPECT_GT(rise, 0) << canonical_key(t) << " wall " << k << " edge " << j;
            }
        }
}

TEST(TreeFromFunction, Examples) {
    EXPECT_EQ(tree_from_function(SignFunction("-++"), make_pi({5, 1, 0}, 3)), positive_tree());
    for (const auto& eps : all_eps(2, 5)) {
        PeriodicFunction down;
        for (int k = 1; k <= eps.n(); ++k) down.values.emplace_back(-k);
        down.m = -eps.n();
        EXPECT_EQ(tree_from_function(eps, down), initial_tree(eps));
    }
    PeriodicTree up = tree_from_function(SignFunction("+-"), make_pi({0, 1}, 3));
    EXPECT_EQ(up, PeriodicTree(SignFunction("+-"), {{1, 2, Dir::Up}, {2, 3, Dir::Up}}));
    EXPECT_TRUE(is_valid(up));
}

TEST(TreeFromFunction, RejectsCollisions) {
    try {
        tree_from_function(SignFunction("-++"), make_pi({0, 0, 1}, 3));
        FAIL() << "expected NonInjectiveError";
    } catch (const NonInjectiveError& ex) {
        EXPECT_EQ(ex.first, 1);
        EXPECT_EQ(ex.second, 2);
    }
    EXPECT_THROW(tree_from_function(SignFunction("-++"), make_pi({0, 1, 2}, 0)), std::domain_error);
}

TEST(TreeFromFunction, RoundTripOverExchangeGraph) {
    for (const auto& t : sample_trees(4, 4))
        EXPECT_EQ(tree_from_function(t.eps(), synthesize_morphism(t)), t) << canonical_key(t);
}

TEST(TreeFromFunction, RandomFunctionsLandInTheirTree) {
    std::mt19937_64 rng(99);
    for (const auto& eps : all_eps(2, 5))
        for (int trial = 0; trial < 100; ++trial) {
            PeriodicFunction pi = random_pi(rng, eps.n());
            PeriodicTree t = tree_from_function(eps, pi);
            EXPECT_TRUE(endpoints_respect(t, pi)) << eps.str();
            EXPECT_TRUE(in_region(t, pi));
            EXPECT_TRUE(is_valid(t)) << canonical_key(t);
        }
}

TEST(TreeFromFunction, ScalingAndShiftInvariance) {
    std::mt19937_64 rng(5);
    for (const auto& eps : all_eps(2, 4))
        for (int trial = 0; trial < 30; ++trial) {
            PeriodicFunction pi = random_pi(rng, eps.n());
            PeriodicFunction scaled = pi;
            for (auto& v : scaled.values) v = v * 7 + Rational(2, 3);
            scaled.m *= 7;
            EXPECT_EQ(tree_from_function(eps, pi), tree_from_function(eps, scaled));
        }
}
