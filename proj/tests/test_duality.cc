#include "support.hh"

#include <lifts/canonical.hh>
#include <lifts/duality.hh>
#include <lifts/enumerate.hh>
#include <lifts/errors.hh>
#include <lifts/homsearch.hh>
#include <lifts/shape.hh>

#include <gtest/gtest.h>

using namespace lifts;
using namespace lifts::testing;

namespace
{
    auto point() -> Structure { return digraph(1, {}); }

    // Forb(F) = CSP(D) on every digraph with at most n points, by brute force.
    auto naive_duality(const std::vector<Structure> & obstructions, const std::vector<Structure> & templates, unsigned n)
        -> bool
    {
        for (unsigned size = 1; size <= n; ++size)
            for (auto & a : naive_digraphs(size)) {
                bool avoids = true;
                for (auto & f : obstructions)
                    avoids = avoids && ! naive_hom_exists(f, a);
                bool maps = false;
                for (auto & d : templates)
                    maps = maps || naive_hom_exists(a, d);
                if (avoids != maps)
                    return false;
            }
        return true;
    }

    auto small_trees(unsigned max_size) -> std::vector<Structure>
    {
        std::vector<Structure> out;
        for (auto & s : all_structures(graph_signature(), max_size, {.up_to_isomorphism = true, .min_size = 1, .hereditary = {}}))
            if (is_forest(s) && is_connected(s))
                out.push_back(s);
        return out;
    }
}

TEST(TreeDual, SingleArcGivesArclessPoint)
{
    auto d = tree_dual(directed_path(1));
    EXPECT_TRUE(isomorphic(d, point()));
    EXPECT_TRUE(naive_duality({directed_path(1)}, {d}, 3));
}

TEST(TreeDual, TwoPathGivesSingleArc)
{
    auto d = tree_dual(directed_path(2));
    EXPECT_TRUE(isomorphic(d, directed_path(1)));
    EXPECT_TRUE(naive_duality({directed_path(2)}, {d}, 3));
}

TEST(TreeDual, SinglePointGivesEmptyStructure)
{
    EXPECT_EQ(tree_dual(point()).size(), 0u);
}

TEST(TreeDual, RejectsCycles)
{
    EXPECT_THROW(tree_dual(clique(3)), PreconditionViolated);
    EXPECT_THROW(tree_dual(digraph(2, {{0, 1}, {1, 0}})), PreconditionViolated);
}

TEST(TreeDual, SmallTreesBruteForce)
{
    for (auto & t : small_trees(3)) {
        auto d = tree_dual(t);
        EXPECT_TRUE(is_core(d));
        EXPECT_TRUE(naive_duality({t}, {d}, 3)) << write_standalone(t, "T");
    }
}

TEST(FamilyDuals, ArcAndTwoPath)
{
    auto duals = forest_family_duals(graph_signature(), {directed_path(1), directed_path(2)});
    ASSERT_EQ(duals.size(), 1u);
    EXPECT_TRUE(isomorphic(duals[0], point()));
}

TEST(FamilyDuals, TwoArcComponents)
{
    auto two_arcs = digraph(4, {{0, 1}, {2, 3}});
    auto duals = forest_family_duals(graph_signature(), {two_arcs});
    ASSERT_EQ(duals.size(), 1u);
    EXPECT_TRUE(isomorphic(duals[0], tree_dual(directed_path(1))));
    EXPECT_TRUE(naive_duality({two_arcs}, duals, 3));
}

TEST(FamilyDuals, EmptyFamilyGivesAllLoopsPoint)
{
    auto duals = forest_family_duals(graph_signature(), {});
    ASSERT_EQ(duals.size(), 1u);
    EXPECT_TRUE(isomorphic(duals[0], digraph(1, {{0, 0}})));
}

TEST(FamilyDuals, NonForestObstructionIsRejected)
{
    EXPECT_THROW(forest_family_duals(graph_signature(), {directed_path(1), clique(3)}), PreconditionViolated);
}

TEST(FamilyDuals, IntersectionsAgreeWithBruteForce)
{
    auto trees = small_trees(3);
    for (std::size_t i = 0; i < trees.size(); ++i)
        for (std::size_t j = i + 1; j < trees.size(); j += 2) {
            std::vector<Structure> family{trees[i], trees[j]};
            auto duals = forest_family_duals(graph_signature(), family);
            EXPECT_TRUE(naive_duality(family, duals, 3));
        }
}

TEST(VerifyDuality, Examples)
{
    EXPECT_TRUE(verify_duality(graph_signature(), {directed_path(1)}, {point()}, 3).holds);

    auto bad = verify_duality(graph_signature(), {directed_path(1)}, {directed_path(1)}, 2);
    EXPECT_FALSE(bad.holds);
    ASSERT_TRUE(bad.counterexample);
    EXPECT_TRUE(maps_to(directed_path(1), *bad.counterexample));
}

TEST(VerifyDuality, TriangleHasNoSmallDual)
{
    // the natural candidates all fail: cyclic obstructions have no finite duality
    for (auto & candidate : {clique(2), digraph(1, {}), digraph(2, {{0, 1}, {1, 0}, {0, 0}})})
        EXPECT_FALSE(verify_duality(graph_signature(), {clique(3)}, {candidate}, candidate.size() + 2).holds);
}

TEST(PruneTemplates, KeepsMaximalCores)
{
    auto pruned = prune_templates({clique(2), cycle_graph(4), clique(3)});
    ASSERT_EQ(pruned.size(), 1u);
    EXPECT_TRUE(isomorphic(pruned[0], clique(3)));
}
