#include "support.hh"

#include <lifts/canonical.hh>
#include <lifts/errors.hh>
#include <lifts/homsearch.hh>
#include <lifts/shape.hh>
#include <lifts/sparse.hh>

#include <gtest/gtest.h>

using namespace lifts;
using namespace lifts::testing;

namespace
{
    auto directed_cycle(unsigned n) -> Structure
    {
        Arcs arcs;
        for (unsigned i = 0; i < n; ++i)
            arcs.push_back({i, (i + 1) % n});
        return digraph(n, arcs);
    }

    // Every digraph on at most k points, loops included; the verifier must agree with this sweep.
    auto separated_by_small_target(const Structure & a, const Structure & b, unsigned k) -> bool
    {
        for (unsigned n = 1; n <= k; ++n)
            for (auto & c : naive_digraphs(n))
                if (naive_hom_exists(a, c) != naive_hom_exists(b, c))
                    return true;
        return false;
    }
}

// A symmetric cycle has girth 2 (each edge is two arcs on the same pair), so the
// high-girth replacements here are oriented cycles.
TEST(VerifySparse, NineCycleReplacesTriangle)
{
    auto check = verify_sparse(clique(3), directed_cycle(9), 2, 4);
    EXPECT_TRUE(check.holds) << check.failure;
    EXPECT_FALSE(separated_by_small_target(clique(3), directed_cycle(9), 2));
}

TEST(VerifySparse, SymmetricNineCycleFailsGirth)
{
    auto check = verify_sparse(clique(3), cycle_graph(9), 2, 4);
    EXPECT_FALSE(check.holds);
    EXPECT_NE(check.failure.find("girth"), std::string::npos);
}

TEST(VerifySparse, FourCycleIsSeparatedByAnEdge)
{
    auto check = verify_sparse(clique(3), directed_cycle(4), 2, 4);
    EXPECT_FALSE(check.holds);
    ASSERT_TRUE(check.counterexample);
    EXPECT_TRUE(isomorphic(*check.counterexample, clique(2)));
}

TEST(VerifySparse, StructureAgainstItself)
{
    for (auto & a : {clique(3), cycle_graph(5), directed_path(3), digraph(2, {{0, 0}, {0, 1}})}) {
        unsigned g = girth(a).value_or(64);
        EXPECT_TRUE(verify_sparse(a, a, 2, g).holds);
    }
}

TEST(VerifySparse, ReportsShortCycles)
{
    auto check = verify_sparse(clique(3), clique(3), 2, 4);
    EXPECT_FALSE(check.holds);
    EXPECT_FALSE(check.failure.empty());
}

TEST(VerifySparse, AgreesWithNaiveSweep)
{
    auto structures = naive_digraphs(3);
    for (std::size_t i = 0; i < structures.size(); i += 3)
        for (std::size_t j = 0; j < structures.size(); j += 5) {
            auto & a = structures[i];
            auto & b = structures[j];
            if (! naive_hom_exists(b, a))
                continue;
            auto check = verify_sparse(a, b, 2, 1);
            EXPECT_EQ(check.holds, ! separated_by_small_target(a, b, 2));
        }
}

TEST(VerifySparse, GuardOnLargeTargets)
{
    EXPECT_THROW(verify_sparse(clique(3), directed_cycle(9), 5, 4), GuardExceeded);
}

TEST(SparseReplace, HighGirthInputIsKept)
{
    auto result = sparse_replace(cycle_graph(9), {.k = 2, .ell = 2});
    EXPECT_EQ(result.attempt, 0u);
    EXPECT_EQ(result.structure, cycle_graph(9));
    auto c = directed_cycle(5);
    EXPECT_EQ(sparse_replace(c, {.k = 2, .ell = 5}).structure, c);
}

TEST(SparseReplace, TriangleAtDefaultSeed)
{
    auto result = sparse_replace(clique(3), {.k = 2, .ell = 4});
    EXPECT_GT(result.attempt, 0u);
    EXPECT_LE(result.attempt, 64u);
    EXPECT_TRUE(result.exhaustive);
    EXPECT_GE(girth(result.structure).value_or(1000), 4u);
    EXPECT_TRUE(naive_is_hom(result.structure, clique(3), result.projection, HomKind::plain));
    auto check = verify_sparse(clique(3), result.structure, 2, 4);
    EXPECT_TRUE(check.holds) << check.failure;
}

TEST(SparseReplace, DirectedTriangle)
{
    auto a = directed_cycle(3);
    auto result = sparse_replace(a, {.k = 2, .ell = 4, .seed = 3});
    EXPECT_TRUE(verify_sparse(a, result.structure, 2, 4).holds);
}

TEST(SparseReplace, Deterministic)
{
    SparseParams params{.k = 2, .ell = 4, .seed = 11};
    auto first = sparse_replace(clique(3), params);
    auto second = sparse_replace(clique(3), params);
    EXPECT_EQ(first.structure, second.structure);
    EXPECT_EQ(first.projection, second.projection);
    EXPECT_EQ(first.attempt, second.attempt);
}

TEST(SparseReplace, LoopVertexBecomesLoopFree)
{
    auto loop = digraph(1, {{0, 0}});
    auto result = sparse_replace(loop, {.k = 1, .ell = 3});
    EXPECT_GE(girth(result.structure).value_or(1000), 3u);
    EXPECT_TRUE(verify_sparse(loop, result.structure, 1, 3).holds);
}

TEST(SparseReplace, ProjectionGivesTheEasyHalf)
{
    // B -> A composed with A -> C gives B -> C for every target
    auto result = sparse_replace(cycle_graph(5), {.k = 2, .ell = 6, .seed = 2});
    ASSERT_TRUE(naive_is_hom(result.structure, cycle_graph(5), result.projection, HomKind::plain));
    for (auto & c : naive_digraphs(2))
        if (auto h = hom_exists(cycle_graph(5), c)) {
            Homomorphism p{result.projection};
            EXPECT_TRUE(naive_is_hom(result.structure, c, compose(p, *h).map, HomKind::plain));
        }
}

TEST(SparseReplace, Preconditions)
{
    EXPECT_THROW(sparse_replace(digraph(0, {})), PreconditionViolated);
    EXPECT_THROW(sparse_replace(clique(3), {.k = 0}), PreconditionViolated);
    EXPECT_THROW(sparse_replace(clique(3), {.k = 2, .ell = 1}), PreconditionViolated);
}

TEST(SparseReplace, SizeCapIsAGuard)
{
    EXPECT_THROW(sparse_replace(clique(3), {.k = 2, .ell = 4, .max_size = 10}), GuardExceeded);
}
