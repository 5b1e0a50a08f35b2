#include "support.hh"

#include <lifts/canonical.hh>
#include <lifts/errors.hh>
#include <lifts/fpdecide.hh>
#include <lifts/fvreduce.hh>
#include <lifts/operations.hh>
#include <lifts/shape.hh>

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

using namespace lifts;
using namespace lifts::testing;

namespace
{
    auto triangle_free() -> const PatternFamily &
    {
        static auto family = load_family_file("triangle_free.txt");
        return family;
    }

    auto three_colouring() -> const PatternFamily &
    {
        static auto family = load_family_file("three_colouring.txt");
        return family;
    }

    auto has_triangle(const Structure & a) -> bool { return naive_hom_exists(clique(3), rebind(a, graph_signature())); }

    auto in_language(const Structure & a, const PatternFamily & family) -> bool
    {
        if (&family == &triangle_free())
            return ! has_triangle(a);
        return naive_colourable(rebind(a, graph_signature()), 3);
    }

    // Shadow of one uniformly coloured pattern, as a family over the graph signature plus one colour.
    auto single_pattern_family(const Structure & shape) -> PatternFamily
    {
        auto sig = Signature::extend(graph_signature(), {{"C", 1, true}}, "L");
        StructureBuilder b(sig, shape.size());
        for (auto t : shape.relation(0))
            b.add(0, t);
        for (Element e = 0; e < shape.size(); ++e)
            b.add(1, {e});
        return make_family(sig, {std::move(b).build()});
    }

    auto block_arities(const Basis & basis) -> std::multiset<unsigned>
    {
        std::multiset<unsigned> out;
        for (auto & s : basis.blocks)
            out.insert(s.size());
        return out;
    }

    auto symbol_of_size(const Basis & basis, unsigned size, std::size_t tuples) -> SymbolId
    {
        for (SymbolId i = 0; i < basis.blocks.size(); ++i)
            if (basis.blocks[i].size() == size && basis.blocks[i].tuple_count() == tuples)
                return i;
        ADD_FAILURE() << "no block with " << size << " elements and " << tuples << " tuples";
        return 0;
    }

    /// Every beta structure on n points whose tuples have distinct coordinates and whose girth exceeds k.
    auto high_girth_structures(const SignaturePtr & beta, unsigned n, unsigned k) -> std::vector<Structure>
    {
        std::vector<std::pair<SymbolId, Tuple>> candidates;
        for (SymbolId r = 0; r < beta->size(); ++r)
            all_tuples(n, (*beta)[r].arity, [&](const Tuple & t) {
                if (std::set<Element>(t.begin(), t.end()).size() == t.size())
                    candidates.emplace_back(r, t);
            });
        std::vector<Structure> out;
        std::set<std::vector<unsigned>> seen;
        std::vector<std::size_t> chosen;
        std::function<void(std::size_t)> grow = [&](std::size_t from) {
            StructureBuilder b(beta, n);
            for (auto i : chosen)
                b.add(candidates[i].first, candidates[i].second);
            auto s = std::move(b).build();
            if (cycle_at_most(s, k))
                return;
            if (seen.insert(canonical_code(s)).second)
                out.push_back(s);
            for (auto i = from; i < candidates.size(); ++i) {
                chosen.push_back(i);
                grow(i + 1);
                chosen.pop_back();
            }
        };
        grow(0);
        return out;
    }

    auto random_beta(const SignaturePtr & beta, unsigned n, std::mt19937 & rng) -> Structure
    {
        StructureBuilder b(beta, n);
        for (SymbolId r = 0; r < beta->size(); ++r)
            all_tuples(n, (*beta)[r].arity, [&](const Tuple & t) {
                if (rng() % 4 == 0)
                    b.add(r, t);
            });
        return std::move(b).build();
    }
}

TEST(Basis, TriangleFamilyHasTriangleAndArc)
{
    auto basis = build_basis(triangle_free());
    EXPECT_EQ(block_arities(basis), (std::multiset<unsigned>{2, 3}));
    auto triangle = symbol_of_size(basis, 3, 6);
    EXPECT_EQ((*basis.beta)[triangle].arity, 3u);
    EXPECT_TRUE(isomorphic(rebind(basis.blocks[triangle], graph_signature()), clique(3)));
}

TEST(Basis, TwoArcPathGivesOneArcClass)
{
    auto basis = build_basis(single_pattern_family(directed_path(2)));
    ASSERT_EQ(basis.blocks.size(), 1u);
    EXPECT_EQ(basis.blocks[0].size(), 2u);
    EXPECT_EQ(basis.blocks[0].tuple_count(), 1u);
}

TEST(Basis, TriangleWithPendantArc)
{
    auto shape = digraph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
    auto basis = build_basis(single_pattern_family(shape));
    EXPECT_EQ(block_arities(basis), (std::multiset<unsigned>{2, 3}));
}

TEST(Basis, BlocksArePairwiseNonIsomorphic)
{
    auto family = single_pattern_family(digraph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}));
    auto basis = build_basis(family);
    for (std::size_t i = 0; i < basis.blocks.size(); ++i) {
        EXPECT_EQ((*basis.beta)[i].arity, basis.blocks[i].size());
        for (std::size_t j = i + 1; j < basis.blocks.size(); ++j)
            EXPECT_FALSE(isomorphic(basis.blocks[i], basis.blocks[j]));
    }
}

TEST(Basis, BetaLiftedCarriesColours)
{
    auto basis = build_basis(three_colouring());
    EXPECT_EQ(basis.beta_lifted->size(), basis.beta->size() + 3);
    EXPECT_EQ(basis.colours.size(), 3u);
}

TEST(Psi, SingleArc)
{
    auto basis = build_basis(single_pattern_family(directed_path(1)));
    auto image = psi(rebind(directed_path(1), basis.input), basis);
    ASSERT_EQ(image.relation(0).size(), 1u);
    EXPECT_TRUE(image.has(0, {0, 1}));
}

TEST(Psi, TriangleIntoK3)
{
    auto basis = build_basis(triangle_free());
    auto image = psi(rebind(clique(3), basis.input), basis);
    EXPECT_EQ(image.relation(symbol_of_size(basis, 3, 6)).size(), 6u);
    EXPECT_EQ(image.size(), 3u);
}

TEST(Psi, NoImagesMeansEmpty)
{
    auto basis = build_basis(triangle_free());
    auto image = psi(rebind(digraph(3, {}), basis.input), basis);
    EXPECT_EQ(image.tuple_count(), 0u);
}

TEST(Theta, ArcTuple)
{
    auto basis = build_basis(single_pattern_family(directed_path(1)));
    StructureBuilder b(basis.beta, 2);
    b.add(0, {0, 1});
    auto back = theta(std::move(b).build(), basis);
    EXPECT_EQ(back.tuple_count(), 1u);
    EXPECT_TRUE(back.has(0, {0, 1}));
}

TEST(Theta, CollapsedTriangleHasLoop)
{
    auto basis = build_basis(triangle_free());
    auto triangle = symbol_of_size(basis, 3, 6);
    StructureBuilder b(basis.beta, 2);
    b.add(triangle, {0, 0, 1});
    auto back = theta(std::move(b).build(), basis);
    EXPECT_TRUE(back.has(0, {0, 0}));
    EXPECT_TRUE(back.has(0, {0, 1}));
    EXPECT_TRUE(back.has(0, {1, 0}));
    EXPECT_FALSE(back.has(0, {1, 1}));
}

TEST(Theta, UndoesPsiOnSmallDigraphs)
{
    for (auto * family : {&triangle_free(), &three_colouring()}) {
        auto basis = build_basis(*family);
        for (unsigned n = 0; n <= 4; ++n)
            for (auto & a : naive_digraphs(n)) {
                auto bound = rebind(a, basis.input);
                EXPECT_EQ(theta(psi(bound, basis), basis), bound);
            }
    }
}

TEST(Theta, PsiInflatesOnSmallBetaStructures)
{
    auto basis = build_basis(triangle_free());
    std::mt19937 rng(21);
    auto check = [&](const Structure & b) {
        auto round_trip = psi(theta(b, basis), basis);
        for (SymbolId r = 0; r < basis.beta->size(); ++r)
            for (auto t : b.relation(r))
                EXPECT_TRUE(round_trip.has(r, t));
    };
    for (unsigned n = 1; n <= 2; ++n)
        for (int round = 0; round < 300; ++round)
            check(random_beta(basis.beta, n, rng));
    for (int round = 0; round < 300; ++round)
        check(random_beta(basis.beta, 3, rng));
}

TEST(GPrime, TriangleFamilyContainsSingleTriangleTuple)
{
    auto & family = triangle_free();
    auto basis = build_basis(family);
    auto gprime = build_gprime(family, basis);
    auto triangle = symbol_of_size(basis, 3, 6);
    bool found = false;
    for (auto & g : gprime.patterns) {
        auto & c = g.carrier();
        if (c.size() == 3 && c.relation(triangle).size() == 1 && c.tuple_count() == 4)
            found = true;
    }
    EXPECT_TRUE(found);
}

TEST(GPrime, MembersAreForestsWithDistinctCoordinates)
{
    for (auto * family : {&triangle_free(), &three_colouring()}) {
        auto basis = build_basis(*family);
        auto gprime = build_gprime(*family, basis);
        EXPECT_FALSE(gprime.patterns.empty());
        for (auto & g : gprime.patterns) {
            auto carrier = shadow(g.carrier());
            EXPECT_TRUE(is_forest(carrier));
            for (SymbolId r = 0; r < basis.beta->size(); ++r)
                for (auto t : carrier.relation(r))
                    EXPECT_EQ(std::set<Element>(t.begin(), t.end()).size(), t.size());
        }
    }
}

TEST(GPrime, ArcPatternGivesSingleArcTuple)
{
    auto family = single_pattern_family(directed_path(1));
    auto basis = build_basis(family);
    auto gprime = build_gprime(family, basis);
    bool found = false;
    for (auto & g : gprime.patterns)
        found = found || (g.size() == 2 && g.carrier().relation(0).size() == 1);
    EXPECT_TRUE(found);
}

TEST(GirthThreshold, Examples)
{
    EXPECT_EQ(girth_threshold(triangle_free()), 3u);
    EXPECT_EQ(girth_threshold(three_colouring()), 2u);
    PatternFamily empty = triangle_free();
    empty.patterns.clear();
    EXPECT_EQ(girth_threshold(empty), 0u);
}

TEST(Forward, TriangleFreeExamples)
{
    auto & family = triangle_free();
    auto k3 = reduce_forward(rebind(clique(3), family.input_signature()), family);
    EXPECT_EQ(k3.image.tuple_count(), 6u + 6u);
    EXPECT_FALSE(fp_membership(k3.image, k3.gprime));

    auto c5 = reduce_forward(rebind(cycle_graph(5), family.input_signature()), family);
    EXPECT_TRUE(fp_membership(c5.image, c5.gprime));

    auto none = reduce_forward(rebind(digraph(0, {}), family.input_signature()), family);
    EXPECT_EQ(none.image.tuple_count(), 0u);
    EXPECT_TRUE(fp_membership(none.image, none.gprime));
}

TEST(Forward, TemplatesAgreeWithMembership)
{
    auto & family = triangle_free();
    auto reduction = reduce_forward(rebind(cycle_graph(5), family.input_signature()), family);
    ASSERT_TRUE(reduction.templates_known) << reduction.note;
    for (unsigned n = 1; n <= 3; ++n)
        for (auto & a : naive_digraphs(n)) {
            auto image = psi(rebind(a, family.input_signature()), reduction.basis);
            bool to_template = false;
            for (auto & d : reduction.templates)
                to_template = to_template || naive_hom_exists(image, d);
            EXPECT_EQ(to_template, fp_membership(image, reduction.gprime).has_value());
        }
}

TEST(Forward, EquivalenceOnSmallDigraphs)
{
    for (auto * family : {&triangle_free(), &three_colouring()}) {
        auto basis = build_basis(*family);
        auto gprime = build_gprime(*family, basis);
        for (unsigned n = 0; n <= 4; ++n)
            for (auto & a : naive_digraphs(n)) {
                auto image = psi(rebind(a, basis.input), basis);
                EXPECT_EQ(fp_membership(image, gprime).has_value(), in_language(a, *family));
            }
    }
}

TEST(Backward, SingleTriangleTuple)
{
    auto & family = triangle_free();
    auto basis = build_basis(family);
    StructureBuilder b(basis.beta, 3);
    b.add(symbol_of_size(basis, 3, 6), {0, 1, 2});
    auto single = std::move(b).build();
    auto back = reduce_backward(single, family, basis);
    EXPECT_TRUE(isomorphic(rebind(back, graph_signature()), clique(3)));
    EXPECT_FALSE(fp_membership(single, build_gprime(family, basis)));
}

TEST(Backward, TwoDisjointArcs)
{
    auto & family = triangle_free();
    auto basis = build_basis(family);
    auto arc = symbol_of_size(basis, 2, 1);
    StructureBuilder b(basis.beta, 4);
    b.add(arc, {0, 1});
    b.add(arc, {2, 3});
    auto back = reduce_backward(std::move(b).build(), family, basis);
    EXPECT_EQ(back, rebind(digraph(4, {{0, 1}, {2, 3}}), basis.input));
}

TEST(Backward, ShortCycleIsRejected)
{
    auto & family = triangle_free();
    auto basis = build_basis(family);
    auto arc = symbol_of_size(basis, 2, 1);
    StructureBuilder b(basis.beta, 2);
    b.add(arc, {0, 1});
    b.add(arc, {1, 0});
    EXPECT_THROW(reduce_backward(std::move(b).build(), family, basis), PreconditionViolated);
}

TEST(Backward, EquivalenceAboveTheGirthThreshold)
{
    for (auto * family : {&triangle_free(), &three_colouring()}) {
        auto basis = build_basis(*family);
        auto gprime = build_gprime(*family, basis);
        unsigned k = girth_threshold(*family);
        for (unsigned n = 1; n <= 4; ++n)
            for (auto & b : high_girth_structures(basis.beta, n, k)) {
                auto back = reduce_backward(b, *family, basis);
                EXPECT_EQ(fp_membership(b, gprime).has_value(), in_language(back, *family));
            }
    }
}

TEST(Backward, PatternsMapIntoPsiOfTheirShadows)
{
    auto & family = triangle_free();
    auto basis = build_basis(family);
    for (auto & p : family.patterns) {
        auto image = psi(rebind(shadow(p), basis.input), basis);
        auto back = theta(image, basis);
        EXPECT_TRUE(naive_hom_exists(rebind(shadow(p), graph_signature()), rebind(back, graph_signature())));
    }
}
