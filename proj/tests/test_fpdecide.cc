#include "support.hh"

#include <lifts/canonical.hh>
#include <lifts/enumerate.hh>
#include <lifts/errors.hh>
#include <lifts/fpdecide.hh>
#include <lifts/homsearch.hh>
#include <lifts/shape.hh>

#include <gtest/gtest.h>

#include <random>

using namespace lifts;
using namespace lifts::testing;

namespace
{
    auto colour_signature(unsigned colours) -> SignaturePtr
    {
        std::vector<Symbol> lifted;
        for (unsigned c = 1; c <= colours; ++c)
            lifted.push_back({"C" + std::to_string(c), 1, true});
        return Signature::extend(graph_signature(), lifted, "L");
    }

    struct Coloured
    {
        Structure graph;
        std::vector<int> colour; ///< -1 leaves the element uncoloured
    };

    auto monadic_family(unsigned colours, const std::vector<Coloured> & patterns, HomKind mode = HomKind::plain)
        -> PatternFamily
    {
        auto sig = colour_signature(colours);
        std::vector<Structure> lifts;
        for (auto & p : patterns) {
            StructureBuilder b(sig, p.graph.size());
            for (auto t : p.graph.relation(0))
                b.add(0, t);
            for (Element e = 0; e < p.graph.size(); ++e)
                if (p.colour[e] >= 0)
                    b.add(1 + p.colour[e], {e});
            lifts.push_back(std::move(b).build());
        }
        return make_family(sig, lifts, mode);
    }

    auto colouring_family(unsigned colours) -> PatternFamily
    {
        std::vector<Coloured> patterns;
        for (unsigned c = 0; c < colours; ++c)
            patterns.push_back({directed_path(1), {int(c), int(c)}});
        return monadic_family(colours, patterns);
    }

    auto small_digraphs(unsigned max_size) -> std::vector<Structure>
    {
        return all_structures(graph_signature(), max_size, {.up_to_isomorphism = true, .min_size = 1, .hereditary = {}});
    }

    auto same_language(const PatternFamily & a, const PatternFamily & b, unsigned max_size) -> bool
    {
        for (auto & g : small_digraphs(max_size))
            if (fp_membership(g, a).has_value() != fp_membership(g, b).has_value())
                return false;
        return true;
    }
}

TEST(FpMembership, ThreeColouringOfTriangle)
{
    auto family = load_family_file("three_colouring.txt");
    auto k3 = rebind(clique(3), family.input_signature());
    auto witness = fp_membership(k3, family);
    ASSERT_TRUE(witness);
    EXPECT_EQ(witness->cover_mode(), CoverMode::partition);
    for (auto & p : family.patterns)
        EXPECT_FALSE(hom_exists(p.carrier(), witness->carrier()));
    EXPECT_EQ(rebind(shadow(*witness), family.input_signature()).relations(), k3.relations());
}

TEST(FpMembership, NoThreeColouringOfK4)
{
    auto family = load_family_file("three_colouring.txt");
    EXPECT_FALSE(fp_membership(rebind(clique(4), family.input_signature()), family));
}

TEST(FpMembership, EmptyFamilyAdmitsEverything)
{
    auto family = monadic_family(2, {});
    EXPECT_TRUE(fp_membership(clique(5), family));
}

TEST(FpMembership, AgreesWithBruteForceColouring)
{
    auto family = load_family_file("three_colouring.txt");
    for (auto & g : small_digraphs(4))
        EXPECT_EQ(fp_membership(rebind(g, family.input_signature()), family).has_value(), naive_colourable(g, 3));
}

TEST(FpMembership, GuardOnColouringSpace)
{
    FpLimits limits;
    limits.max_search_bits = 3;
    EXPECT_THROW(fp_membership(cycle_graph(5), colouring_family(3), limits), GuardExceeded);
}

TEST(Normalize, EdgeAndItsCollapse)
{
    // the monochromatic edge maps onto its own loop image, so the loop pattern is redundant
    auto family = monadic_family(1, {{clique(2), {0, 0}}, {digraph(1, {{0, 0}}), {0}}});
    auto normal = normalize_family(family);
    ASSERT_EQ(normal.patterns.size(), 1u);
    EXPECT_EQ(normal.patterns[0].size(), 2u);
    EXPECT_TRUE(same_language(family, normal, 3));
}

TEST(Normalize, ThreeColouringFamilyKeepsTheArcs)
{
    auto family = load_family_file("three_colouring.txt");
    auto normal = normalize_family(family);
    ASSERT_EQ(normal.patterns.size(), 3u);
    for (auto & p : normal.patterns) {
        EXPECT_EQ(p.size(), 2u);
        EXPECT_EQ(p.cover_mode(), CoverMode::partition);
    }
    for (auto & g : small_digraphs(4)) {
        auto a = rebind(g, family.input_signature());
        EXPECT_EQ(fp_membership(a, normal).has_value(), fp_membership(a, family).has_value());
    }
}

TEST(Normalize, IsAFixpoint)
{
    auto normal = normalize_family(load_family_file("triangle_free.txt"));
    auto again = normalize_family(normal);
    ASSERT_EQ(again.patterns.size(), normal.patterns.size());
    for (std::size_t i = 0; i < normal.patterns.size(); ++i)
        EXPECT_TRUE(isomorphic(again.patterns[i].carrier(), normal.patterns[i].carrier()));
}

TEST(Normalize, UncolouredElementsTakeEveryColour)
{
    // an arc whose head is uncoloured, with two colours: becomes two partition patterns
    auto family = monadic_family(2, {{directed_path(1), {0, -1}}});
    auto normal = normalize_family(family);
    EXPECT_EQ(normal.patterns.size(), 2u);
    EXPECT_TRUE(same_language(family, normal, 3));
}

TEST(Normalize, PreservesLanguageOnRandomFamilies)
{
    std::mt19937 rng(17);
    auto shapes = small_digraphs(3);
    for (int round = 0; round < 40; ++round) {
        unsigned colours = 1 + rng() % 3;
        std::vector<Coloured> patterns;
        unsigned count = 1 + rng() % 2;
        for (unsigned i = 0; i < count; ++i) {
            auto & g = shapes[rng() % shapes.size()];
            std::vector<int> colour;
            for (Element e = 0; e < g.size(); ++e)
                colour.push_back(int(rng() % (colours + 1)) - 1);
            patterns.push_back({g, colour});
        }
        auto family = monadic_family(colours, patterns);
        EXPECT_TRUE(same_language(family, normalize_family(family), 3)) << write_family(family);
    }
}

TEST(Union, WithAnAlwaysFalseFamily)
{
    // a family whose pattern has no elements excludes everything
    auto never = monadic_family(3, {{digraph(0, {}), {}}});
    auto three = colouring_family(3);
    auto both = union_families(three, never);
    EXPECT_TRUE(same_language(both, three, 4));
}

TEST(Union, TwoOrThreeColouringIsThreeColouring)
{
    auto two = colouring_family(2);
    auto three = colouring_family(3);
    auto both = union_families(two, three);
    for (auto & g : small_digraphs(4))
        EXPECT_EQ(fp_membership(rebind(g, both.input_signature()), both).has_value(), naive_colourable(g, 3));
}

TEST(Union, IsIdempotentOnLanguages)
{
    auto family = load_family_file("triangle_free.txt");
    EXPECT_TRUE(same_language(union_families(family, family), family, 4));
}

TEST(Decide, ThreeColouringIsACsp)
{
    auto outcome = decide_finite_union_csp(load_family_file("three_colouring.txt"));
    EXPECT_EQ(outcome.verdict, Verdict::finite_union_csp);
    ASSERT_TRUE(outcome.templates_known);
    ASSERT_EQ(outcome.templates.size(), 1u);
    EXPECT_TRUE(hom_equivalent(rebind(outcome.templates[0], graph_signature()), clique(3)));
}

TEST(Decide, TriangleFreeIsNot)
{
    auto outcome = decide_finite_union_csp(load_family_file("triangle_free.txt"));
    EXPECT_EQ(outcome.verdict, Verdict::not_finite_union);
    ASSERT_TRUE(outcome.witness);
    EXPECT_TRUE(girth(core_of(shadow(*outcome.witness))).has_value());
}

TEST(Decide, EmptyFamilyGivesAllLoopsPoint)
{
    auto outcome = decide_finite_union_csp(monadic_family(2, {}));
    EXPECT_EQ(outcome.verdict, Verdict::finite_union_csp);
    ASSERT_EQ(outcome.templates.size(), 1u);
    EXPECT_TRUE(isomorphic(rebind(outcome.templates[0], graph_signature()), digraph(1, {{0, 0}})));
}

TEST(Decide, PositiveVerdictsAreSound)
{
    std::mt19937 rng(23);
    auto shapes = small_digraphs(3);
    unsigned positive = 0;
    for (int round = 0; round < 40; ++round) {
        unsigned colours = 1 + rng() % 2;
        std::vector<Coloured> patterns;
        unsigned count = 1 + rng() % 2;
        for (unsigned i = 0; i < count; ++i) {
            auto & g = shapes[rng() % shapes.size()];
            std::vector<int> colour;
            for (Element e = 0; e < g.size(); ++e)
                colour.push_back(int(rng() % colours));
            patterns.push_back({g, colour});
        }
        auto family = monadic_family(colours, patterns);
        auto outcome = decide_finite_union_csp(family);
        if (outcome.verdict != Verdict::finite_union_csp || ! outcome.templates_known)
            continue;
        ++positive;
        EXPECT_TRUE(verify_shadow_duality(family, outcome.templates, 4).holds) << write_family(family);
    }
    EXPECT_GT(positive, 5u);
}

TEST(ShadowDuality, Examples)
{
    auto family = load_family_file("three_colouring.txt");
    auto sig = family.input_signature();
    EXPECT_TRUE(verify_shadow_duality(family, {rebind(clique(3), sig)}, 4).holds);

    auto bad = verify_shadow_duality(family, {rebind(clique(2), sig)}, 3);
    EXPECT_FALSE(bad.holds);
    ASSERT_TRUE(bad.counterexample);
    auto c = rebind(*bad.counterexample, graph_signature());
    EXPECT_TRUE(naive_colourable(c, 3));
    EXPECT_FALSE(naive_hom_exists(c, clique(2)));
}

TEST(ShadowDuality, TriangleFreeHasNoSmallTemplates)
{
    auto family = load_family_file("triangle_free.txt");
    auto sig = family.input_signature();
    for (auto & candidate : {clique(2), clique(3), cycle_graph(4), digraph(1, {{0, 0}})})
        EXPECT_FALSE(verify_shadow_duality(family, {rebind(candidate, sig)}, 5).holds);
}

TEST(Expand, InjectiveUnconstrainedPair)
{
    auto family = monadic_family(1, {{directed_path(1), {0, 0}}}, HomKind::injective);
    family.constraints = {PartialConstraints{std::vector<std::pair<Element, Element>>{}, {}}};
    auto expanded = expand_partial_constraints(family);
    EXPECT_EQ(expanded.patterns.size(), 2u);
    EXPECT_FALSE(expanded.has_partial_constraints());
}

TEST(Expand, NoConstraintsUnchanged)
{
    auto family = monadic_family(1, {{directed_path(2), {0, 0, 0}}}, HomKind::injective);
    auto expanded = expand_partial_constraints(family);
    ASSERT_EQ(expanded.patterns.size(), 1u);
    EXPECT_EQ(expanded.patterns[0].carrier().relations(), family.patterns[0].carrier().relations());
}

TEST(Expand, FullFreeTuple)
{
    auto family = monadic_family(1, {{directed_path(1), {0, 0}}}, HomKind::full);
    family.constraints = {PartialConstraints{std::nullopt, {{0, {1, 0}}}}};
    auto expanded = expand_partial_constraints(family);
    ASSERT_EQ(expanded.patterns.size(), 2u);
    EXPECT_NE(expanded.patterns[0].carrier().relation(0).size(), expanded.patterns[1].carrier().relation(0).size());
}

TEST(Expand, AgreesWithNativePartialSearch)
{
    std::mt19937 rng(29);
    auto shapes = small_digraphs(3);
    for (int round = 0; round < 60; ++round) {
        bool injective = round % 2 == 0;
        auto & g = shapes[rng() % shapes.size()];
        std::vector<int> colour;
        for (Element e = 0; e < g.size(); ++e)
            colour.push_back(int(rng() % 2));
        auto family = monadic_family(2, {{g, colour}}, injective ? HomKind::injective : HomKind::full);
        PartialConstraints partial;
        if (injective) {
            std::vector<std::pair<Element, Element>> pairs;
            for (Element x = 0; x < g.size(); ++x)
                for (Element y = x + 1; y < g.size(); ++y)
                    if (rng() % 2)
                        pairs.emplace_back(x, y);
            partial.separated = pairs;
        }
        else {
            for (Element x = 0; x < g.size(); ++x)
                for (Element y = 0; y < g.size(); ++y)
                    if (! g.has(0, {x, y}) && rng() % 3 == 0)
                        partial.free_tuples.push_back({0, {x, y}});
        }
        family.constraints = {partial};
        auto expanded = expand_partial_constraints(family);
        for (auto & a : small_digraphs(3)) {
            auto input = rebind(a, family.input_signature());
            EXPECT_EQ(fp_membership(input, family).has_value(), fp_membership(input, expanded).has_value())
                << write_family(family) << write_standalone(a, "A");
        }
    }
}

TEST(FamilyText, RoundTrip)
{
    auto family = load_family_file("three_colouring.txt");
    auto back = parse_family(write_family(family));
    ASSERT_EQ(back.patterns.size(), family.patterns.size());
    EXPECT_EQ(back.mode, family.mode);
    for (std::size_t i = 0; i < family.patterns.size(); ++i)
        EXPECT_EQ(back.patterns[i].carrier().relations(), family.patterns[i].carrier().relations());
}

TEST(FamilyText, ConstraintsNeedPartialModes)
{
    EXPECT_THROW(parse_family("signature G { E/2 C/1 lift }\n"
                              "structure F : G { universe = {x, y} ; E = {(x,y)} ; C = {x, y} }\n"
                              "constraints F { x != y }\n"),
        ParseError);
    auto ok = parse_family("signature G { E/2 C/1 lift }\n"
                           "structure F : G { universe = {x, y} ; E = {(x,y)} ; C = {x, y} }\n"
                           "mode = full\n"
                           "constraints F { tuple E(y,x) free }\n");
    ASSERT_TRUE(ok.has_partial_constraints());
    EXPECT_EQ(ok.constraints[0].free_tuples.size(), 1u);
}

TEST(FamilyText, EmptyTextIsAnError)
{
    EXPECT_THROW(parse_family(""), ParseError);
}
