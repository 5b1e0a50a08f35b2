#pragma once

// Shared builders and brute-force oracles for the test suites. The oracles
// deliberately avoid the library's search code: they enumerate every map.

#include <lifts/family.hh>
#include <lifts/homomorphism.hh>
#include <lifts/operations.hh>
#include <lifts/signature.hh>
#include <lifts/structure.hh>
#include <lifts/text_format.hh>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lifts::testing
{
    inline auto graph_signature() -> SignaturePtr
    {
        static auto sig = Signature::make({{"E", 2, false}}, "G");
        return sig;
    }

    using Arcs = std::vector<std::pair<Element, Element>>;

    inline auto digraph(unsigned n, const Arcs & arcs, SignaturePtr sig = graph_signature()) -> Structure
    {
        StructureBuilder b(sig, n);
        for (auto [x, y] : arcs)
            b.add(0, {x, y});
        return std::move(b).build();
    }

    /// Every edge in both directions.
    inline auto graph(unsigned n, const Arcs & edges) -> Structure
    {
        Arcs arcs;
        for (auto [x, y] : edges) {
            arcs.emplace_back(x, y);
            arcs.emplace_back(y, x);
        }
        return digraph(n, arcs);
    }

    inline auto clique(unsigned n) -> Structure
    {
        Arcs edges;
        for (Element x = 0; x < n; ++x)
            for (Element y = x + 1; y < n; ++y)
                edges.emplace_back(x, y);
        return graph(n, edges);
    }

    inline auto cycle_graph(unsigned n) -> Structure
    {
        Arcs edges;
        for (Element x = 0; x < n; ++x)
            edges.emplace_back(x, (x + 1) % n);
        return graph(n, edges);
    }

    inline auto directed_path(unsigned arcs) -> Structure
    {
        Arcs a;
        for (Element x = 0; x < arcs; ++x)
            a.emplace_back(x, x + 1);
        return digraph(arcs + 1, a);
    }

    /// Digraph number `mask` on n points: bit i*n+j is the arc (i,j).
    inline auto digraph_from_mask(unsigned n, std::uint64_t mask) -> Structure
    {
        Arcs arcs;
        for (Element i = 0; i < n; ++i)
            for (Element j = 0; j < n; ++j)
                if ((mask >> (i * n + j)) & 1)
                    arcs.emplace_back(i, j);
        return digraph(n, arcs);
    }

    /// Calls visit(map) for every map from n points into m points, lexicographically.
    inline auto for_each_map(unsigned n, unsigned m, const std::function<bool(const std::vector<Element> &)> & visit)
        -> void
    {
        std::vector<Element> map(n, 0);
        if (n > 0 && m == 0)
            return;
        while (true) {
            if (! visit(map))
                return;
            unsigned i = n;
            while (i-- > 0) {
                if (++map[i] < m)
                    break;
                map[i] = 0;
            }
            if (i == ~0u)
                return;
        }
    }

    inline auto all_tuples(unsigned n, unsigned arity, const std::function<void(const Tuple &)> & visit) -> void
    {
        for_each_map(arity, n, [&](const std::vector<Element> & t) {
            visit(t);
            return true;
        });
    }

    /// Independent check of a map against plain, injective or full semantics (no partial constraints).
    inline auto naive_is_hom(const Structure & a, const Structure & b, const std::vector<Element> & map, HomKind kind)
        -> bool
    {
        if (kind == HomKind::injective) {
            std::set<Element> seen(map.begin(), map.end());
            if (seen.size() != map.size())
                return false;
        }
        for (SymbolId r = 0; r < a.signature().size(); ++r) {
            unsigned arity = a.signature()[r].arity;
            bool ok = true;
            all_tuples(a.size(), arity, [&](const Tuple & t) {
                Tuple image;
                for (auto e : t)
                    image.push_back(map[e]);
                bool in_a = a.has(r, t), in_b = b.has(r, image);
                if (in_a && ! in_b)
                    ok = false;
                if (kind == HomKind::full && ! in_a && in_b)
                    ok = false;
            });
            if (! ok)
                return false;
        }
        return true;
    }

    inline auto naive_hom_exists(const Structure & a, const Structure & b, HomKind kind = HomKind::plain) -> bool
    {
        bool found = false;
        for_each_map(a.size(), b.size(), [&](const std::vector<Element> & map) {
            found = naive_is_hom(a, b, map, kind);
            return ! found;
        });
        return found;
    }

    inline auto naive_hom_count(const Structure & a, const Structure & b, HomKind kind = HomKind::plain) -> unsigned
    {
        unsigned count = 0;
        for_each_map(a.size(), b.size(), [&](const std::vector<Element> & map) {
            count += naive_is_hom(a, b, map, kind);
            return true;
        });
        return count;
    }

    /// Whether some assignment of `colours` colours leaves no arc monochromatic (loops are monochromatic).
    inline auto naive_colourable(const Structure & g, unsigned colours) -> bool
    {
        bool found = false;
        for_each_map(g.size(), colours, [&](const std::vector<Element> & c) {
            bool proper = true;
            for (auto t : g.relation(0))
                proper = proper && c[t[0]] != c[t[1]];
            found = proper;
            return ! proper;
        });
        return found;
    }

    /// Canonical code by brute force over all permutations: the smallest sorted arc list.
    inline auto naive_iso_code(const Structure & s) -> std::vector<unsigned>
    {
        std::vector<Element> perm(s.size());
        for (Element e = 0; e < s.size(); ++e)
            perm[e] = e;
        std::vector<unsigned> best;
        do {
            std::vector<unsigned> code{s.size()};
            for (SymbolId r = 0; r < s.signature().size(); ++r) {
                std::vector<Tuple> tuples;
                for (auto t : s.relation(r)) {
                    Tuple u;
                    for (auto e : t)
                        u.push_back(perm[e]);
                    tuples.push_back(u);
                }
                std::sort(tuples.begin(), tuples.end());
                code.push_back(tuples.size());
                for (auto & u : tuples)
                    code.insert(code.end(), u.begin(), u.end());
            }
            if (best.empty() || code < best)
                best = code;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    /// Every digraph with exactly n points, one per isomorphism class, from the raw bit masks.
    inline auto naive_digraphs(unsigned n) -> std::vector<Structure>
    {
        std::set<std::vector<unsigned>> seen;
        std::vector<Structure> out;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
            auto s = digraph_from_mask(n, mask);
            if (seen.insert(naive_iso_code(s)).second)
                out.push_back(s);
        }
        return out;
    }

    inline auto data_path(const std::string & file) -> std::string { return std::string(LIFTS_TEST_DATA) + "/" + file; }

    inline auto load_family_file(const std::string & file) -> PatternFamily
    {
        return parse_family(read_file(data_path(file)));
    }

    inline auto load_structure_file(const std::string & file) -> Structure
    {
        return parse_structure(read_file(data_path(file)));
    }
}
