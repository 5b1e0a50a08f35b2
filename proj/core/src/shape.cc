#include <lifts/operations.hh>
#include <lifts/shape.hh>

#include <algorithm>
#include <numeric>
#include <queue>

namespace lifts
{
    namespace
    {
        // Bipartite incidence graph: nodes 0..n-1 are elements, n.. are tuples.
        struct Incidence
        {
            unsigned elements = 0;
            std::vector<TupleRef> tuples;
            std::vector<std::vector<unsigned>> adjacent;

            explicit Incidence(const Structure & s) :
                elements(s.size())
            {
                adjacent.resize(s.size());
                for (SymbolId r = 0; r < s.signature().size(); ++r)
                    for (auto t : s.relation(r)) {
                        unsigned node = adjacent.size();
                        tuples.push_back({r, Tuple(t.begin(), t.end())});
                        Tuple distinct(t.begin(), t.end());
                        std::sort(distinct.begin(), distinct.end());
                        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
                        adjacent.emplace_back(distinct.begin(), distinct.end());
                        for (auto e : distinct)
                            adjacent[e].push_back(node);
                    }
            }

            auto size() const -> unsigned { return adjacent.size(); }
        };

        auto degenerate_cycle(const Structure & s) -> std::optional<Cycle>
        {
            for (SymbolId r = 0; r < s.signature().size(); ++r)
                for (auto t : s.relation(r))
                    for (unsigned i = 0; i < t.size(); ++i)
                        for (unsigned j = i + 1; j < t.size(); ++j)
                            if (t[i] == t[j])
                                return Cycle{{t[i]}, {{r, Tuple(t.begin(), t.end())}}};
            return std::nullopt;
        }

        // Shortest incidence cycle through BFS from every node, cut off at max_nodes nodes.
        auto incidence_cycle(const Incidence & g, unsigned max_nodes) -> std::optional<Cycle>
        {
            unsigned best = max_nodes + 1;
            std::vector<unsigned> best_walk;
            std::vector<unsigned> dist(g.size()), parent(g.size());
            std::vector<unsigned> touched;
            constexpr unsigned unseen = ~0u;
            std::fill(dist.begin(), dist.end(), unseen);

            for (unsigned root = 0; root < g.elements; ++root) {
                for (auto v : touched)
                    dist[v] = unseen;
                touched.clear();
                std::queue<unsigned> q;
                dist[root] = 0;
                parent[root] = root;
                touched.push_back(root);
                q.push(root);
                while (! q.empty()) {
                    auto u = q.front();
                    q.pop();
                    if (2 * dist[u] + 1 >= best)
                        break;
                    for (auto w : g.adjacent[u]) {
                        if (dist[w] == unseen) {
                            dist[w] = dist[u] + 1;
                            parent[w] = u;
                            touched.push_back(w);
                            q.push(w);
                        }
                        else if (w != parent[u] && dist[w] >= dist[u]) {
                            unsigned length = dist[u] + dist[w] + 1;
                            if (length < best) {
                                std::vector<unsigned> left, right;
                                for (unsigned x = u; x != root; x = parent[x])
                                    left.push_back(x);
                                for (unsigned x = w; x != root; x = parent[x])
                                    right.push_back(x);
                                // the walk root -> u -> w -> root; a simple cycle whenever it is shortest
                                std::vector<unsigned> walk{root};
                                walk.insert(walk.end(), left.rbegin(), left.rend());
                                walk.insert(walk.end(), right.begin(), right.end());
                                std::vector<unsigned> sorted = walk;
                                std::sort(sorted.begin(), sorted.end());
                                if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
                                    best = length;
                                    best_walk = std::move(walk);
                                }
                            }
                        }
                    }
                }
            }
            if (best_walk.empty())
                return std::nullopt;

            // rotate so it starts at an element node, then split into points and tuples
            Cycle c;
            unsigned len = best_walk.size();
            unsigned start = 0;
            while (best_walk[start] >= g.elements)
                ++start;
            for (unsigned i = 0; i < len; ++i) {
                unsigned node = best_walk[(start + i) % len];
                if (node < g.elements)
                    c.points.push_back(node);
                else
                    c.tuples.push_back(g.tuples[node - g.elements]);
            }
            // tuples[i] should sit between points[i-1] and points[i]
            std::rotate(c.tuples.rbegin(), c.tuples.rbegin() + 1, c.tuples.rend());
            return c;
        }

        struct UnionFind
        {
            std::vector<unsigned> parent;

            explicit UnionFind(unsigned n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

            auto find(unsigned x) -> unsigned
            {
                while (parent[x] != x)
                    x = parent[x] = parent[parent[x]];
                return x;
            }

            auto unite(unsigned a, unsigned b) -> void
            {
                a = find(a);
                b = find(b);
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }
        };

        auto piece_from_tuples(const Structure & s, const std::vector<TupleRef> & tuples) -> Piece
        {
            std::vector<Element> elements;
            for (auto & t : tuples)
                elements.insert(elements.end(), t.tuple.begin(), t.tuple.end());
            std::sort(elements.begin(), elements.end());
            elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
            StructureBuilder b(s.signature_ptr(), elements.size());
            Tuple mapped;
            for (auto & t : tuples) {
                mapped.clear();
                for (auto e : t.tuple)
                    mapped.push_back(std::lower_bound(elements.begin(), elements.end(), e) - elements.begin());
                b.add(t.symbol, mapped);
            }
            if (s.has_names()) {
                std::vector<std::string> names;
                for (auto e : elements)
                    names.push_back(s.element_name(e));
                b.set_names(std::move(names));
            }
            return {std::move(b).build(), std::move(elements)};
        }
    }

    auto describe(const Cycle & c, const Structure & s) -> std::string
    {
        std::string out;
        for (unsigned i = 0; i < c.tuples.size(); ++i) {
            out += s.element_name(c.points[(i + c.points.size() - 1) % c.points.size()]) + " -";
            auto & t = c.tuples[i];
            out += s.signature()[t.symbol].name + "(";
            for (unsigned j = 0; j < t.tuple.size(); ++j)
                out += (j ? "," : "") + s.element_name(t.tuple[j]);
            out += ")- ";
        }
        if (! c.points.empty())
            out += s.element_name(c.points.back());
        return out;
    }

    auto cycle_at_most(const Structure & s, unsigned max_length) -> std::optional<Cycle>
    {
        if (max_length == 0)
            return std::nullopt;
        if (auto c = degenerate_cycle(s))
            return c;
        if (max_length < 2)
            return std::nullopt;
        Incidence g(s);
        return incidence_cycle(g, 2 * max_length);
    }

    auto shortest_cycle(const Structure & s) -> std::optional<Cycle>
    {
        if (auto c = degenerate_cycle(s))
            return c;
        Incidence g(s);
        return incidence_cycle(g, g.size());
    }

    auto girth(const Structure & s) -> std::optional<unsigned>
    {
        auto c = shortest_cycle(s);
        if (! c)
            return std::nullopt;
        return c->length();
    }

    auto is_forest(const Structure & s) -> bool
    {
        return ! shortest_cycle(s);
    }

    auto is_connected(const Structure & s) -> bool
    {
        return connected_components(s).size() <= 1;
    }

    auto connected_components(const Structure & s) -> std::vector<Piece>
    {
        UnionFind uf(s.size());
        for (auto & rel : s.relations())
            for (auto t : rel)
                for (auto e : t)
                    uf.unite(t[0], e);

        std::vector<std::vector<Element>> groups;
        std::vector<int> group_of(s.size(), -1);
        for (Element e = 0; e < s.size(); ++e) {
            auto root = uf.find(e);
            if (group_of[root] < 0) {
                group_of[root] = groups.size();
                groups.emplace_back();
            }
            groups[group_of[root]].push_back(e);
        }
        std::vector<Piece> result;
        for (auto & g : groups)
            result.push_back({induced(s, g), g});
        return result;
    }

    auto biconnected_components(const Structure & s) -> std::vector<Piece>
    {
        Incidence g(s);
        unsigned nodes = g.size();
        unsigned tuple_count = g.tuples.size();

        // Tarjan's low-point traversal; each incidence block is recorded by the tuple nodes it holds.
        std::vector<unsigned> disc(nodes, 0), low(nodes, 0);
        unsigned timer = 0;
        std::vector<std::pair<unsigned, unsigned>> edge_stack;
        UnionFind merged(tuple_count);

        struct Frame
        {
            unsigned node, parent, next;
        };

        for (unsigned root = 0; root < nodes; ++root) {
            if (disc[root])
                continue;
            std::vector<Frame> stack{{root, ~0u, 0}};
            disc[root] = low[root] = ++timer;
            while (! stack.empty()) {
                auto & f = stack.back();
                if (f.next < g.adjacent[f.node].size()) {
                    unsigned w = g.adjacent[f.node][f.next++];
                    if (! disc[w]) {
                        edge_stack.emplace_back(f.node, w);
                        disc[w] = low[w] = ++timer;
                        stack.push_back({w, f.node, 0});
                    }
                    else if (w != f.parent && disc[w] < disc[f.node]) {
                        edge_stack.emplace_back(f.node, w);
                        low[f.node] = std::min(low[f.node], disc[w]);
                    }
                    continue;
                }
                unsigned u = f.node, p = f.parent;
                stack.pop_back();
                if (p == ~0u)
                    continue;
                low[p] = std::min(low[p], low[u]);
                if (low[u] >= disc[p]) {
                    // pop one incidence block
                    int first_tuple = -1;
                    while (true) {
                        auto [a, b] = edge_stack.back();
                        edge_stack.pop_back();
                        for (auto x : {a, b})
                            if (x >= g.elements) {
                                unsigned t = x - g.elements;
                                if (first_tuple < 0)
                                    first_tuple = t;
                                else
                                    merged.unite(first_tuple, t);
                            }
                        if (a == p && b == u)
                            break;
                    }
                }
            }
        }

        std::vector<std::vector<TupleRef>> blocks;
        std::vector<int> block_of(tuple_count, -1);
        for (unsigned t = 0; t < tuple_count; ++t) {
            auto root = merged.find(t);
            if (block_of[root] < 0) {
                block_of[root] = blocks.size();
                blocks.emplace_back();
            }
            blocks[block_of[root]].push_back(g.tuples[t]);
        }

        std::vector<Piece> result;
        for (auto & b : blocks)
            result.push_back(piece_from_tuples(s, b));
        for (Element e = 0; e < s.size(); ++e)
            if (g.adjacent[e].empty())
                result.push_back({induced(s, std::vector<Element>{e}), {e}});
        return result;
    }

    auto is_trivial_block(const Piece & p) -> bool
    {
        return p.structure.size() == 1 && p.structure.tuple_count() == 0;
    }
}
