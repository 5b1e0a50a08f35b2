#include <lifts/canonical.hh>
#include <lifts/operations.hh>

#include <algorithm>
#include <map>
#include <numeric>

namespace lifts
{
    namespace
    {
        using Colours = std::vector<unsigned>;

        auto rank(const std::vector<std::vector<unsigned>> & keys) -> Colours
        {
            std::vector<std::size_t> order(keys.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
            Colours result(keys.size());
            unsigned c = 0;
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (i > 0 && keys[order[i]] != keys[order[i - 1]])
                    ++c;
                result[order[i]] = c;
            }
            return result;
        }

        auto cell_count(const Colours & c) -> unsigned
        {
            return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
        }

        class Canoniser
        {
        private:
            const Structure & _s;
            unsigned _n;
            std::vector<std::vector<unsigned>> _occurrences; // per element: (symbol, position, tuple index) triples

            bool _have_best = false;
            std::vector<unsigned> _best_code;
            std::vector<Element> _best_labelling;
            std::vector<std::vector<Element>> _automorphisms;

        public:
            explicit Canoniser(const Structure & s) :
                _s(s),
                _n(s.size()),
                _occurrences(s.size())
            {
                for (SymbolId r = 0; r < s.signature().size(); ++r) {
                    auto & rel = s.relation(r);
                    for (std::size_t i = 0; i < rel.size(); ++i) {
                        auto t = rel[i];
                        for (unsigned p = 0; p < t.size(); ++p) {
                            auto & o = _occurrences[t[p]];
                            o.push_back(r);
                            o.push_back(p);
                            o.push_back(i);
                        }
                    }
                }
            }

            auto refine(Colours c) const -> Colours
            {
                unsigned cells = cell_count(c);
                while (true) {
                    std::vector<std::vector<unsigned>> keys(_n);
                    std::vector<std::vector<unsigned>> items;
                    for (Element e = 0; e < _n; ++e) {
                        auto & occ = _occurrences[e];
                        items.clear();
                        for (std::size_t j = 0; j < occ.size(); j += 3) {
                            auto t = _s.relation(occ[j])[occ[j + 2]];
                            std::vector<unsigned> item{occ[j], occ[j + 1]};
                            for (auto x : t)
                                item.push_back(c[x]);
                            items.push_back(std::move(item));
                        }
                        std::sort(items.begin(), items.end());
                        auto & key = keys[e];
                        key.push_back(c[e]);
                        for (auto & item : items) {
                            key.push_back(item.size());
                            key.insert(key.end(), item.begin(), item.end());
                        }
                    }
                    auto next = rank(keys);
                    unsigned next_cells = cell_count(next);
                    c = std::move(next);
                    if (next_cells == cells)
                        return c;
                    cells = next_cells;
                }
            }

            auto leaf_code(const Colours & labelling) const -> std::vector<unsigned>
            {
                std::vector<unsigned> code{_n};
                Tuple t;
                for (SymbolId r = 0; r < _s.signature().size(); ++r) {
                    auto & rel = _s.relation(r);
                    unsigned k = rel.arity();
                    std::vector<Tuple> tuples;
                    tuples.reserve(rel.size());
                    for (auto u : rel) {
                        t.assign(k, 0);
                        for (unsigned i = 0; i < k; ++i)
                            t[i] = labelling[u[i]];
                        tuples.push_back(t);
                    }
                    std::sort(tuples.begin(), tuples.end());
                    code.push_back(tuples.size());
                    for (auto & u : tuples)
                        code.insert(code.end(), u.begin(), u.end());
                }
                return code;
            }

            auto search(const Colours & c, std::vector<Element> & prefix) -> void
            {
                unsigned cells = cell_count(c);
                if (cells == _n) {
                    auto code = leaf_code(c);
                    if (! _have_best || code < _best_code) {
                        _have_best = true;
                        _best_code = std::move(code);
                        _best_labelling = c;
                    }
                    else if (code == _best_code) {
                        // c^-1 followed by best gives an automorphism
                        std::vector<Element> inverse(_n), gamma(_n);
                        for (Element e = 0; e < _n; ++e)
                            inverse[c[e]] = e;
                        for (Element e = 0; e < _n; ++e)
                            gamma[e] = inverse[_best_labelling[e]];
                        _automorphisms.push_back(std::move(gamma));
                    }
                    return;
                }

                // first smallest non-singleton cell
                std::vector<unsigned> sizes(cells, 0);
                for (auto x : c)
                    ++sizes[x];
                unsigned target = cells;
                for (unsigned k = 0; k < cells; ++k)
                    if (sizes[k] > 1 && (target == cells || sizes[k] < sizes[target]))
                        target = k;

                std::vector<Element> members;
                for (Element e = 0; e < _n; ++e)
                    if (c[e] == target)
                        members.push_back(e);

                std::vector<Element> explored;
                for (auto v : members) {
                    if (in_explored_orbit(v, explored, prefix))
                        continue;
                    Colours next(_n);
                    for (Element e = 0; e < _n; ++e)
                        next[e] = 2 * c[e] + (e == v ? 0 : 1);
                    std::vector<std::vector<unsigned>> keys(_n);
                    for (Element e = 0; e < _n; ++e)
                        keys[e] = {next[e]};
                    prefix.push_back(v);
                    search(refine(rank(keys)), prefix);
                    prefix.pop_back();
                    explored.push_back(v);
                }
            }

            auto in_explored_orbit(Element v, const std::vector<Element> & explored, const std::vector<Element> & prefix) const
                -> bool
            {
                if (explored.empty() || _automorphisms.empty())
                    return false;
                // orbits under the found automorphisms that fix the prefix pointwise
                std::vector<Element> parent(_n);
                std::iota(parent.begin(), parent.end(), 0);
                auto find = [&](Element x) {
                    while (parent[x] != x)
                        x = parent[x] = parent[parent[x]];
                    return x;
                };
                for (auto & g : _automorphisms) {
                    if (! std::all_of(prefix.begin(), prefix.end(), [&](Element p) { return g[p] == p; }))
                        continue;
                    for (Element e = 0; e < _n; ++e)
                        parent[find(e)] = find(g[e]);
                }
                auto root = find(v);
                return std::any_of(explored.begin(), explored.end(), [&](Element u) { return find(u) == root; });
            }

            auto run() -> CanonicalForm
            {
                Colours start(_n, 0);
                std::vector<Element> prefix;
                search(refine(start), prefix);
                if (! _have_best)
                    return {{}, {0}};
                return {_best_labelling, _best_code};
            }
        };
    }

    auto canonical_form(const Structure & s) -> CanonicalForm
    {
        return Canoniser(s).run();
    }

    auto canonical_code(const Structure & s) -> std::vector<unsigned>
    {
        return canonical_form(s).code;
    }

    auto canonical_structure(const Structure & s) -> Structure
    {
        auto form = canonical_form(s);
        return relabel(s, form.labelling);
    }

    auto isomorphic(const Structure & a, const Structure & b) -> bool
    {
        if (a.size() != b.size() || a.tuple_count() != b.tuple_count())
            return false;
        if (! same_signature(a.signature_ptr(), b.signature_ptr()))
            return false;
        return canonical_code(a) == canonical_code(b);
    }
}
