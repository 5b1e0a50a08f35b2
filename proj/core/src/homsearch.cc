#include <lifts/canonical.hh>
#include <lifts/errors.hh>
#include <lifts/homsearch.hh>
#include <lifts/operations.hh>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>

namespace lifts
{
    namespace
    {
        using Word = std::uint64_t;

        class Search
        {
        private:
            const Structure & _a;
            const Structure & _b;
            const HomMode & _mode;
            unsigned _n, _m, _words;

            struct Constraint
            {
                SymbolId symbol;
                std::span<const Element> vars;
                bool repeated;
            };
            std::vector<Constraint> _constraints;
            std::vector<std::vector<unsigned>> _constraints_of;
            std::vector<unsigned> _degree;

            bool _injective = false;
            std::vector<std::vector<Element>> _partners;

            bool _full = false;
            std::set<std::pair<SymbolId, Tuple>> _free;
            // for each binary symbol: out/in neighbourhoods of the target as bitsets
            std::vector<SymbolId> _binary;
            std::vector<std::vector<Word>> _out, _in;

            std::vector<Word> _levels; // (n + 1) stacked copies of the domains
            std::vector<Element> _assignment;
            std::vector<bool> _assigned;
            std::vector<Element> _assigned_list;
            std::vector<Word> _support;
            std::vector<unsigned> _queue;
            std::vector<bool> _queued;

            bool _lexicographic;

            auto dom(unsigned level, Element v) -> Word * { return _levels.data() + (level * _n + v) * _words; }

            static auto test(const Word * d, Element e) -> bool { return (d[e / 64] >> (e % 64)) & 1; }
            static auto clear(Word * d, Element e) -> void { d[e / 64] &= ~(Word{1} << (e % 64)); }

            auto count(const Word * d) const -> unsigned
            {
                unsigned c = 0;
                for (unsigned w = 0; w < _words; ++w)
                    c += std::popcount(d[w]);
                return c;
            }

            auto empty(const Word * d) const -> bool
            {
                for (unsigned w = 0; w < _words; ++w)
                    if (d[w])
                        return false;
                return true;
            }

            auto enqueue_var(Element v) -> void
            {
                for (auto c : _constraints_of[v])
                    if (! _queued[c]) {
                        _queued[c] = true;
                        _queue.push_back(c);
                    }
            }

            auto revise(unsigned level, const Constraint & c) -> bool
            {
                unsigned k = c.vars.size();
                _support.assign(k * _words, 0);
                auto & flat = _b.relation(c.symbol).flat();
                for (std::size_t at = 0; at < flat.size(); at += k) {
                    bool ok = true;
                    for (unsigned i = 0; i < k && ok; ++i)
                        ok = test(dom(level, c.vars[i]), flat[at + i]);
                    if (ok && c.repeated)
                        for (unsigned i = 0; i < k && ok; ++i)
                            for (unsigned j = i + 1; j < k && ok; ++j)
                                if (c.vars[i] == c.vars[j] && flat[at + i] != flat[at + j])
                                    ok = false;
                    if (ok)
                        for (unsigned i = 0; i < k; ++i)
                            _support[i * _words + flat[at + i] / 64] |= Word{1} << (flat[at + i] % 64);
                }
                for (unsigned i = 0; i < k; ++i) {
                    Word * d = dom(level, c.vars[i]);
                    bool changed = false;
                    for (unsigned w = 0; w < _words; ++w) {
                        Word next = d[w] & _support[i * _words + w];
                        if (next != d[w]) {
                            d[w] = next;
                            changed = true;
                        }
                    }
                    if (changed) {
                        if (empty(d))
                            return false;
                        enqueue_var(c.vars[i]);
                    }
                }
                return true;
            }

            auto propagate(unsigned level) -> bool
            {
                while (! _queue.empty()) {
                    auto c = _queue.back();
                    _queue.pop_back();
                    _queued[c] = false;
                    if (! revise(level, _constraints[c])) {
                        for (auto q : _queue)
                            _queued[q] = false;
                        _queue.clear();
                        return false;
                    }
                }
                return true;
            }

            auto is_free(SymbolId r, const Tuple & t) const -> bool
            {
                return ! _free.empty() && _free.count({r, t});
            }

            // every non-tuple over assigned elements, using x, must map to a non-tuple
            auto full_check(Element x) -> bool
            {
                Tuple t, image;
                for (SymbolId r = 0; r < _a.signature().size(); ++r) {
                    if (_b.relation(r).empty())
                        continue;
                    unsigned k = _a.signature()[r].arity;
                    unsigned s = _assigned_list.size();
                    std::vector<unsigned> pos(k, 0);
                    t.assign(k, 0);
                    image.assign(k, 0);
                    while (true) {
                        bool uses_x = false;
                        for (unsigned i = 0; i < k; ++i) {
                            t[i] = _assigned_list[pos[i]];
                            uses_x = uses_x || t[i] == x;
                        }
                        if (uses_x && ! _a.has(r, t) && ! is_free(r, t)) {
                            for (unsigned i = 0; i < k; ++i)
                                image[i] = _assignment[t[i]];
                            if (_b.has(r, image))
                                return false;
                        }
                        unsigned i = k;
                        bool done = true;
                        while (i > 0) {
                            --i;
                            if (++pos[i] < s) {
                                done = false;
                                break;
                            }
                            pos[i] = 0;
                        }
                        if (done)
                            break;
                    }
                }
                return true;
            }

            auto full_forward(unsigned level, Element x, Element v) -> bool
            {
                for (std::size_t b = 0; b < _binary.size(); ++b) {
                    auto r = _binary[b];
                    const Word * out = _out[b].data() + v * _words;
                    const Word * in = _in[b].data() + v * _words;
                    for (Element y = 0; y < _n; ++y) {
                        if (_assigned[y])
                            continue;
                        Word * d = dom(level, y);
                        bool changed = false;
                        if (! _a.has(r, {x, y}) && ! is_free(r, {x, y}))
                            for (unsigned w = 0; w < _words; ++w) {
                                Word next = d[w] & ~out[w];
                                changed = changed || next != d[w];
                                d[w] = next;
                            }
                        if (! _a.has(r, {y, x}) && ! is_free(r, {y, x}))
                            for (unsigned w = 0; w < _words; ++w) {
                                Word next = d[w] & ~in[w];
                                changed = changed || next != d[w];
                                d[w] = next;
                            }
                        if (changed) {
                            if (empty(d))
                                return false;
                            enqueue_var(y);
                        }
                    }
                }
                return true;
            }

            auto choose(unsigned level) -> Element
            {
                Element best = _n;
                unsigned best_size = 0;
                for (Element v = 0; v < _n; ++v) {
                    if (_assigned[v])
                        continue;
                    if (_lexicographic)
                        return v;
                    unsigned size = count(dom(level, v));
                    if (best == _n || size < best_size || (size == best_size && _degree[v] > _degree[best])) {
                        best = v;
                        best_size = size;
                    }
                }
                return best;
            }

            template <typename Visit_>
            auto solve(unsigned level, Visit_ & visit) -> bool
            {
                if (_assigned_list.size() == _n) {
                    Homomorphism h{_assignment};
                    return visit(h);
                }
                Element x = choose(level);
                const Word * d = dom(level, x);
                std::vector<Word> values(d, d + _words);
                for (unsigned w = 0; w < _words; ++w)
                    for (Word bits = values[w]; bits; bits &= bits - 1) {
                        Element v = w * 64 + std::countr_zero(bits);
                        std::copy(dom(level, 0), dom(level, 0) + _n * _words, dom(level + 1, 0));
                        Word * nd = dom(level + 1, x);
                        std::fill(nd, nd + _words, 0);
                        nd[v / 64] = Word{1} << (v % 64);

                        _assigned[x] = true;
                        _assignment[x] = v;
                        _assigned_list.push_back(x);

                        bool ok = true;
                        if (_injective)
                            for (auto y : _partners[x]) {
                                Word * pd = dom(level + 1, y);
                                if (test(pd, v)) {
                                    clear(pd, v);
                                    if (empty(pd)) {
                                        ok = false;
                                        break;
                                    }
                                    enqueue_var(y);
                                }
                            }
                        if (ok && _full)
                            ok = full_check(x) && full_forward(level + 1, x, v);
                        if (ok) {
                            enqueue_var(x);
                            ok = propagate(level + 1);
                        }
                        else {
                            for (auto q : _queue)
                                _queued[q] = false;
                            _queue.clear();
                        }

                        bool keep_going = true;
                        if (ok)
                            keep_going = solve(level + 1, visit);

                        _assigned_list.pop_back();
                        _assigned[x] = false;
                        if (! keep_going)
                            return false;
                    }
                return true;
            }

        public:
            Search(const Structure & a, const Structure & b, const HomMode & mode, bool lexicographic) :
                _a(a),
                _b(b),
                _mode(mode),
                _n(a.size()),
                _m(b.size()),
                _words(std::max(1u, (b.size() + 63) / 64)),
                _lexicographic(lexicographic)
            {
                require_same_signature(a.signature_ptr(), b.signature_ptr(), "homomorphism search");
                _constraints_of.resize(_n);
                _degree.assign(_n, 0);
                for (SymbolId r = 0; r < a.signature().size(); ++r)
                    for (auto t : a.relation(r)) {
                        bool repeated = false;
                        for (unsigned i = 0; i < t.size(); ++i)
                            for (unsigned j = i + 1; j < t.size(); ++j)
                                repeated = repeated || t[i] == t[j];
                        unsigned id = _constraints.size();
                        _constraints.push_back({r, t, repeated});
                        for (unsigned i = 0; i < t.size(); ++i) {
                            if (i == 0 || std::find(t.begin(), t.begin() + i, t[i]) == t.begin() + i)
                                _constraints_of[t[i]].push_back(id);
                            ++_degree[t[i]];
                        }
                    }
                _queued.assign(_constraints.size(), false);

                if (mode.kind == HomKind::injective) {
                    _injective = true;
                    _partners.resize(_n);
                    if (mode.partial.separated) {
                        for (auto & [x, y] : *mode.partial.separated)
                            if (x != y && x < _n && y < _n) {
                                _partners[x].push_back(y);
                                _partners[y].push_back(x);
                            }
                        for (auto & p : _partners) {
                            std::sort(p.begin(), p.end());
                            p.erase(std::unique(p.begin(), p.end()), p.end());
                        }
                    }
                    else
                        for (Element x = 0; x < _n; ++x)
                            for (Element y = 0; y < _n; ++y)
                                if (x != y)
                                    _partners[x].push_back(y);
                }

                if (mode.kind == HomKind::full) {
                    _full = true;
                    for (auto & f : mode.partial.free_tuples)
                        _free.insert({f.symbol, f.tuple});
                    for (SymbolId r = 0; r < a.signature().size(); ++r) {
                        if (a.signature()[r].arity != 2 || b.relation(r).empty())
                            continue;
                        _binary.push_back(r);
                        std::vector<Word> out(_m * _words, 0), in(_m * _words, 0);
                        for (auto u : b.relation(r)) {
                            out[u[0] * _words + u[1] / 64] |= Word{1} << (u[1] % 64);
                            in[u[1] * _words + u[0] / 64] |= Word{1} << (u[0] % 64);
                        }
                        _out.push_back(std::move(out));
                        _in.push_back(std::move(in));
                    }
                }

                _levels.assign((_n + 1) * std::max(1u, _n) * _words, 0);
                _assignment.assign(_n, 0);
                _assigned.assign(_n, false);
            }

            // Values outside `allowed` (when given) are removed up front.
            template <typename Visit_>
            auto run(Visit_ & visit, const std::vector<bool> * allowed = nullptr) -> bool
            {
                if (_n == 0) {
                    Homomorphism h;
                    return visit(h);
                }
                if (_m == 0)
                    return true;
                if (_injective && ! _mode.partial.separated && _n > _m)
                    return true;

                for (Element v = 0; v < _n; ++v) {
                    Word * d = dom(0, v);
                    for (Element e = 0; e < _m; ++e)
                        if (! allowed || (*allowed)[e])
                            d[e / 64] |= Word{1} << (e % 64);
                    if (empty(d))
                        return true;
                }
                for (unsigned c = 0; c < _constraints.size(); ++c) {
                    _queued[c] = true;
                    _queue.push_back(c);
                }
                if (! propagate(0))
                    return true;
                return solve(0, visit);
            }
        };

        auto find_one(const Structure & a, const Structure & b, const HomMode & mode, const std::vector<bool> * allowed)
            -> std::optional<Homomorphism>
        {
            std::optional<Homomorphism> result;
            auto visit = [&](const Homomorphism & h) {
                result = h;
                return false;
            };
            Search(a, b, mode, false).run(visit, allowed);
            return result;
        }

        // one endomorphism missing some element, if any
        auto shrinking_endomorphism(const Structure & s) -> std::optional<Homomorphism>
        {
            std::vector<bool> allowed(s.size(), true);
            HomMode plain;
            for (Element v = 0; v < s.size(); ++v) {
                allowed[v] = false;
                auto h = find_one(s, s, plain, &allowed);
                allowed[v] = true;
                if (h)
                    return h;
            }
            return std::nullopt;
        }
    }

    auto hom_exists(const Structure & source, const Structure & target, const HomMode & mode)
        -> std::optional<Homomorphism>
    {
        return find_one(source, target, mode, nullptr);
    }

    auto maps_to(const Structure & source, const Structure & target, const HomMode & mode) -> bool
    {
        return hom_exists(source, target, mode).has_value();
    }

    auto for_each_hom(const Structure & source, const Structure & target, const HomMode & mode,
        const std::function<bool(const Homomorphism &)> & visit) -> bool
    {
        auto v = [&](const Homomorphism & h) { return visit(h); };
        return Search(source, target, mode, true).run(v);
    }

    auto all_homs(const Structure & source, const Structure & target, const HomMode & mode)
        -> std::vector<Homomorphism>
    {
        std::vector<Homomorphism> result;
        auto visit = [&](const Homomorphism & h) {
            result.push_back(h);
            return true;
        };
        Search(source, target, mode, true).run(visit);
        return result;
    }

    auto core_of(const Structure & s) -> Structure
    {
        Structure current = s;
        while (auto h = shrinking_endomorphism(current)) {
            std::vector<Element> hit(h->map);
            std::sort(hit.begin(), hit.end());
            hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
            current = induced(current, hit);
        }
        return current;
    }

    auto is_core(const Structure & s) -> bool
    {
        return ! shrinking_endomorphism(s);
    }

    auto hom_images(const Structure & s, unsigned max_elements) -> std::vector<Structure>
    {
        unsigned n = s.size();
        if (n > max_elements)
            throw GuardExceeded("hom_images: " + std::to_string(n) + " elements exceeds the limit of " +
                std::to_string(max_elements));

        std::vector<Structure> result;
        std::set<std::vector<unsigned>> seen;
        // restricted growth strings enumerate set partitions; all-distinct first gives s itself
        std::vector<Element> block(n, 0);
        auto emit = [&]() {
            auto img = image_onto(s, block);
            if (seen.insert(canonical_code(img)).second)
                result.push_back(std::move(img));
        };
        if (n == 0) {
            result.push_back(s);
            return result;
        }
        {
            std::vector<Element> identity(n);
            for (Element e = 0; e < n; ++e)
                identity[e] = e;
            block = identity;
            emit();
        }
        std::vector<Element> rgs(n, 0), max_prefix(n, 0);
        while (true) {
            block = rgs;
            emit();
            // next restricted growth string
            int i = n - 1;
            while (i > 0 && rgs[i] == max_prefix[i - 1] + 1)
                --i;
            if (i <= 0)
                break;
            ++rgs[i];
            max_prefix[i] = std::max(max_prefix[i - 1], rgs[i]);
            for (unsigned j = i + 1; j < n; ++j) {
                rgs[j] = 0;
                max_prefix[j] = max_prefix[i];
            }
        }
        return result;
    }

    auto hom_equivalent(const Structure & a, const Structure & b) -> bool
    {
        return maps_to(a, b) && maps_to(b, a);
    }
}
