#include <lifts/errors.hh>
#include <lifts/homomorphism.hh>

#include <algorithm>

namespace lifts
{
    auto to_string(HomKind k) -> std::string_view
    {
        switch (k) {
        case HomKind::plain: return "plain";
        case HomKind::injective: return "injective";
        case HomKind::full: return "full";
        }
        return "?";
    }

    auto parse_hom_kind(std::string_view s) -> std::optional<HomKind>
    {
        if (s == "plain")
            return HomKind::plain;
        if (s == "injective")
            return HomKind::injective;
        if (s == "full")
            return HomKind::full;
        return std::nullopt;
    }

    auto is_homomorphism(const Structure & source, const Structure & target, std::span<const Element> map,
        const HomMode & mode) -> bool
    {
        if (! same_signature(source.signature_ptr(), target.signature_ptr()))
            return false;
        if (map.size() != source.size())
            return false;
        for (auto v : map)
            if (v >= target.size())
                return false;

        Tuple image;
        for (SymbolId r = 0; r < source.signature().size(); ++r)
            for (auto t : source.relation(r)) {
                image.assign(t.size(), 0);
                for (std::size_t i = 0; i < t.size(); ++i)
                    image[i] = map[t[i]];
                if (! target.has(r, image))
                    return false;
            }

        if (mode.kind == HomKind::injective) {
            if (mode.partial.separated) {
                for (auto & [a, b] : *mode.partial.separated)
                    if (a < map.size() && b < map.size() && a != b && map[a] == map[b])
                        return false;
            }
            else {
                std::vector<bool> used(target.size(), false);
                for (auto v : map) {
                    if (used[v])
                        return false;
                    used[v] = true;
                }
            }
        }

        if (mode.kind == HomKind::full) {
            // every non-tuple of the source must map to a non-tuple, except the free ones
            unsigned n = source.size();
            for (SymbolId r = 0; r < source.signature().size(); ++r) {
                unsigned k = source.signature()[r].arity;
                if (target.relation(r).empty() || n == 0)
                    continue;
                Tuple t(k, 0);
                image.assign(k, 0);
                while (true) {
                    if (! source.has(r, t)) {
                        bool free = std::any_of(mode.partial.free_tuples.begin(), mode.partial.free_tuples.end(),
                            [&](const FreeTuple & f) { return f.symbol == r && f.tuple == t; });
                        if (! free) {
                            for (unsigned i = 0; i < k; ++i)
                                image[i] = map[t[i]];
                            if (target.has(r, image))
                                return false;
                        }
                    }
                    unsigned i = k;
                    bool done = true;
                    while (i > 0) {
                        --i;
                        if (++t[i] < n) {
                            done = false;
                            break;
                        }
                        t[i] = 0;
                    }
                    if (done)
                        break;
                }
            }
        }
        return true;
    }

    auto compose(const Homomorphism & first, const Homomorphism & second) -> Homomorphism
    {
        Homomorphism result;
        result.map.reserve(first.map.size());
        for (auto v : first.map) {
            if (v >= second.map.size())
                throw PreconditionViolated("compose: maps do not chain");
            result.map.push_back(second.map[v]);
        }
        return result;
    }
}
