#include <lifts/enumerate.hh>
#include <lifts/errors.hh>

#include <algorithm>
#include <bit>
#include <numeric>

namespace lifts
{
    namespace
    {
        struct Candidate
        {
            SymbolId symbol;
            Tuple tuple;
        };

        class Generator
        {
        private:
            const SignaturePtr & _sig;
            unsigned _n;
            const std::function<bool(const Structure &)> & _visit;
            const EnumerationOptions & _options;

            std::vector<Candidate> _candidates;
            std::vector<std::vector<unsigned>> _perm_tables; // [perm][candidate] -> candidate

        public:
            Generator(const SignaturePtr & sig, unsigned n, const std::function<bool(const Structure &)> & visit,
                const EnumerationOptions & options) :
                _sig(sig),
                _n(n),
                _visit(visit),
                _options(options)
            {
                for (SymbolId r = 0; r < sig->size(); ++r) {
                    unsigned k = (*sig)[r].arity;
                    Tuple t(k, 0);
                    if (n == 0)
                        continue;
                    while (true) {
                        _candidates.push_back({r, t});
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
                if (_candidates.size() > 64)
                    throw GuardExceeded("enumeration: " + std::to_string(_candidates.size()) +
                        " candidate tuples on " + std::to_string(n) + " elements (limit 64)");

                if (options.up_to_isomorphism && n > 1) {
                    std::vector<Element> perm(n);
                    std::iota(perm.begin(), perm.end(), 0);
                    // skip the identity
                    while (std::next_permutation(perm.begin(), perm.end())) {
                        std::vector<unsigned> table(_candidates.size());
                        for (unsigned c = 0; c < _candidates.size(); ++c) {
                            Tuple image;
                            for (auto e : _candidates[c].tuple)
                                image.push_back(perm[e]);
                            table[c] = index_of(_candidates[c].symbol, image);
                        }
                        _perm_tables.push_back(std::move(table));
                    }
                }
            }

            auto index_of(SymbolId r, const Tuple & t) const -> unsigned
            {
                unsigned offset = 0;
                for (SymbolId s = 0; s < r; ++s) {
                    unsigned count = 1;
                    for (unsigned i = 0; i < (*_sig)[s].arity; ++i)
                        count *= _n;
                    offset += count;
                }
                unsigned within = 0;
                for (auto e : t)
                    within = within * _n + e;
                return offset + within;
            }

            // Bit c of the code is the candidate at position c, the most significant
            // position first: canonical means maximal code over all relabellings.
            auto code_bit(unsigned c) const -> std::uint64_t { return std::uint64_t{1} << (63 - c); }

            auto canonical(std::uint64_t mask) const -> bool
            {
                for (auto & table : _perm_tables) {
                    std::uint64_t image = 0;
                    for (auto m = mask; m; m &= m - 1) {
                        unsigned c = 63 - std::countr_zero(m);
                        image |= code_bit(table[c]);
                    }
                    if (image > mask)
                        return false;
                }
                return true;
            }

            auto build(std::uint64_t mask) const -> Structure
            {
                StructureBuilder b(_sig, _n);
                for (auto m = mask; m; m &= m - 1) {
                    unsigned c = 63 - std::countr_zero(m);
                    b.add(_candidates[c].symbol, _candidates[c].tuple);
                }
                return std::move(b).build();
            }

            // Children add candidates beyond the last one present.
            auto dfs(std::uint64_t mask, unsigned next) -> bool
            {
                auto s = build(mask);
                if (_options.hereditary && ! _options.hereditary(s))
                    return true;
                if (! _visit(s))
                    return false;
                for (unsigned c = next; c < _candidates.size(); ++c) {
                    auto child = mask | code_bit(c);
                    if (_options.up_to_isomorphism && ! canonical(child))
                        continue;
                    if (! dfs(child, c + 1))
                        return false;
                }
                return true;
            }

            auto run() -> bool
            {
                return dfs(0, 0);
            }
        };
    }

    auto candidate_tuple_count(const Signature & sig, unsigned n) -> std::uint64_t
    {
        std::uint64_t total = 0;
        for (auto & s : sig.symbols()) {
            std::uint64_t count = 1;
            for (unsigned i = 0; i < s.arity; ++i)
                count *= n;
            total += count;
        }
        return total;
    }

    auto enumerate_structures(const SignaturePtr & sig, unsigned max_size,
        const std::function<bool(const Structure &)> & visit, const EnumerationOptions & options) -> bool
    {
        if (max_size >= options.min_size && candidate_tuple_count(*sig, max_size) > 64)
            throw GuardExceeded("enumeration: " + std::to_string(candidate_tuple_count(*sig, max_size)) +
                " candidate tuples at size " + std::to_string(max_size) + " (at most 64 supported)");
        for (unsigned n = options.min_size; n <= max_size; ++n) {
            Generator g(sig, n, visit, options);
            if (! g.run())
                return false;
        }
        return true;
    }

    auto all_structures(const SignaturePtr & sig, unsigned max_size, const EnumerationOptions & options)
        -> std::vector<Structure>
    {
        std::vector<Structure> result;
        enumerate_structures(sig, max_size, [&](const Structure & s) {
            result.push_back(s);
            return true;
        }, options);
        return result;
    }
}
