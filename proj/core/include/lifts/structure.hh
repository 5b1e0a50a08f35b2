#pragma once

#include <lifts/signature.hh>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lifts
{
    using Element = unsigned;
    using Tuple = std::vector<Element>;

    /// A set of equal-length tuples, stored flat and sorted lexicographically.
    class Relation
    {
    private:
        unsigned _arity;
        std::vector<Element> _data;

        friend class StructureBuilder;

    public:
        class Iterator
        {
        private:
            const Element * _at;
            unsigned _arity;

        public:
            using value_type = std::span<const Element>;
            using difference_type = std::ptrdiff_t;

            Iterator() = default;
            Iterator(const Element * at, unsigned arity) : _at(at), _arity(arity) {}

            auto operator*() const -> std::span<const Element> { return {_at, _arity}; }
            auto operator++() -> Iterator & { _at += _arity; return *this; }
            auto operator++(int) -> Iterator { auto r = *this; _at += _arity; return r; }
            auto operator==(const Iterator & o) const -> bool { return _at == o._at; }
        };

        explicit Relation(unsigned arity = 1) : _arity(arity) {}

        auto arity() const -> unsigned { return _arity; }
        auto size() const -> std::size_t { return _data.size() / _arity; }
        auto empty() const -> bool { return _data.empty(); }
        auto operator[](std::size_t i) const -> std::span<const Element> { return {_data.data() + i * _arity, _arity}; }
        auto begin() const -> Iterator { return {_data.data(), _arity}; }
        auto end() const -> Iterator { return {_data.data() + _data.size(), _arity}; }
        auto flat() const -> const std::vector<Element> & { return _data; }

        auto contains(std::span<const Element> tuple) const -> bool;
        auto index_of(std::span<const Element> tuple) const -> std::ptrdiff_t; ///< -1 when absent

        auto operator==(const Relation &) const -> bool = default;
        auto operator<=>(const Relation &) const = default;
    };

    /**
     * A finite relational structure. The universe is always 0..size()-1;
     * element names survive only as metadata for printing. Immutable once
     * built: construct through StructureBuilder.
     */
    class Structure
    {
    private:
        SignaturePtr _signature;
        unsigned _size = 0;
        std::vector<Relation> _relations;
        std::vector<std::string> _names;

        friend class StructureBuilder;

    public:
        /// An empty structure over the empty signature.
        Structure();

        auto signature() const -> const Signature & { return *_signature; }
        auto signature_ptr() const -> const SignaturePtr & { return _signature; }
        auto size() const -> unsigned { return _size; }
        auto relation(SymbolId s) const -> const Relation & { return _relations[s]; }
        auto relations() const -> const std::vector<Relation> & { return _relations; }
        auto tuple_count() const -> std::size_t;
        auto has(SymbolId s, std::span<const Element> tuple) const -> bool { return _relations[s].contains(tuple); }
        auto has(SymbolId s, std::initializer_list<Element> tuple) const -> bool
        {
            return _relations[s].contains(std::span<const Element>(tuple.begin(), tuple.size()));
        }

        auto element_name(Element e) const -> std::string;
        auto names() const -> const std::vector<std::string> & { return _names; }
        auto has_names() const -> bool { return ! _names.empty(); }

        /// Same signature, universe size and relations. Names are ignored.
        auto operator==(const Structure & other) const -> bool;

        /// A strict weak order on (size, relations) usable for sorting and maps.
        auto operator<(const Structure & other) const -> bool;
    };

    class StructureBuilder
    {
    private:
        SignaturePtr _signature;
        unsigned _size;
        std::vector<std::vector<Element>> _data;
        std::vector<std::string> _names;

    public:
        StructureBuilder(SignaturePtr signature, unsigned size);

        /// Throws PreconditionViolated on an arity mismatch or an out-of-range coordinate.
        auto add(SymbolId symbol, std::span<const Element> tuple) -> StructureBuilder &;
        auto add(SymbolId symbol, std::initializer_list<Element> tuple) -> StructureBuilder &
        {
            return add(symbol, std::span<const Element>(tuple.begin(), tuple.size()));
        }

        /// Copy every tuple of `s` (same signature) mapped through `map`.
        auto add_image(const Structure & s, std::span<const Element> map) -> StructureBuilder &;

        auto set_names(std::vector<std::string> names) -> StructureBuilder &;
        auto size() const -> unsigned { return _size; }
        auto signature_ptr() const -> const SignaturePtr & { return _signature; }

        /// Sorts and merges duplicate tuples.
        auto build() && -> Structure;
    };
}
