#include <lifts/errors.hh>
#include <lifts/structure.hh>

#include <algorithm>
#include <numeric>

namespace lifts
{
    namespace
    {
        auto empty_signature() -> const SignaturePtr &
        {
            static const SignaturePtr sig = Signature::make({}, "empty");
            return sig;
        }

        auto sort_flat(std::vector<Element> & data, unsigned arity) -> void
        {
            std::size_t count = data.size() / arity;
            if (count < 2)
                return;
            if (arity == 1) {
                std::sort(data.begin(), data.end());
                data.erase(std::unique(data.begin(), data.end()), data.end());
                return;
            }
            if (arity == 2) {
                std::vector<std::pair<Element, Element>> pairs(count);
                for (std::size_t i = 0; i < count; ++i)
                    pairs[i] = {data[2 * i], data[2 * i + 1]};
                std::sort(pairs.begin(), pairs.end());
                pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
                data.resize(pairs.size() * 2);
                for (std::size_t i = 0; i < pairs.size(); ++i) {
                    data[2 * i] = pairs[i].first;
                    data[2 * i + 1] = pairs[i].second;
                }
                return;
            }

            std::vector<std::size_t> order(count);
            std::iota(order.begin(), order.end(), 0);
            auto less = [&](std::size_t a, std::size_t b) {
                return std::lexicographical_compare(data.begin() + a * arity, data.begin() + (a + 1) * arity,
                    data.begin() + b * arity, data.begin() + (b + 1) * arity);
            };
            auto equal = [&](std::size_t a, std::size_t b) {
                return std::equal(data.begin() + a * arity, data.begin() + (a + 1) * arity, data.begin() + b * arity);
            };
            std::sort(order.begin(), order.end(), less);
            std::vector<Element> sorted;
            sorted.reserve(data.size());
            for (std::size_t i = 0; i < count; ++i) {
                if (i > 0 && equal(order[i], order[i - 1]))
                    continue;
                sorted.insert(sorted.end(), data.begin() + order[i] * arity, data.begin() + (order[i] + 1) * arity);
            }
            data = std::move(sorted);
        }
    }

    auto Relation::index_of(std::span<const Element> tuple) const -> std::ptrdiff_t
    {
        std::size_t lo = 0, hi = size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            auto at = _data.begin() + mid * _arity;
            auto cmp = std::lexicographical_compare_three_way(at, at + _arity, tuple.begin(), tuple.end());
            if (cmp == 0)
                return mid;
            if (cmp < 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        return -1;
    }

    auto Relation::contains(std::span<const Element> tuple) const -> bool
    {
        if (tuple.size() != _arity)
            return false;
        if (_arity == 1)
            return std::binary_search(_data.begin(), _data.end(), tuple[0]);
        return index_of(tuple) >= 0;
    }

    Structure::Structure() :
        _signature(empty_signature())
    {
    }

    auto Structure::tuple_count() const -> std::size_t
    {
        std::size_t result = 0;
        for (auto & r : _relations)
            result += r.size();
        return result;
    }

    auto Structure::element_name(Element e) const -> std::string
    {
        if (e < _names.size())
            return _names[e];
        return std::to_string(e);
    }

    auto Structure::operator==(const Structure & other) const -> bool
    {
        return _size == other._size && same_signature(_signature, other._signature) && _relations == other._relations;
    }

    auto Structure::operator<(const Structure & other) const -> bool
    {
        if (_size != other._size)
            return _size < other._size;
        return _relations < other._relations;
    }

    StructureBuilder::StructureBuilder(SignaturePtr signature, unsigned size) :
        _signature(std::move(signature)),
        _size(size),
        _data(_signature->size())
    {
    }

    auto StructureBuilder::add(SymbolId symbol, std::span<const Element> tuple) -> StructureBuilder &
    {
        if (symbol >= _signature->size())
            throw PreconditionViolated("unknown symbol id " + std::to_string(symbol));
        auto & sym = (*_signature)[symbol];
        if (tuple.size() != sym.arity)
            throw PreconditionViolated("tuple of length " + std::to_string(tuple.size()) + " for " + sym.name + "/" +
                std::to_string(sym.arity));
        for (auto e : tuple)
            if (e >= _size)
                throw PreconditionViolated("coordinate " + std::to_string(e) + " outside universe of size " +
                    std::to_string(_size));
        _data[symbol].insert(_data[symbol].end(), tuple.begin(), tuple.end());
        return *this;
    }

    auto StructureBuilder::add_image(const Structure & s, std::span<const Element> map) -> StructureBuilder &
    {
        if (! same_signature(s.signature_ptr(), _signature))
            throw SignatureMismatch("add_image: signatures differ");
        for (SymbolId r = 0; r < _signature->size(); ++r) {
            auto & rel = s.relation(r);
            auto & out = _data[r];
            for (auto e : rel.flat()) {
                if (map[e] >= _size)
                    throw PreconditionViolated("add_image: map leaves the universe");
                out.push_back(map[e]);
            }
        }
        return *this;
    }

    auto StructureBuilder::set_names(std::vector<std::string> names) -> StructureBuilder &
    {
        if (! names.empty() && names.size() != _size)
            throw PreconditionViolated("name list does not match universe size");
        _names = std::move(names);
        return *this;
    }

    auto StructureBuilder::build() && -> Structure
    {
        Structure result;
        result._signature = std::move(_signature);
        result._size = _size;
        result._names = std::move(_names);
        result._relations.reserve(_data.size());
        for (SymbolId r = 0; r < _data.size(); ++r) {
            Relation rel((*result._signature)[r].arity);
            sort_flat(_data[r], rel._arity);
            rel._data = std::move(_data[r]);
            result._relations.push_back(std::move(rel));
        }
        return result;
    }
}
