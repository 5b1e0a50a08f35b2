#pragma once

#include <lifts/signature.hh>
#include <lifts/structure.hh>

#include <cstdint>
#include <functional>

namespace lifts
{
    struct EnumerationOptions
    {
        bool up_to_isomorphism = true;
        unsigned min_size = 0;

        /// A property closed under removing tuples. When it fails, no structure
        /// with more tuples on the same universe is visited.
        std::function<bool(const Structure &)> hereditary;
    };

    /**
     * Visit every structure over `sig` with min_size..max_size elements,
     * each isomorphism class exactly once when up_to_isomorphism is set
     * (orderly generation). `visit` returns false to stop early; the
     * return value is false iff it did. Throws GuardExceeded when a
     * universe size has more than 64 candidate tuples.
     */
    auto enumerate_structures(const SignaturePtr & sig, unsigned max_size,
        const std::function<bool(const Structure &)> & visit, const EnumerationOptions & options = {}) -> bool;

    auto all_structures(const SignaturePtr & sig, unsigned max_size, const EnumerationOptions & options = {})
        -> std::vector<Structure>;

    /// Number of candidate tuples on an n-element universe: sum over symbols of n^arity.
    auto candidate_tuple_count(const Signature & sig, unsigned n) -> std::uint64_t;
}
