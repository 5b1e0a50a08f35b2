#pragma once

#include <lifts/structure.hh>

#include <optional>
#include <string>
#include <vector>

namespace lifts
{
    struct TupleRef
    {
        SymbolId symbol;
        Tuple tuple;

        auto operator==(const TupleRef &) const -> bool = default;
    };

    /// x_0, r_1, x_1, ..., r_t with x_t = x_0: points[i] lies in tuples[i] and tuples[i+1 mod t].
    struct Cycle
    {
        std::vector<Element> points;
        std::vector<TupleRef> tuples;

        auto length() const -> unsigned { return tuples.size(); }
    };

    auto describe(const Cycle & c, const Structure & s) -> std::string;

    /// Length of a shortest cycle; nothing when s is a forest.
    auto girth(const Structure & s) -> std::optional<unsigned>;

    auto shortest_cycle(const Structure & s) -> std::optional<Cycle>;

    /// Some cycle of length at most max_length, preferring short ones; bounded search.
    auto cycle_at_most(const Structure & s, unsigned max_length) -> std::optional<Cycle>;

    auto is_forest(const Structure & s) -> bool;

    auto is_connected(const Structure & s) -> bool;

    /// A substructure together with the original ids of its elements (renumbered in this order).
    struct Piece
    {
        Structure structure;
        std::vector<Element> elements;
    };

    /// Induced components, ordered by smallest element. Isolated elements are their own components.
    auto connected_components(const Structure & s) -> std::vector<Piece>;

    /**
     * Blocks: maximal substructures without a cut point. Each tuple lies in
     * exactly one block and a block carries only its own tuples. Elements in
     * no tuple become trivial single-element blocks, listed last.
     */
    auto biconnected_components(const Structure & s) -> std::vector<Piece>;

    /// Whether a piece is one of the trivial single-element blocks.
    auto is_trivial_block(const Piece & p) -> bool;
}
