#pragma once

#include <lifts/structure.hh>

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace lifts
{
    enum class HomKind
    {
        plain,
        injective,
        full
    };

    auto to_string(HomKind) -> std::string_view;
    auto parse_hom_kind(std::string_view) -> std::optional<HomKind>;

    struct FreeTuple
    {
        SymbolId symbol;
        Tuple tuple;

        auto operator==(const FreeTuple &) const -> bool = default;
        auto operator<=>(const FreeTuple &) const = default;
    };

    /**
     * Partial variants of injective and full morphisms. For injective
     * kinds, `separated` (when set) lists the only pairs that may not
     * collapse; unset means every pair. For full kinds, `free_tuples` are
     * non-tuples of the source that carry no polarity condition.
     */
    struct PartialConstraints
    {
        std::optional<std::vector<std::pair<Element, Element>>> separated;
        std::vector<FreeTuple> free_tuples;

        auto empty() const -> bool { return ! separated && free_tuples.empty(); }
        auto operator==(const PartialConstraints &) const -> bool = default;
    };

    struct HomMode
    {
        HomKind kind = HomKind::plain;
        PartialConstraints partial;

        HomMode() = default;
        HomMode(HomKind k) : kind(k) {}
        HomMode(HomKind k, PartialConstraints p) : kind(k), partial(std::move(p)) {}
    };

    struct Homomorphism
    {
        std::vector<Element> map;

        auto operator()(Element e) const -> Element { return map[e]; }
        auto operator==(const Homomorphism &) const -> bool = default;
        auto operator<=>(const Homomorphism &) const = default;
    };

    /// Independent check of every invariant `mode` imposes on `map: source -> target`.
    auto is_homomorphism(const Structure & source, const Structure & target, std::span<const Element> map,
        const HomMode & mode = {}) -> bool;

    auto compose(const Homomorphism & first, const Homomorphism & second) -> Homomorphism;
}
