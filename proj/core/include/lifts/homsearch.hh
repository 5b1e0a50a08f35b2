#pragma once

#include <lifts/homomorphism.hh>
#include <lifts/structure.hh>

#include <functional>
#include <optional>
#include <vector>

namespace lifts
{
    /// A witness for `mode`, or nothing. Deterministic for fixed inputs.
    auto hom_exists(const Structure & source, const Structure & target, const HomMode & mode = {})
        -> std::optional<Homomorphism>;

    auto maps_to(const Structure & source, const Structure & target, const HomMode & mode = {}) -> bool;

    /**
     * Calls `visit` on every homomorphism in lexicographic map order until
     * it returns false. Returns false iff stopped early.
     */
    auto for_each_hom(const Structure & source, const Structure & target, const HomMode & mode,
        const std::function<bool(const Homomorphism &)> & visit) -> bool;

    auto all_homs(const Structure & source, const Structure & target, const HomMode & mode = {})
        -> std::vector<Homomorphism>;

    /// An induced substructure that is a core and hom-equivalent to s.
    auto core_of(const Structure & s) -> Structure;

    auto is_core(const Structure & s) -> bool;

    /**
     * Every image of s under a surjective map, one per isomorphism class,
     * s itself first. Throws GuardExceeded when s has more than
     * max_elements elements.
     */
    auto hom_images(const Structure & s, unsigned max_elements = 10) -> std::vector<Structure>;

    auto hom_equivalent(const Structure & a, const Structure & b) -> bool;
}
