#pragma once

#include <lifts/homomorphism.hh>
#include <lifts/lift.hh>
#include <lifts/structure.hh>

#include <span>
#include <vector>

namespace lifts
{
    /// Forget the lifted relations.
    auto shadow(const Structure & lifted) -> Structure;
    auto shadow(const Lift & lift) -> Structure;

    /**
     * Pull the lifted relations of `target` back along f: each lifted R
     * becomes f^-1(R). Throws PreconditionViolated unless f is a plain
     * homomorphism source -> shadow(target).
     */
    auto pullback_lift(const Structure & source, const Homomorphism & f, const Lift & target) -> Lift;

    /// Categorical product; element (a, b) is numbered a * |B| + b.
    auto product(const Structure & a, const Structure & b) -> Structure;

    /// Universes side by side, A first.
    auto disjoint_union(const Structure & a, const Structure & b) -> Structure;
    auto disjoint_union(const Lift & a, const Lift & b) -> Lift;

    /// Substructure induced on `elements`, renumbered in the given order.
    auto induced(const Structure & s, std::span<const Element> elements) -> Structure;

    /// The image f(s): universe = 0..image_size-1, tuples mapped through f.
    auto image(const Structure & s, std::span<const Element> f, unsigned image_size) -> Structure;

    /// The image of s under f, restricted to the elements f actually hits, renumbered in increasing order.
    auto image_onto(const Structure & s, std::span<const Element> f) -> Structure;

    /// Renumber: element e of s becomes perm[e].
    auto relabel(const Structure & s, std::span<const Element> perm) -> Structure;

    /// One element carrying every possible tuple: the terminal object.
    auto all_loops_point(const SignaturePtr & signature) -> Structure;
    auto empty_structure(const SignaturePtr & signature) -> Structure;

    /// The same universe and relations reinterpreted over an equal signature object.
    auto rebind(const Structure & s, const SignaturePtr & signature) -> Structure;

    /// Drop every tuple mentioning an element outside `keep`, keep the universe.
    auto restrict_tuples_to(const Structure & s, std::span<const Element> keep) -> Structure;
}
