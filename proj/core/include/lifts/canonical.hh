#pragma once

#include <lifts/structure.hh>

#include <vector>

namespace lifts
{
    /**
     * A labelling-independent code for a structure: equal codes iff the
     * structures are isomorphic (over the same signature). Computed by
     * colour refinement plus an individualisation search tree with
     * automorphism pruning.
     */
    struct CanonicalForm
    {
        std::vector<Element> labelling; ///< element e of the input becomes labelling[e]
        std::vector<unsigned> code;
    };

    auto canonical_form(const Structure & s) -> CanonicalForm;

    auto canonical_code(const Structure & s) -> std::vector<unsigned>;

    /// relabel(s, canonical_form(s).labelling)
    auto canonical_structure(const Structure & s) -> Structure;

    auto isomorphic(const Structure & a, const Structure & b) -> bool;
}
