#pragma once

#include <lifts/signature.hh>
#include <lifts/structure.hh>

#include <optional>
#include <vector>

namespace lifts
{
    struct DualityLimits
    {
        unsigned max_dual_elements = 1u << 16; ///< before core reduction
        unsigned long long max_candidate_tuples = 1ull << 24;
        unsigned max_choices = 1u << 12;       ///< component choices in a family dual
    };

    /**
     * A core D with: A -> D iff tree ↛ A, for every A over the same
     * signature. Throws PreconditionViolated unless `tree` is a connected
     * forest with at least one element, and GuardExceeded past the limits.
     */
    auto tree_dual(const Structure & tree, const DualityLimits & limits = {}) -> Structure;

    /**
     * Templates whose CSPs together cover exactly the structures admitting
     * no homomorphism from any obstruction. Pairwise incomparable cores.
     * An empty family gives the all-loops point; an obstruction with no
     * elements gives no templates.
     */
    auto forest_family_duals(const SignaturePtr & sig, const std::vector<Structure> & obstructions,
        const DualityLimits & limits = {}) -> std::vector<Structure>;

    struct DualityCheck
    {
        bool holds = true;
        std::optional<Structure> counterexample;
    };

    /// Exhaustive over all structures with at most max_size elements, up to isomorphism.
    auto verify_duality(const SignaturePtr & sig, const std::vector<Structure> & obstructions,
        const std::vector<Structure> & templates, unsigned max_size) -> DualityCheck;

    /// Keep the cores of `templates` that map into no other member (one per equivalence class).
    auto prune_templates(std::vector<Structure> templates) -> std::vector<Structure>;
}
