#pragma once

#include <lifts/duality.hh>
#include <lifts/family.hh>
#include <lifts/lift.hh>

#include <optional>
#include <string>
#include <vector>

namespace lifts
{
    struct FpLimits
    {
        double max_search_bits = 48;     ///< log2 of the number of colourings fp_membership may explore
        unsigned max_image_elements = 9; ///< patterns larger than this are not closed under images
        unsigned max_expansion = 1u << 14;
        DualityLimits duality;
    };

    /**
     * A partition lift of A admitting no pattern in the family's matching
     * kind, or nothing when every partition lift admits one. Throws
     * GuardExceeded when the colouring space is too large.
     */
    auto fp_membership(const Structure & a, const PatternFamily & family, const FpLimits & limits = {})
        -> std::optional<Lift>;

    /// Whether no pattern maps into `lift` (the family's matching kind and constraints).
    auto avoids_patterns(const Structure & lift, const PatternFamily & family) -> bool;

    /// Each monadic pattern with one colour per element: uncoloured elements take each colour in turn,
    /// patterns with a multi-coloured element are dropped.
    auto partition_patterns(const PatternFamily & family, const FpLimits & limits = {}) -> std::vector<Structure>;

    /// Whether some r-tuple of `pattern` carries two lifted classes, so it never matches a partition lift.
    auto is_vacuous_pattern(const Structure & pattern) -> bool;

    /**
     * Plain monadic families only. Every pattern becomes a partition pattern
     * (uncoloured elements take each colour in turn; multi-coloured elements
     * make a pattern vacuous), the set is closed under homomorphic images,
     * reduced to cores, and cut down to its hom-minimal members.
     */
    auto normalize_family(const PatternFamily & family, const FpLimits & limits = {}) -> PatternFamily;

    /// Pairwise disjoint unions: the language of the result is the union of both languages. Monadic families
    /// with different colours are first moved to the union of both colour sets, each forbidding the colours it lacks.
    auto union_families(const PatternFamily & a, const PatternFamily & b) -> PatternFamily;

    /// An equivalent constraint-free family in pure injective or full matching.
    auto expand_partial_constraints(const PatternFamily & family, const FpLimits & limits = {}) -> PatternFamily;

    enum class Verdict
    {
        finite_union_csp,
        not_finite_union
    };

    auto to_string(Verdict) -> std::string;

    struct DecisionOutcome
    {
        Verdict verdict = Verdict::finite_union_csp;
        std::vector<Structure> templates;  ///< over the input signature, when known
        bool templates_known = false;
        std::optional<Lift> witness;       ///< a normalized pattern whose core has a cycle
        std::string note;
        PatternFamily normalized;
    };

    auto decide_finite_union_csp(const PatternFamily & family, const FpLimits & limits = {}) -> DecisionOutcome;

    /// Exhaustive over input structures with at most max_size elements, up to isomorphism.
    auto verify_shadow_duality(const PatternFamily & family, const std::vector<Structure> & templates,
        unsigned max_size, const FpLimits & limits = {}) -> DualityCheck;
}
