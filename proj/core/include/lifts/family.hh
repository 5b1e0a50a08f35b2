#pragma once

#include <lifts/homomorphism.hh>
#include <lifts/lift.hh>
#include <lifts/signature.hh>
#include <lifts/snp.hh>

#include <string>
#include <string_view>
#include <vector>

namespace lifts
{
    /**
     * A finite set of forbidden lifts over input plus lifted symbols,
     * matched in one homomorphism kind. Optional per-pattern partial
     * constraints refine injective or full matching.
     */
    struct PatternFamily
    {
        SignaturePtr signature;
        unsigned lift_arity = 1;
        HomKind mode = HomKind::plain;
        std::vector<Lift> patterns;
        std::vector<PartialConstraints> constraints; ///< empty, or one entry per pattern
        std::vector<std::string> names;              ///< empty, or one entry per pattern

        auto input_signature() const -> SignaturePtr { return signature->base(); }
        auto hom_mode(std::size_t pattern) const -> HomMode;
        auto has_partial_constraints() const -> bool;
        auto colours() const -> std::vector<SymbolId> { return signature->lifted_symbols(); }
        auto pattern_name(std::size_t pattern) const -> std::string;
    };

    /// Wraps structures over `sig` as patterns; each pattern's cover mode is detected.
    auto make_family(const SignaturePtr & sig, const std::vector<Structure> & patterns, HomKind mode = HomKind::plain)
        -> PatternFamily;

    /// A structure document whose structures are the patterns, plus mode and constraints lines.
    auto parse_family(std::string_view text) -> PatternFamily;

    auto write_family(const PatternFamily & family) -> std::string;

    /// Monotone, inequality-free formulas: one lifted symbol per subset of proof symbols, plain matching.
    auto to_lifts_general(const SnpFormula & phi, const SnpLimits & limits = {}) -> PatternFamily;

    /// Monotone monadic formulas: unary lifted symbols, injective matching.
    auto to_lifts_injective(const SnpFormula & phi, const SnpLimits & limits = {}) -> PatternFamily;

    /// Monadic inequality-free formulas: full matching; undecided input atoms become free tuples.
    auto to_lifts_full(const SnpFormula & phi, const SnpLimits & limits = {}) -> PatternFamily;
}
