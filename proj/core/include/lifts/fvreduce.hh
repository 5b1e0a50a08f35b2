#pragma once

#include <lifts/family.hh>
#include <lifts/fpdecide.hh>
#include <lifts/structure.hh>

#include <string>
#include <vector>

namespace lifts
{
    /**
     * One relation symbol per isomorphism class of blocks of the pattern
     * shadows; the symbol's arity is the block size and coordinate i of a
     * tuple stands for element i of the representative block. A single tuple
     * of each input symbol on distinct points is always present as well.
     */
    struct Basis
    {
        SignaturePtr input;
        std::vector<Structure> blocks;  ///< representatives over the input signature
        SignaturePtr beta;              ///< block symbols only
        SignaturePtr beta_lifted;       ///< block symbols plus the family's colours
        std::vector<SymbolId> colours;  ///< colour ids in the family signature, in beta_lifted order
    };

    auto build_basis(const PatternFamily & family) -> Basis;

    /// Same universe; a block tuple for every homomorphism from the block.
    auto psi(const Structure & a, const Basis & basis) -> Structure;

    /// Same universe; the union of the block images named by the tuples.
    auto theta(const Structure & b, const Basis & basis) -> Structure;

    /// psi and theta on lifts: colours ride along with the elements.
    auto psi_lift(const Structure & lifted, const Basis & basis, const PatternFamily & family) -> Structure;
    auto theta_lift(const Structure & lifted, const Basis & basis, const PatternFamily & family) -> Structure;

    struct GPrimeLimits
    {
        unsigned max_placements = 4096;
        unsigned long long max_nodes = 1u << 22;
    };

    /**
     * Forest lifts over the basis symbols and colours, each admitting a
     * colour-respecting homomorphism from some pattern into its theta image
     * with every element inside that image or in a block tuple meeting it.
     * Members receiving a homomorphism from another member are dropped.
     */
    auto build_gprime(const PatternFamily & family, const Basis & basis, const GPrimeLimits & limits = {},
        const FpLimits & fp_limits = {}) -> PatternFamily;

    /// Largest pattern size; 0 for an empty family.
    auto girth_threshold(const PatternFamily & family) -> unsigned;

    struct ForwardReduction
    {
        Basis basis;
        Structure image;              ///< psi of the input
        PatternFamily gprime;
        std::vector<Structure> templates;
        bool templates_known = false;
        std::string note;
    };

    auto reduce_forward(const Structure & a, const PatternFamily & family, const FpLimits & limits = {})
        -> ForwardReduction;

    /// theta(b); throws PreconditionViolated with a short cycle unless girth(b) exceeds the threshold.
    auto reduce_backward(const Structure & b, const PatternFamily & family, const Basis & basis) -> Structure;
}
