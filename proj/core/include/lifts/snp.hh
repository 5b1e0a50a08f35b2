#pragma once

#include <lifts/signature.hh>
#include <lifts/structure.hh>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lifts
{
    /// R(x, y, ...) or its negation; `symbol` indexes the input signature or the proof list.
    struct SnpAtom
    {
        SymbolId symbol;
        std::vector<unsigned> args; ///< clause variable ids
        bool negated = false;

        auto operator==(const SnpAtom &) const -> bool = default;
        auto operator<=>(const SnpAtom &) const = default;
    };

    /// NOT(input atoms & proof atoms & inequalities), universally quantified over its own variables.
    struct SnpClause
    {
        std::vector<std::string> variables;
        std::vector<SnpAtom> input;
        std::vector<SnpAtom> proof;
        std::vector<std::pair<unsigned, unsigned>> inequalities;

        auto operator==(const SnpClause &) const -> bool = default;
    };

    struct SnpFormula
    {
        std::string name;
        SignaturePtr input;
        std::vector<Symbol> proof;
        std::vector<SnpClause> clauses;
    };

    struct RestrictionReport
    {
        bool monotone = true;      ///< no negated input atoms
        bool monadic = true;       ///< every proof symbol is unary
        bool no_inequality = true; ///< no inequality atoms

        auto operator==(const RestrictionReport &) const -> bool = default;
    };

    auto restrictions(const SnpFormula & phi) -> RestrictionReport;

    struct SnpLimits
    {
        unsigned max_proof_atoms = 20;       ///< eval_snp searches 2^atoms assignments at most
        unsigned max_clauses = 1u << 14;     ///< primitivize and saturate_inequalities
    };

    /**
     * Grammar, one clause per line by convention:
     *
     *   snp name { input { E/2 } proof { P1/1 P2/1 }
     *     clause NOT( E(x,y) & NOT P1(y) & x != y )
     *   }
     */
    auto parse_snp(std::string_view text) -> SnpFormula;

    auto write_snp(const SnpFormula & phi) -> std::string;

    /// Whether some choice of proof relations on A satisfies every clause. Throws GuardExceeded.
    auto eval_snp(const SnpFormula & phi, const Structure & a, const SnpLimits & limits = {}) -> bool;

    /// Every clause decides every proof atom over its variables. Contradictory clauses are dropped.
    auto primitivize(const SnpFormula & phi, const SnpLimits & limits = {}) -> SnpFormula;

    /// All proof symbols padded to the largest proof arity with fresh variables.
    auto uniformize_arity(const SnpFormula & phi) -> SnpFormula;

    /// Every pair of distinct variables of every clause carries an inequality.
    auto saturate_inequalities(const SnpFormula & phi, const SnpLimits & limits = {}) -> SnpFormula;

    auto is_primitive(const SnpFormula & phi) -> bool;
}
