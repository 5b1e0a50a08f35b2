#pragma once

// A deterministic corpus of small SNP formulas over one binary input symbol,
// covering every combination of the monotone / monadic / inequality-free flags.

#include "support.hh"

#include <lifts/snp.hh>

#include <random>

namespace lifts::testing
{
    struct CorpusShape
    {
        bool monotone, monadic, no_inequality;
    };

    inline auto random_formula(std::mt19937 & rng, CorpusShape shape, unsigned index) -> SnpFormula
    {
        SnpFormula phi;
        phi.name = "phi" + std::to_string(index);
        phi.input = graph_signature();
        unsigned proof_count = 1 + rng() % 2;
        for (unsigned p = 0; p < proof_count; ++p) {
            unsigned arity = shape.monadic ? 1 : 1 + (p == 0 || rng() % 2 == 0);
            phi.proof.push_back({"P" + std::to_string(p + 1), arity, false});
        }

        unsigned clause_count = 1 + rng() % 3;
        for (unsigned c = 0; c < clause_count; ++c) {
            SnpClause clause;
            // binary proof symbols over three variables would split into thousands of primitive clauses
            unsigned vars = 1 + rng() % (shape.monadic ? 3 : 2);
            for (unsigned v = 0; v < vars; ++v)
                clause.variables.push_back(std::string(1, char('x' + v)));
            auto pick = [&] { return unsigned(rng() % vars); };

            unsigned inputs = rng() % 3;
            for (unsigned i = 0; i < inputs; ++i)
                clause.input.push_back({0, {pick(), pick()}, ! shape.monotone && rng() % 3 == 0});
            unsigned proofs = rng() % 3;
            for (unsigned i = 0; i < proofs; ++i) {
                SymbolId p = rng() % proof_count;
                std::vector<unsigned> args;
                for (unsigned a = 0; a < phi.proof[p].arity; ++a)
                    args.push_back(pick());
                clause.proof.push_back({p, args, rng() % 2 == 0});
            }
            if (! shape.no_inequality && vars >= 2 && rng() % 2 == 0)
                clause.inequalities.emplace_back(0, 1);
            if (clause.input.empty() && clause.proof.empty() && clause.inequalities.empty())
                clause.proof.push_back({0, std::vector<unsigned>(phi.proof[0].arity, 0), true});

            // keep only variables that occur, renumbered
            std::vector<int> renumber(vars, -1);
            std::vector<std::string> used;
            auto touch = [&](unsigned v) {
                if (renumber[v] < 0) {
                    renumber[v] = used.size();
                    used.push_back(clause.variables[v]);
                }
                return unsigned(renumber[v]);
            };
            for (auto & a : clause.input)
                for (auto & v : a.args)
                    v = touch(v);
            for (auto & a : clause.proof)
                for (auto & v : a.args)
                    v = touch(v);
            for (auto & [x, y] : clause.inequalities) {
                x = touch(x);
                y = touch(y);
            }
            clause.variables = used;
            phi.clauses.push_back(clause);
        }
        return phi;
    }

    /// At least `count` formulas, cycling through all eight flag combinations.
    inline auto formula_corpus(unsigned count, unsigned seed = 1) -> std::vector<SnpFormula>
    {
        std::mt19937 rng(seed);
        std::vector<SnpFormula> out;
        for (unsigned i = 0; i < count; ++i) {
            CorpusShape shape{(i & 1) != 0, (i & 2) != 0, (i & 4) != 0};
            out.push_back(random_formula(rng, shape, i));
        }
        return out;
    }
}
