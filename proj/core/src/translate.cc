#include <lifts/errors.hh>
#include <lifts/family.hh>

#include <algorithm>

namespace lifts
{
    namespace
    {
        auto require(const SnpFormula & phi, bool monotone, bool monadic, bool no_inequality, const std::string & what)
            -> void
        {
            auto report = restrictions(phi);
            std::string missing;
            if (monotone && ! report.monotone)
                missing += " monotone";
            if (monadic && ! report.monadic)
                missing += " monadic";
            if (no_inequality && ! report.no_inequality)
                missing += " without-inequality";
            if (! missing.empty())
                throw RestrictionViolation(what + " needs a formula that is" + missing);
        }

        // lifted symbol per subset of proof symbols, indexed by bitmask (bit p = proof symbol p holds)
        auto subset_signature(const SnpFormula & phi, unsigned arity) -> SignaturePtr
        {
            if (phi.proof.size() > 12)
                throw GuardExceeded("more than 12 proof symbols");
            std::vector<Symbol> lifted;
            for (unsigned mask = 0; mask < (1u << phi.proof.size()); ++mask) {
                std::string name = "L";
                if (mask == 0)
                    name += "_none";
                for (unsigned p = 0; p < phi.proof.size(); ++p)
                    if (mask & (1u << p))
                        name += "_" + phi.proof[p].name;
                while (phi.input->find(name))
                    name += "_";
                lifted.push_back({name, arity, true});
            }
            return Signature::extend(phi.input, std::move(lifted), phi.name);
        }

        auto next_tuple(std::vector<unsigned> & t, unsigned n) -> bool
        {
            for (unsigned i = t.size(); i-- > 0;) {
                if (++t[i] < n)
                    return true;
                t[i] = 0;
            }
            return false;
        }

        auto lifted_id(const Signature & sig, unsigned mask) -> SymbolId
        {
            return sig.lifted_symbols()[mask];
        }

        // One pattern per clause of a primitive formula; input atoms are taken positively.
        auto clause_pattern(const SnpFormula & phi, const SnpClause & c, const SignaturePtr & sig, unsigned r) -> Structure
        {
            unsigned v = c.variables.size();
            StructureBuilder b(sig, v);
            for (auto & a : c.input)
                if (! a.negated)
                    b.add(a.symbol, std::vector<Element>(a.args.begin(), a.args.end()));
            if (v > 0) {
                std::vector<unsigned> t(r, 0);
                do {
                    unsigned mask = 0;
                    for (auto & a : c.proof)
                        if (! a.negated && a.args == t)
                            mask |= 1u << a.symbol;
                    b.add(lifted_id(*sig, mask), std::vector<Element>(t.begin(), t.end()));
                } while (next_tuple(t, v));
            }
            b.set_names(c.variables);
            (void) phi;
            return std::move(b).build();
        }

        auto build(const SnpFormula & normal, unsigned r, HomKind mode) -> PatternFamily
        {
            auto sig = subset_signature(normal, r);
            PatternFamily f;
            f.signature = sig;
            f.lift_arity = r;
            f.mode = mode;
            for (auto & c : normal.clauses) {
                f.patterns.emplace_back(clause_pattern(normal, c, sig, r), r, CoverMode::partition);
                f.names.push_back("C" + std::to_string(f.patterns.size()));
            }
            return f;
        }
    }

    auto to_lifts_general(const SnpFormula & phi, const SnpLimits & limits) -> PatternFamily
    {
        require(phi, true, false, true, "the general translation");
        auto normal = primitivize(uniformize_arity(phi), limits);
        unsigned r = 1;
        for (auto & p : normal.proof)
            r = std::max(r, p.arity);
        return build(normal, r, HomKind::plain);
    }

    auto to_lifts_injective(const SnpFormula & phi, const SnpLimits & limits) -> PatternFamily
    {
        require(phi, true, true, false, "the injective translation");
        auto normal = saturate_inequalities(primitivize(phi, limits), limits);
        return build(normal, 1, HomKind::injective);
    }

    auto to_lifts_full(const SnpFormula & phi, const SnpLimits & limits) -> PatternFamily
    {
        require(phi, false, true, true, "the full translation");
        auto normal = primitivize(phi, limits);

        // clauses asserting and denying the same input atom can never fire
        std::erase_if(normal.clauses, [](const SnpClause & c) {
            for (auto & a : c.input)
                for (auto & b : c.input)
                    if (a.symbol == b.symbol && a.args == b.args && a.negated != b.negated)
                        return true;
            return false;
        });

        auto f = build(normal, 1, HomKind::full);
        f.constraints.resize(f.patterns.size());
        for (std::size_t i = 0; i < normal.clauses.size(); ++i) {
            auto & c = normal.clauses[i];
            unsigned v = c.variables.size();
            if (v == 0)
                continue;
            for (SymbolId r = 0; r < phi.input->size(); ++r) {
                std::vector<unsigned> t((*phi.input)[r].arity, 0);
                do {
                    bool mentioned = std::any_of(c.input.begin(), c.input.end(),
                        [&](const SnpAtom & a) { return a.symbol == r && a.args == t; });
                    if (! mentioned)
                        f.constraints[i].free_tuples.push_back({r, Tuple(t.begin(), t.end())});
                } while (next_tuple(t, v));
            }
        }
        return f;
    }
}
