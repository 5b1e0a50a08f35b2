#include <lifts/errors.hh>
#include <lifts/snp.hh>

#include <algorithm>
#include <deque>
#include <set>

namespace lifts
{
    namespace
    {
        // Calls fn for every assignment of `count` variables to 0..n-1.
        template <typename Fn_>
        auto for_each_valuation(unsigned count, unsigned n, Fn_ && fn) -> bool
        {
            std::vector<Element> v(count, 0);
            if (count > 0 && n == 0)
                return true;
            while (true) {
                if (! fn(v))
                    return false;
                unsigned i = count;
                bool done = true;
                while (i-- > 0) {
                    if (++v[i] < n) {
                        done = false;
                        break;
                    }
                    v[i] = 0;
                }
                if (done)
                    return true;
            }
        }

        auto contradictory(const std::vector<SnpAtom> & atoms) -> bool
        {
            for (std::size_t i = 0; i < atoms.size(); ++i)
                for (std::size_t j = i + 1; j < atoms.size(); ++j)
                    if (atoms[i].symbol == atoms[j].symbol && atoms[i].args == atoms[j].args &&
                        atoms[i].negated != atoms[j].negated)
                        return true;
            return false;
        }

        auto decided(const SnpClause & c, SymbolId p, const std::vector<unsigned> & args) -> bool
        {
            return std::any_of(c.proof.begin(), c.proof.end(),
                [&](const SnpAtom & a) { return a.symbol == p && a.args == args; });
        }

        // all undecided proof atoms of a clause, in a fixed order
        auto undecided_atoms(const SnpFormula & phi, const SnpClause & c) -> std::vector<SnpAtom>
        {
            std::vector<SnpAtom> missing;
            unsigned v = c.variables.size();
            for (SymbolId p = 0; p < phi.proof.size(); ++p) {
                unsigned r = phi.proof[p].arity;
                for_each_valuation(r, v, [&](const std::vector<Element> & args) {
                    std::vector<unsigned> a(args.begin(), args.end());
                    if (! decided(c, p, a))
                        missing.push_back({p, a, false});
                    return true;
                });
            }
            return missing;
        }

        auto unique_name(std::string base, const SnpFormula & phi, const std::vector<Symbol> & more) -> std::string
        {
            auto taken = [&](const std::string & n) {
                return phi.input->find(n).has_value() ||
                    std::any_of(phi.proof.begin(), phi.proof.end(), [&](auto & s) { return s.name == n; }) ||
                    std::any_of(more.begin(), more.end(), [&](auto & s) { return s.name == n; });
            };
            while (taken(base))
                base += "_";
            return base;
        }

        auto fresh_variable(const SnpClause & c) -> std::string
        {
            for (unsigned i = 1;; ++i) {
                auto name = "z" + std::to_string(i);
                if (std::find(c.variables.begin(), c.variables.end(), name) == c.variables.end())
                    return name;
            }
        }

        // y merged into x: y disappears, later variables shift down by one
        auto collapse(const SnpClause & c, unsigned x, unsigned y) -> std::optional<SnpClause>
        {
            auto map = [&](unsigned v) -> unsigned {
                if (v == y)
                    v = x;
                return v > y ? v - 1 : v;
            };
            SnpClause out;
            for (unsigned v = 0; v < c.variables.size(); ++v)
                if (v != y)
                    out.variables.push_back(c.variables[v]);
            auto remap = [&](const std::vector<SnpAtom> & atoms) {
                std::vector<SnpAtom> result;
                for (auto a : atoms) {
                    for (auto & arg : a.args)
                        arg = map(arg);
                    if (std::find(result.begin(), result.end(), a) == result.end())
                        result.push_back(std::move(a));
                }
                return result;
            };
            out.input = remap(c.input);
            out.proof = remap(c.proof);
            if (contradictory(out.proof) || contradictory(out.input))
                return std::nullopt;
            for (auto [a, b] : c.inequalities) {
                a = map(a);
                b = map(b);
                if (a == b)
                    return std::nullopt;
                std::pair<unsigned, unsigned> e{std::min(a, b), std::max(a, b)};
                if (std::find(out.inequalities.begin(), out.inequalities.end(), e) == out.inequalities.end())
                    out.inequalities.push_back(e);
            }
            return out;
        }

        auto has_inequality(const SnpClause & c, unsigned x, unsigned y) -> bool
        {
            return std::any_of(c.inequalities.begin(), c.inequalities.end(), [&](auto & e) {
                return (e.first == x && e.second == y) || (e.first == y && e.second == x);
            });
        }
    }

    auto restrictions(const SnpFormula & phi) -> RestrictionReport
    {
        RestrictionReport r;
        for (auto & p : phi.proof)
            if (p.arity != 1)
                r.monadic = false;
        for (auto & c : phi.clauses) {
            for (auto & a : c.input)
                if (a.negated)
                    r.monotone = false;
            if (! c.inequalities.empty())
                r.no_inequality = false;
        }
        return r;
    }

    auto eval_snp(const SnpFormula & phi, const Structure & a, const SnpLimits & limits) -> bool
    {
        require_same_signature(phi.input, a.signature_ptr(), "eval_snp");
        unsigned n = a.size();

        std::vector<unsigned> offset;
        unsigned long long atoms = 0;
        for (auto & p : phi.proof) {
            offset.push_back(atoms);
            unsigned long long count = 1;
            for (unsigned i = 0; i < p.arity; ++i)
                count *= n;
            atoms += count;
            if (atoms > limits.max_proof_atoms)
                throw GuardExceeded("eval_snp: more than " + std::to_string(limits.max_proof_atoms) +
                    " proof atoms");
        }
        auto atom_id = [&](const SnpAtom & at, const std::vector<Element> & val) {
            unsigned index = 0;
            for (auto x : at.args)
                index = index * n + val[x];
            return offset[at.symbol] + index;
        };

        // literal = 2 * atom + (1 if the atom must be true)
        std::set<std::vector<unsigned>> nogoods;
        bool violated = false;
        Tuple image;
        for (auto & c : phi.clauses) {
            for_each_valuation(c.variables.size(), n, [&](const std::vector<Element> & val) {
                for (auto & [x, y] : c.inequalities)
                    if (val[x] == val[y])
                        return true;
                for (auto & at : c.input) {
                    image.clear();
                    for (auto x : at.args)
                        image.push_back(val[x]);
                    if (a.has(at.symbol, image) == at.negated)
                        return true;
                }
                std::vector<unsigned> lits;
                for (auto & at : c.proof)
                    lits.push_back(2 * atom_id(at, val) + (at.negated ? 0 : 1));
                std::sort(lits.begin(), lits.end());
                lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
                for (std::size_t i = 0; i + 1 < lits.size(); ++i)
                    if (lits[i] / 2 == lits[i + 1] / 2)
                        return true;
                if (lits.empty()) {
                    violated = true;
                    return false;
                }
                nogoods.insert(std::move(lits));
                return true;
            });
            if (violated)
                return false;
        }

        std::vector<std::vector<const std::vector<unsigned> *>> by_last(atoms);
        for (auto & g : nogoods)
            by_last[g.back() / 2].push_back(&g);

        std::vector<int> value(atoms, -1);
        auto clashes = [&](unsigned i) {
            for (auto g : by_last[i])
                if (std::all_of(g->begin(), g->end(), [&](unsigned l) { return value[l / 2] == int(l % 2); }))
                    return true;
            return false;
        };
        // iterative backtracking over atoms in index order
        unsigned i = 0;
        while (true) {
            if (i == atoms)
                return true;
            if (value[i] < 1) {
                ++value[i];
                if (! clashes(i))
                    ++i;
                continue;
            }
            value[i] = -1;
            if (i == 0)
                return false;
            --i;
        }
    }

    auto is_primitive(const SnpFormula & phi) -> bool
    {
        return std::all_of(phi.clauses.begin(), phi.clauses.end(),
            [&](const SnpClause & c) { return undecided_atoms(phi, c).empty(); });
    }

    auto primitivize(const SnpFormula & phi, const SnpLimits & limits) -> SnpFormula
    {
        SnpFormula out{phi.name, phi.input, phi.proof, {}};
        for (auto & c : phi.clauses) {
            if (contradictory(c.proof))
                continue;
            auto missing = undecided_atoms(phi, c);
            if (missing.size() >= 31 || out.clauses.size() + (std::size_t{1} << missing.size()) > limits.max_clauses)
                throw GuardExceeded("primitivize: more than " + std::to_string(limits.max_clauses) + " clauses");
            for (std::size_t mask = 0; mask < (std::size_t{1} << missing.size()); ++mask) {
                SnpClause split = c;
                for (std::size_t j = 0; j < missing.size(); ++j) {
                    auto atom = missing[j];
                    atom.negated = (mask >> (missing.size() - 1 - j)) & 1;
                    split.proof.push_back(std::move(atom));
                }
                out.clauses.push_back(std::move(split));
            }
        }
        return out;
    }

    auto uniformize_arity(const SnpFormula & phi) -> SnpFormula
    {
        unsigned r = 0;
        for (auto & p : phi.proof)
            r = std::max(r, p.arity);
        if (std::all_of(phi.proof.begin(), phi.proof.end(), [&](auto & p) { return p.arity == r; }))
            return phi;

        SnpFormula out{phi.name, phi.input, {}, {}};
        for (auto & p : phi.proof) {
            if (p.arity == r)
                out.proof.push_back(p);
            else
                out.proof.push_back({unique_name(p.name + "_r" + std::to_string(r), phi, out.proof), r, false});
        }
        for (auto c : phi.clauses) {
            for (auto & atom : c.proof)
                while (atom.args.size() < r) {
                    c.variables.push_back(fresh_variable(c));
                    atom.args.push_back(c.variables.size() - 1);
                }
            out.clauses.push_back(std::move(c));
        }
        return out;
    }

    auto saturate_inequalities(const SnpFormula & phi, const SnpLimits & limits) -> SnpFormula
    {
        SnpFormula out{phi.name, phi.input, phi.proof, {}};
        std::deque<SnpClause> work;
        for (auto & c : phi.clauses)
            if (std::none_of(c.inequalities.begin(), c.inequalities.end(), [](auto & e) { return e.first == e.second; }))
                work.push_back(c);
        std::size_t produced = 0;
        while (! work.empty()) {
            auto c = std::move(work.front());
            work.pop_front();
            std::optional<std::pair<unsigned, unsigned>> gap;
            for (unsigned x = 0; x < c.variables.size() && ! gap; ++x)
                for (unsigned y = x + 1; y < c.variables.size() && ! gap; ++y)
                    if (! has_inequality(c, x, y))
                        gap.emplace(x, y);
            if (! gap) {
                out.clauses.push_back(std::move(c));
                continue;
            }
            if (++produced > limits.max_clauses)
                throw GuardExceeded("saturate_inequalities: more than " + std::to_string(limits.max_clauses) +
                    " clauses");
            auto [x, y] = *gap;
            auto collapsed = collapse(c, x, y);
            c.inequalities.emplace_back(x, y);
            work.push_front(std::move(c));
            if (collapsed)
                work.insert(work.begin() + 1, std::move(*collapsed));
        }
        return out;
    }
}
