#include <lifts/canonical.hh>
#include <lifts/duality.hh>
#include <lifts/enumerate.hh>
#include <lifts/errors.hh>
#include <lifts/homsearch.hh>
#include <lifts/operations.hh>
#include <lifts/shape.hh>

#include <algorithm>
#include <map>

namespace lifts
{
    namespace
    {
        auto require_forest(const Structure & s, const std::string & what) -> void
        {
            if (auto c = shortest_cycle(s))
                throw PreconditionViolated(what + " is not a forest: cycle " + describe(*c, s));
        }
    }

    auto tree_dual(const Structure & input, const DualityLimits & limits) -> Structure
    {
        if (input.size() == 0)
            throw PreconditionViolated("tree_dual: the tree has no elements");
        require_forest(input, "tree_dual input");
        if (! is_connected(input))
            throw PreconditionViolated("tree_dual: the input is not connected");

        auto tree = core_of(input);
        auto & sig = tree.signature();
        unsigned n = tree.size();

        // incident[x]: indices into `tuples` of the tuples containing x
        std::vector<std::pair<SymbolId, Tuple>> tuples;
        std::map<std::pair<SymbolId, Tuple>, unsigned> tuple_index;
        std::vector<std::vector<unsigned>> incident(n);
        for (SymbolId r = 0; r < sig.size(); ++r)
            for (auto t : tree.relation(r)) {
                unsigned id = tuples.size();
                tuples.emplace_back(r, Tuple(t.begin(), t.end()));
                tuple_index.emplace(tuples.back(), id);
                for (auto x : t)
                    incident[x].push_back(id);
            }

        // a single point without tuples is avoided only by the empty structure
        if (tuples.empty())
            return StructureBuilder(tree.signature_ptr(), 0).build();

        // Elements of the dual: choice functions picking one incident tuple per tree element.
        unsigned long long count = 1;
        for (auto & inc : incident) {
            count *= inc.size();
            if (count > limits.max_dual_elements)
                throw GuardExceeded("tree_dual: more than " + std::to_string(limits.max_dual_elements) +
                    " choice functions");
        }
        std::vector<std::vector<unsigned>> choice(count, std::vector<unsigned>(n));
        {
            std::vector<unsigned> pos(n, 0);
            for (unsigned long long f = 0; f < count; ++f) {
                for (Element x = 0; x < n; ++x)
                    choice[f][x] = incident[x][pos[x]];
                for (Element x = n; x-- > 0;) {
                    if (++pos[x] < incident[x].size())
                        break;
                    pos[x] = 0;
                }
            }
        }

        StructureBuilder b(tree.signature_ptr(), count);
        for (SymbolId r = 0; r < sig.size(); ++r) {
            unsigned k = sig[r].arity;
            unsigned long long candidates = 1;
            for (unsigned i = 0; i < k; ++i) {
                candidates *= count;
                if (candidates > limits.max_candidate_tuples)
                    throw GuardExceeded("tree_dual: too many candidate tuples for " + sig[r].name);
            }
            auto & rel = tree.relation(r);
            Tuple f(k, 0);
            for (unsigned long long c = 0; c < candidates; ++c) {
                // (f_1..f_k) is excluded iff some tuple e has f_i(e_i) = e for every i
                bool excluded = false;
                for (auto e : rel) {
                    unsigned id = tuple_index.at({r, Tuple(e.begin(), e.end())});
                    bool all = true;
                    for (unsigned i = 0; i < k && all; ++i)
                        all = choice[f[i]][e[i]] == id;
                    if (all) {
                        excluded = true;
                        break;
                    }
                }
                if (! excluded)
                    b.add(r, f);
                for (unsigned i = k; i-- > 0;) {
                    if (++f[i] < count)
                        break;
                    f[i] = 0;
                }
            }
        }
        return core_of(std::move(b).build());
    }

    auto prune_templates(std::vector<Structure> templates) -> std::vector<Structure>
    {
        for (auto & t : templates)
            t = core_of(t);
        std::vector<Structure> kept;
        for (std::size_t i = 0; i < templates.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < templates.size() && ! dominated; ++j) {
                if (i == j || ! maps_to(templates[i], templates[j]))
                    continue;
                // strictly below another, or equivalent to an earlier one
                dominated = ! maps_to(templates[j], templates[i]) || j < i;
            }
            if (! dominated)
                kept.push_back(std::move(templates[i]));
        }
        std::sort(kept.begin(), kept.end(), [](const Structure & a, const Structure & b) {
            return canonical_code(a) < canonical_code(b);
        });
        return kept;
    }

    auto forest_family_duals(const SignaturePtr & sig, const std::vector<Structure> & obstructions,
        const DualityLimits & limits) -> std::vector<Structure>
    {
        std::vector<std::vector<Structure>> duals_per_obstruction;
        unsigned long long choices = 1;
        for (std::size_t i = 0; i < obstructions.size(); ++i) {
            auto & f = obstructions[i];
            require_same_signature(sig, f.signature_ptr(), "forest_family_duals");
            require_forest(f, "obstruction " + std::to_string(i));
            if (f.size() == 0)
                return {};
            std::vector<Structure> duals;
            std::vector<std::vector<unsigned>> seen;
            for (auto & piece : connected_components(core_of(f))) {
                auto code = canonical_code(piece.structure);
                if (std::find(seen.begin(), seen.end(), code) != seen.end())
                    continue;
                seen.push_back(std::move(code));
                duals.push_back(tree_dual(piece.structure, limits));
            }
            choices *= duals.size();
            if (choices > limits.max_choices)
                throw GuardExceeded("forest_family_duals: more than " + std::to_string(limits.max_choices) +
                    " component choices");
            duals_per_obstruction.push_back(std::move(duals));
        }

        std::vector<Structure> templates;
        std::vector<std::size_t> pick(duals_per_obstruction.size(), 0);
        while (true) {
            Structure t = all_loops_point(sig);
            for (std::size_t i = 0; i < pick.size(); ++i) {
                t = core_of(product(t, duals_per_obstruction[i][pick[i]]));
                if (t.size() == 0)
                    break;
            }
            templates.push_back(rebind(t, sig));
            std::size_t i = pick.size();
            bool done = true;
            while (i-- > 0) {
                if (++pick[i] < duals_per_obstruction[i].size()) {
                    done = false;
                    break;
                }
                pick[i] = 0;
            }
            if (done)
                break;
        }
        return prune_templates(std::move(templates));
    }

    auto verify_duality(const SignaturePtr & sig, const std::vector<Structure> & obstructions,
        const std::vector<Structure> & templates, unsigned max_size) -> DualityCheck
    {
        DualityCheck result;
        enumerate_structures(sig, max_size, [&](const Structure & a) {
            bool avoids = std::none_of(obstructions.begin(), obstructions.end(),
                [&](const Structure & f) { return maps_to(f, a); });
            bool covered = std::any_of(templates.begin(), templates.end(),
                [&](const Structure & d) { return maps_to(a, d); });
            if (avoids != covered) {
                result.holds = false;
                result.counterexample = a;
                return false;
            }
            return true;
        });
        return result;
    }
}
