#include <lifts/enumerate.hh>
#include <lifts/homsearch.hh>
#include <lifts/shape.hh>
#include <lifts/sparse.hh>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace lifts
{
    namespace
    {
        auto girth_at_least(const Structure & s, unsigned ell) -> bool
        {
            return ell <= 1 || ! cycle_at_most(s, ell - 1);
        }

        // The hard direction of small-target equivalence: whenever b maps to a
        // target, so must a. The other direction follows from b -> a.
        auto separating_target(const Structure & a, const Structure & b, unsigned k, unsigned max_candidate_tuples,
            std::mt19937_64 * rng, unsigned samples) -> std::optional<Structure>
        {
            std::optional<Structure> found;
            auto check = [&](const Structure & c) {
                if (maps_to(b, c) && ! maps_to(a, c)) {
                    found = c;
                    return false;
                }
                return true;
            };
            if (candidate_tuple_count(a.signature(), k) <= max_candidate_tuples || ! rng) {
                if (candidate_tuple_count(a.signature(), k) > max_candidate_tuples)
                    throw GuardExceeded("verify_sparse: too many structures with " + std::to_string(k) + " points");
                enumerate_structures(a.signature_ptr(), k, check, {.up_to_isomorphism = true, .min_size = 1, .hereditary = {}});
                return found;
            }

            std::uniform_int_distribution<unsigned> size_dist(1, k);
            for (unsigned i = 0; i < samples && ! found; ++i) {
                unsigned n = size_dist(*rng);
                StructureBuilder builder(a.signature_ptr(), n);
                std::bernoulli_distribution coin(0.5);
                for (SymbolId r = 0; r < a.signature().size(); ++r) {
                    unsigned arity = a.signature()[r].arity;
                    Tuple t(arity, 0);
                    while (true) {
                        if (coin(*rng))
                            builder.add(r, t);
                        unsigned j = arity;
                        while (j-- > 0 && ++t[j] == n)
                            t[j] = 0;
                        if (j == ~0u)
                            break;
                    }
                }
                check(std::move(builder).build());
            }
            return found;
        }

        struct Candidate
        {
            Structure structure;
            std::vector<Element> projection;
        };

        auto sample(const Structure & a, unsigned fibre, double per_tuple, std::mt19937_64 & rng) -> Candidate
        {
            std::vector<std::pair<SymbolId, Tuple>> tuples;
            std::uniform_int_distribution<unsigned> copy(0, fibre - 1);
            auto count = static_cast<unsigned>(std::ceil(per_tuple));
            for (SymbolId r = 0; r < a.signature().size(); ++r)
                for (auto t : a.relation(r)) {
                    std::set<Tuple> chosen;
                    for (unsigned i = 0; i < count; ++i) {
                        Tuple lifted;
                        for (auto e : t)
                            lifted.push_back(e * fibre + copy(rng));
                        chosen.insert(lifted);
                    }
                    for (auto & u : chosen)
                        tuples.emplace_back(r, u);
                }

            auto build = [&](const std::vector<std::pair<SymbolId, Tuple>> & ts) {
                StructureBuilder b(a.signature_ptr(), a.size() * fibre);
                for (auto & [r, t] : ts)
                    b.add(r, t);
                return std::move(b).build();
            };
            return {build(tuples), {}};
        }

        // Delete a random tuple of each short cycle until none is left.
        auto surgery(Structure b, unsigned ell, std::mt19937_64 & rng) -> Structure
        {
            while (ell > 1) {
                auto cycle = cycle_at_most(b, ell - 1);
                if (! cycle)
                    break;
                std::uniform_int_distribution<std::size_t> pick(0, cycle->tuples.size() - 1);
                auto victim = cycle->tuples[pick(rng)];
                StructureBuilder rebuilt(b.signature_ptr(), b.size());
                for (SymbolId r = 0; r < b.signature().size(); ++r)
                    for (auto t : b.relation(r))
                        if (r != victim.symbol || ! std::equal(t.begin(), t.end(), victim.tuple.begin(), victim.tuple.end()))
                            rebuilt.add(r, t);
                b = std::move(rebuilt).build();
            }
            return b;
        }

        // Keep one copy of every element of a plus every copy that lies in a tuple.
        auto compact(const Structure & b, const Structure & a, unsigned fibre) -> Candidate
        {
            std::vector<bool> keep(b.size(), false);
            for (Element e = 0; e < a.size(); ++e)
                keep[e * fibre] = true;
            for (SymbolId r = 0; r < b.signature().size(); ++r)
                for (auto e : b.relation(r).flat())
                    keep[e] = true;
            std::vector<Element> renumber(b.size(), 0), projection;
            unsigned n = 0;
            for (Element e = 0; e < b.size(); ++e)
                if (keep[e]) {
                    renumber[e] = n++;
                    projection.push_back(e / fibre);
                }
            StructureBuilder out(b.signature_ptr(), n);
            Tuple t;
            for (SymbolId r = 0; r < b.signature().size(); ++r)
                for (auto u : b.relation(r)) {
                    t.clear();
                    for (auto e : u)
                        t.push_back(renumber[e]);
                    out.add(r, t);
                }
            return {std::move(out).build(), std::move(projection)};
        }

        auto is_hom(const Structure & from, const Structure & to, const std::vector<Element> & map) -> bool
        {
            Tuple t;
            for (SymbolId r = 0; r < from.signature().size(); ++r)
                for (auto u : from.relation(r)) {
                    t.clear();
                    for (auto e : u)
                        t.push_back(map[e]);
                    if (! to.has(r, t))
                        return false;
                }
            return true;
        }
    }

    auto sparse_replace(const Structure & a, const SparseParams & params) -> SparseResult
    {
        if (a.size() == 0)
            throw PreconditionViolated("sparse_replace needs a nonempty structure");
        if (params.k < 1 || params.ell < 2)
            throw PreconditionViolated("sparse_replace needs k >= 1 and ell >= 2");
        constexpr unsigned exhaustive_limit = 20;
        bool exhaustive = candidate_tuple_count(a.signature(), params.k) <= exhaustive_limit;

        if (girth_at_least(a, params.ell)) {
            std::vector<Element> identity(a.size());
            for (Element e = 0; e < a.size(); ++e)
                identity[e] = e;
            return {a, identity, 0, exhaustive};
        }

        unsigned fibre = params.fiber_size ? params.fiber_size : 16 * a.size();
        if (fibre == 0 || static_cast<unsigned long long>(fibre) * a.size() > params.max_size)
            throw GuardExceeded("sparse_replace: " + std::to_string(a.size()) + " x " + std::to_string(fibre) +
                " elements exceed the size cap of " + std::to_string(params.max_size));
        double density = params.density > 0 ? params.density : double(params.ell) * a.size() / fibre;

        std::string failure = "no attempt made";
        Structure best = a;
        for (unsigned attempt = 1; attempt <= params.max_attempts; ++attempt) {
            std::seed_seq seq{std::uint32_t(params.seed), std::uint32_t(params.seed >> 32), std::uint32_t(attempt)};
            std::mt19937_64 rng(seq);
            // later attempts sample more tuples, since sparse samples tend to be too easy to map
            double per_tuple = density * fibre * (1.0 + (attempt - 1) / 8.0);
            auto raw = sample(a, fibre, per_tuple, rng);
            auto candidate = compact(surgery(std::move(raw.structure), params.ell, rng), a, fibre);
            best = candidate.structure;

            if (! girth_at_least(candidate.structure, params.ell)) {
                failure = "girth below " + std::to_string(params.ell);
                continue;
            }
            if (! is_hom(candidate.structure, a, candidate.projection)) {
                failure = "projection is not a homomorphism";
                continue;
            }
            if (auto c = separating_target(a, candidate.structure, params.k, exhaustive_limit, &rng, params.sampled_targets)) {
                failure = "a target with " + std::to_string(c->size()) + " points receives B but not A";
                continue;
            }
            return {std::move(candidate.structure), std::move(candidate.projection), attempt, exhaustive};
        }
        throw SparseAttemptsExhausted("sparse_replace: " + std::to_string(params.max_attempts) +
                " attempts exhausted; last failure: " + failure,
            std::move(best));
    }

    auto verify_sparse(const Structure & a, const Structure & b, unsigned k, unsigned ell, unsigned max_candidate_tuples)
        -> SparseCheck
    {
        require_same_signature(a.signature_ptr(), b.signature_ptr(), "verify_sparse");
        if (candidate_tuple_count(a.signature(), k) > max_candidate_tuples)
            throw GuardExceeded("verify_sparse: too many structures with " + std::to_string(k) + " points");
        if (auto c = ell > 1 ? cycle_at_most(b, ell - 1) : std::nullopt)
            return {false, "girth: " + describe(*c, b), std::nullopt};
        if (! maps_to(b, a))
            return {false, "no homomorphism to A", std::nullopt};
        if (auto c = separating_target(a, b, k, max_candidate_tuples, nullptr, 0))
            return {false, "small target receives B but not A", std::move(c)};
        return {};
    }
}
