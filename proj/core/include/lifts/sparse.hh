#pragma once

#include <lifts/errors.hh>
#include <lifts/structure.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lifts
{
    struct SparseParams
    {
        unsigned k = 2;             ///< targets with at most k points must not tell A and B apart
        unsigned ell = 3;           ///< required girth
        unsigned fiber_size = 0;    ///< copies of each element; 0 means 16 * |A|
        double density = 0;         ///< sampled tuples per fiber copy and tuple of A; 0 means ell * |A| / fiber_size
        std::uint64_t seed = 0;
        unsigned max_attempts = 64;
        unsigned max_size = 4096;
        unsigned sampled_targets = 256; ///< random targets when k is too large to enumerate
    };

    struct SparseResult
    {
        Structure structure;
        std::vector<Element> projection; ///< a homomorphism into A
        unsigned attempt = 0;
        bool exhaustive = false;          ///< small-target equivalence checked against every target
    };

    /// Thrown when every attempt fails; carries the last candidate and the failed property.
    class SparseAttemptsExhausted : public Error
    {
    private:
        Structure _best;

    public:
        SparseAttemptsExhausted(const std::string & message, Structure best) :
            Error(message),
            _best(std::move(best))
        {
        }

        auto best() const -> const Structure & { return _best; }
    };

    auto sparse_replace(const Structure & a, const SparseParams & params = {}) -> SparseResult;

    struct SparseCheck
    {
        bool holds = true;
        std::string failure;                  ///< which property failed
        std::optional<Structure> counterexample; ///< a small target separating A and B
    };

    /**
     * Exhaustive check of girth(b) >= ell, b -> a, and a -> c iff b -> c for
     * every c with at most k points. Throws GuardExceeded when k is too large
     * to enumerate (more than max_candidate_tuples candidate tuples).
     */
    auto verify_sparse(const Structure & a, const Structure & b, unsigned k, unsigned ell,
        unsigned max_candidate_tuples = 20) -> SparseCheck;
}
