#include <lifts/errors.hh>
#include <lifts/lift.hh>

namespace lifts
{
    namespace
    {
        // Calls fn on every length-r tuple over 0..n-1 in lexicographic order; stops early on false.
        template <typename Fn_>
        auto for_each_tuple(unsigned n, unsigned r, Fn_ && fn) -> bool
        {
            if (n == 0)
                return true;
            Tuple t(r, 0);
            while (true) {
                if (! fn(std::span<const Element>(t)))
                    return false;
                unsigned i = r;
                while (i > 0) {
                    --i;
                    if (++t[i] < n)
                        break;
                    t[i] = 0;
                    if (i == 0)
                        return true;
                }
                if (r == 0)
                    return true;
            }
        }

        auto count_classes(const Structure & s, const std::vector<SymbolId> & lifted, std::span<const Element> t) -> unsigned
        {
            unsigned c = 0;
            for (auto id : lifted)
                if (s.has(id, t))
                    ++c;
            return c;
        }
    }

    auto to_string(CoverMode m) -> std::string_view
    {
        switch (m) {
        case CoverMode::none: return "none";
        case CoverMode::covering: return "covering";
        case CoverMode::partition: return "partition";
        }
        return "?";
    }

    Lift::Lift(Structure carrier, unsigned lift_arity, CoverMode mode) :
        _carrier(std::move(carrier)),
        _lift_arity(lift_arity),
        _cover_mode(mode)
    {
        if (lift_arity == 0)
            throw PreconditionViolated("lift arity must be positive");
        if (mode == CoverMode::none)
            return;

        auto lifted = _carrier.signature().lifted_symbols();
        for (auto id : lifted)
            if (_carrier.signature()[id].arity != lift_arity)
                throw PreconditionViolated("lifted symbol " + _carrier.signature()[id].name + " does not have arity " +
                    std::to_string(lift_arity));

        bool ok = for_each_tuple(_carrier.size(), lift_arity, [&](std::span<const Element> t) {
            auto c = count_classes(_carrier, lifted, t);
            return mode == CoverMode::partition ? c == 1 : c >= 1;
        });
        if (! ok)
            throw PreconditionViolated(std::string("carrier is not a ") + std::string(to_string(mode)) + " lift");
    }

    auto detect_cover_mode(const Structure & s, unsigned lift_arity) -> CoverMode
    {
        auto lifted = s.signature().lifted_symbols();
        for (auto id : lifted)
            if (s.signature()[id].arity != lift_arity)
                return CoverMode::none;

        bool covering = true, partition = true;
        for_each_tuple(s.size(), lift_arity, [&](std::span<const Element> t) {
            auto c = count_classes(s, lifted, t);
            if (c == 0)
                covering = partition = false;
            else if (c > 1)
                partition = false;
            return covering;
        });
        if (partition)
            return CoverMode::partition;
        return covering ? CoverMode::covering : CoverMode::none;
    }

    auto lifted_classes(const Structure & s, std::span<const Element> tuple) -> std::vector<SymbolId>
    {
        std::vector<SymbolId> result;
        for (auto id : s.signature().lifted_symbols())
            if (s.signature()[id].arity == tuple.size() && s.has(id, tuple))
                result.push_back(id);
        return result;
    }
}
