#pragma once

#include <lifts/structure.hh>

#include <string_view>

namespace lifts
{
    enum class CoverMode
    {
        none,
        covering,  ///< every r-tuple lies in at least one lifted relation
        partition  ///< every r-tuple lies in exactly one lifted relation
    };

    auto to_string(CoverMode) -> std::string_view;

    /**
     * A structure over the input and lift symbols together, plus the
     * covering metadata. cover_mode is declared, not inferred, and the
     * constructor rejects a carrier that does not meet what it declares.
     */
    class Lift
    {
    private:
        Structure _carrier;
        unsigned _lift_arity;
        CoverMode _cover_mode;

    public:
        Lift(Structure carrier, unsigned lift_arity, CoverMode mode);

        auto carrier() const -> const Structure & { return _carrier; }
        auto lift_arity() const -> unsigned { return _lift_arity; }
        auto cover_mode() const -> CoverMode { return _cover_mode; }
        auto size() const -> unsigned { return _carrier.size(); }

        auto operator==(const Lift &) const -> bool = default;
    };

    /// The strongest cover mode `s` satisfies for lifted arity r (partition > covering > none).
    auto detect_cover_mode(const Structure & s, unsigned lift_arity) -> CoverMode;

    /// Lifted symbol ids whose relation contains `tuple` (an r-tuple).
    auto lifted_classes(const Structure & s, std::span<const Element> tuple) -> std::vector<SymbolId>;
}
