#include <lifts/errors.hh>
#include <lifts/operations.hh>

#include <algorithm>

namespace lifts
{
    namespace
    {
        auto min_mode(CoverMode a, CoverMode b) -> CoverMode
        {
            return static_cast<int>(a) < static_cast<int>(b) ? a : b;
        }

        auto subset_names(const Structure & s, std::span<const Element> elements) -> std::vector<std::string>
        {
            std::vector<std::string> names;
            if (! s.has_names())
                return names;
            for (auto e : elements)
                names.push_back(s.element_name(e));
            return names;
        }
    }

    auto shadow(const Structure & lifted) -> Structure
    {
        auto base = lifted.signature().base();
        StructureBuilder b(base, lifted.size());
        SymbolId target = 0;
        for (auto id : lifted.signature().base_symbols()) {
            for (auto t : lifted.relation(id))
                b.add(target, t);
            ++target;
        }
        if (lifted.has_names())
            b.set_names(lifted.names());
        return std::move(b).build();
    }

    auto shadow(const Lift & lift) -> Structure
    {
        return shadow(lift.carrier());
    }

    auto pullback_lift(const Structure & source, const Homomorphism & f, const Lift & target) -> Lift
    {
        auto & carrier = target.carrier();
        auto target_shadow = shadow(carrier);
        if (! is_homomorphism(source, target_shadow, f.map))
            throw PreconditionViolated("pullback_lift: map is not a homomorphism to the shadow");

        auto & sig = carrier.signature();
        StructureBuilder b(carrier.signature_ptr(), source.size());
        SymbolId base_id = 0;
        std::vector<std::vector<Element>> preimage(carrier.size());
        for (Element a = 0; a < source.size(); ++a)
            preimage[f(a)].push_back(a);

        for (SymbolId id = 0; id < sig.size(); ++id) {
            if (! sig[id].lifted) {
                for (auto t : source.relation(base_id))
                    b.add(id, t);
                ++base_id;
                continue;
            }
            unsigned k = sig[id].arity;
            Tuple t(k);
            for (auto u : carrier.relation(id)) {
                bool empty = false;
                for (unsigned i = 0; i < k; ++i)
                    if (preimage[u[i]].empty())
                        empty = true;
                if (empty)
                    continue;
                std::vector<std::size_t> pos(k, 0);
                while (true) {
                    for (unsigned i = 0; i < k; ++i)
                        t[i] = preimage[u[i]][pos[i]];
                    b.add(id, t);
                    unsigned i = k;
                    bool done = true;
                    while (i > 0) {
                        --i;
                        if (++pos[i] < preimage[u[i]].size()) {
                            done = false;
                            break;
                        }
                        pos[i] = 0;
                    }
                    if (done)
                        break;
                }
            }
        }
        if (source.has_names())
            b.set_names(source.names());
        return Lift(std::move(b).build(), target.lift_arity(), target.cover_mode());
    }

    auto product(const Structure & a, const Structure & b) -> Structure
    {
        require_same_signature(a.signature_ptr(), b.signature_ptr(), "product");
        unsigned nb = b.size();
        StructureBuilder out(a.signature_ptr(), a.size() * nb);
        Tuple t;
        for (SymbolId r = 0; r < a.signature().size(); ++r) {
            t.resize(a.signature()[r].arity);
            for (auto ta : a.relation(r))
                for (auto tb : b.relation(r)) {
                    for (std::size_t i = 0; i < t.size(); ++i)
                        t[i] = ta[i] * nb + tb[i];
                    out.add(r, t);
                }
        }
        return std::move(out).build();
    }

    auto disjoint_union(const Structure & a, const Structure & b) -> Structure
    {
        require_same_signature(a.signature_ptr(), b.signature_ptr(), "disjoint_union");
        StructureBuilder out(a.signature_ptr(), a.size() + b.size());
        std::vector<Element> left(a.size()), right(b.size());
        for (Element e = 0; e < a.size(); ++e)
            left[e] = e;
        for (Element e = 0; e < b.size(); ++e)
            right[e] = a.size() + e;
        out.add_image(a, left);
        out.add_image(b, right);
        if (a.has_names() && b.has_names()) {
            auto names = a.names();
            names.insert(names.end(), b.names().begin(), b.names().end());
            std::sort(names.begin(), names.end());
            if (std::adjacent_find(names.begin(), names.end()) == names.end()) {
                names = a.names();
                names.insert(names.end(), b.names().begin(), b.names().end());
                out.set_names(std::move(names));
            }
        }
        return std::move(out).build();
    }

    auto disjoint_union(const Lift & a, const Lift & b) -> Lift
    {
        if (a.lift_arity() != b.lift_arity())
            throw PreconditionViolated("disjoint_union: lift arities differ");
        auto mode = a.lift_arity() == 1 ? min_mode(a.cover_mode(), b.cover_mode()) : CoverMode::none;
        if (a.size() == 0)
            mode = b.cover_mode();
        else if (b.size() == 0)
            mode = a.cover_mode();
        return Lift(disjoint_union(a.carrier(), b.carrier()), a.lift_arity(), mode);
    }

    auto induced(const Structure & s, std::span<const Element> elements) -> Structure
    {
        constexpr Element absent = ~Element{0};
        std::vector<Element> index(s.size(), absent);
        for (Element i = 0; i < elements.size(); ++i)
            index[elements[i]] = i;

        StructureBuilder b(s.signature_ptr(), elements.size());
        Tuple t;
        for (SymbolId r = 0; r < s.signature().size(); ++r) {
            for (auto u : s.relation(r)) {
                t.resize(u.size());
                bool inside = true;
                for (std::size_t i = 0; i < u.size() && inside; ++i) {
                    t[i] = index[u[i]];
                    inside = t[i] != absent;
                }
                if (inside)
                    b.add(r, t);
            }
        }
        b.set_names(subset_names(s, elements));
        return std::move(b).build();
    }

    auto image(const Structure & s, std::span<const Element> f, unsigned image_size) -> Structure
    {
        StructureBuilder b(s.signature_ptr(), image_size);
        b.add_image(s, f);
        return std::move(b).build();
    }

    auto image_onto(const Structure & s, std::span<const Element> f) -> Structure
    {
        std::vector<Element> hit(f.begin(), f.end());
        std::sort(hit.begin(), hit.end());
        hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
        std::vector<Element> g(f.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            g[i] = std::lower_bound(hit.begin(), hit.end(), f[i]) - hit.begin();
        return image(s, g, hit.size());
    }

    auto relabel(const Structure & s, std::span<const Element> perm) -> Structure
    {
        StructureBuilder b(s.signature_ptr(), s.size());
        b.add_image(s, perm);
        if (s.has_names()) {
            std::vector<std::string> names(s.size());
            for (Element e = 0; e < s.size(); ++e)
                names[perm[e]] = s.element_name(e);
            b.set_names(std::move(names));
        }
        return std::move(b).build();
    }

    auto all_loops_point(const SignaturePtr & signature) -> Structure
    {
        StructureBuilder b(signature, 1);
        for (SymbolId r = 0; r < signature->size(); ++r)
            b.add(r, Tuple((*signature)[r].arity, 0));
        return std::move(b).build();
    }

    auto empty_structure(const SignaturePtr & signature) -> Structure
    {
        return StructureBuilder(signature, 0).build();
    }

    auto rebind(const Structure & s, const SignaturePtr & signature) -> Structure
    {
        require_same_signature(s.signature_ptr(), signature, "rebind");
        StructureBuilder b(signature, s.size());
        for (SymbolId r = 0; r < signature->size(); ++r)
            for (auto t : s.relation(r))
                b.add(r, t);
        if (s.has_names())
            b.set_names(s.names());
        return std::move(b).build();
    }

    auto restrict_tuples_to(const Structure & s, std::span<const Element> keep) -> Structure
    {
        std::vector<bool> kept(s.size(), false);
        for (auto e : keep)
            kept[e] = true;
        StructureBuilder b(s.signature_ptr(), s.size());
        for (SymbolId r = 0; r < s.signature().size(); ++r)
            for (auto t : s.relation(r))
                if (std::all_of(t.begin(), t.end(), [&](Element e) { return kept[e]; }))
                    b.add(r, t);
        if (s.has_names())
            b.set_names(s.names());
        return std::move(b).build();
    }
}
