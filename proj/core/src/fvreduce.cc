#include <lifts/canonical.hh>
#include <lifts/errors.hh>
#include <lifts/fvreduce.hh>
#include <lifts/homsearch.hh>
#include <lifts/operations.hh>
#include <lifts/shape.hh>

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

namespace lifts
{
    namespace
    {
        auto copy_colours(const Structure & from, const std::vector<SymbolId> & from_ids, StructureBuilder & to,
            const std::vector<SymbolId> & to_ids) -> void
        {
            for (std::size_t c = 0; c < from_ids.size(); ++c)
                for (auto t : from.relation(from_ids[c]))
                    to.add(to_ids[c], t);
        }

        auto colour_ids(const Basis & basis) -> std::vector<SymbolId>
        {
            return basis.beta_lifted->lifted_symbols();
        }

        // A block placed on a hom image: coordinate i is an element of the image, or fresh (-1).
        struct Placement
        {
            SymbolId block;
            std::vector<int> coords;
            std::uint64_t covers;
        };

        class CoverSearch
        {
        private:
            const Basis & _basis;
            const Structure & _image;
            std::vector<TupleRef> _image_tuples;
            std::vector<Placement> _placements;
            std::vector<SymbolId> _colours_in_image;
            const GPrimeLimits & _limits;
            unsigned long long _nodes = 0;
            std::vector<std::size_t> _chosen;

        public:
            std::map<std::vector<unsigned>, Structure> found;

            CoverSearch(const Basis & basis, const Structure & image, const std::vector<SymbolId> & colours,
                const GPrimeLimits & limits) :
                _basis(basis),
                _image(image),
                _colours_in_image(colours),
                _limits(limits)
            {
                for (SymbolId r = 0; r < basis.input->size(); ++r)
                    for (auto t : image.relation(r))
                        _image_tuples.push_back({r, Tuple(t.begin(), t.end())});
                if (_image_tuples.size() > 64)
                    throw GuardExceeded("build_gprime: a pattern image has more than 64 tuples");
                for (SymbolId b = 0; b < basis.blocks.size(); ++b)
                    place(b);
            }

            auto place(SymbolId b) -> void
            {
                auto & block = _basis.blocks[b];
                unsigned size = block.size();
                std::vector<int> coords(size, -1);
                std::vector<bool> used(_image.size(), false);
                auto record = [&]() {
                    std::uint64_t covers = 0;
                    Tuple mapped;
                    for (SymbolId r = 0; r < _basis.input->size(); ++r)
                        for (auto s : block.relation(r)) {
                            mapped.clear();
                            bool inside = true;
                            for (auto e : s) {
                                inside = inside && coords[e] >= 0;
                                mapped.push_back(coords[e] < 0 ? 0 : coords[e]);
                            }
                            if (! inside)
                                continue;
                            for (std::size_t j = 0; j < _image_tuples.size(); ++j)
                                if (_image_tuples[j].symbol == r && _image_tuples[j].tuple == mapped)
                                    covers |= std::uint64_t{1} << j;
                        }
                    if (covers) {
                        if (_placements.size() >= _limits.max_placements)
                            throw GuardExceeded("build_gprime: more than " + std::to_string(_limits.max_placements) +
                                " block placements");
                        _placements.push_back({b, coords, covers});
                    }
                };
                std::function<void(unsigned)> go = [&](unsigned i) {
                    if (i == size) {
                        record();
                        return;
                    }
                    coords[i] = -1;
                    go(i + 1);
                    for (Element e = 0; e < _image.size(); ++e)
                        if (! used[e]) {
                            used[e] = true;
                            coords[i] = e;
                            go(i + 1);
                            used[e] = false;
                        }
                    coords[i] = -1;
                };
                go(0);
            }

            // The chosen placements as a lift; fresh elements get colours from `fresh_colours`.
            auto assemble(const std::vector<unsigned> & fresh_colours) const -> Structure
            {
                unsigned fresh = 0;
                for (auto p : _chosen)
                    for (auto c : _placements[p].coords)
                        fresh += c < 0;
                StructureBuilder b(_basis.beta_lifted, _image.size() + fresh);
                auto colours = colour_ids(_basis);
                copy_colours(_image, _colours_in_image, b, colours);
                unsigned next = _image.size();
                Tuple t;
                for (auto p : _chosen) {
                    t.clear();
                    for (auto c : _placements[p].coords) {
                        if (c >= 0)
                            t.push_back(c);
                        else {
                            if (! fresh_colours.empty())
                                b.add(colours[fresh_colours[next - _image.size()]], {next});
                            t.push_back(next++);
                        }
                    }
                    b.add(_placements[p].block, t);
                }
                return std::move(b).build();
            }

            auto fresh_count() const -> unsigned
            {
                unsigned fresh = 0;
                for (auto p : _chosen)
                    for (auto c : _placements[p].coords)
                        fresh += c < 0;
                return fresh;
            }

            auto irredundant() const -> bool
            {
                for (auto p : _chosen) {
                    std::uint64_t others = 0;
                    for (auto q : _chosen)
                        if (q != p)
                            others |= _placements[q].covers;
                    if ((_placements[p].covers & ~others) == 0)
                        return false;
                }
                return true;
            }

            auto emit() -> void
            {
                auto colours = colour_ids(_basis);
                unsigned fresh = fresh_count();
                std::vector<unsigned> pick(fresh, 0);
                while (true) {
                    auto g = assemble(colours.empty() ? std::vector<unsigned>{} : pick);
                    found.emplace(canonical_code(g), std::move(g));
                    if (colours.empty())
                        return;
                    std::size_t i = pick.size();
                    bool done = true;
                    while (i-- > 0) {
                        if (++pick[i] < colours.size()) {
                            done = false;
                            break;
                        }
                        pick[i] = 0;
                    }
                    if (done)
                        return;
                }
            }

            auto search(std::uint64_t covered) -> void
            {
                if (++_nodes > _limits.max_nodes)
                    throw GuardExceeded("build_gprime: cover enumeration exceeded its node limit");
                std::uint64_t all = _image_tuples.size() == 64 ? ~std::uint64_t{0}
                                                               : (std::uint64_t{1} << _image_tuples.size()) - 1;
                if (covered == all) {
                    if (irredundant())
                        emit();
                    return;
                }
                unsigned lowest = std::countr_zero(~covered & all);
                for (std::size_t p = 0; p < _placements.size(); ++p) {
                    if (! ((_placements[p].covers >> lowest) & 1))
                        continue;
                    if (std::find(_chosen.begin(), _chosen.end(), p) != _chosen.end())
                        continue;
                    _chosen.push_back(p);
                    if (is_forest(assemble({})))
                        search(covered | _placements[p].covers);
                    _chosen.pop_back();
                }
            }
        };
    }

    auto build_basis(const PatternFamily & family) -> Basis
    {
        if (family.lift_arity != 1)
            throw PreconditionViolated("build_basis needs a monadic family");
        Basis basis;
        basis.input = family.input_signature();
        std::map<std::vector<unsigned>, Structure> blocks;
        for (auto & p : family.patterns) {
            auto s = rebind(shadow(p), basis.input);
            for (auto & piece : biconnected_components(s)) {
                if (is_trivial_block(piece))
                    continue;
                auto canonical = canonical_structure(piece.structure);
                auto code = canonical_code(canonical);
                StructureBuilder b(basis.input, canonical.size());
                for (SymbolId r = 0; r < basis.input->size(); ++r)
                    for (auto t : canonical.relation(r))
                        b.add(r, t);
                blocks.emplace(std::move(code), std::move(b).build());
            }
        }

        // One tuple of each input symbol on distinct points, so that every tuple of every
        // structure lies in the image of some block and theta undoes psi.
        for (SymbolId r = 0; r < basis.input->size(); ++r) {
            unsigned arity = (*basis.input)[r].arity;
            StructureBuilder b(basis.input, arity);
            Tuple t(arity);
            for (unsigned i = 0; i < arity; ++i)
                t[i] = i;
            b.add(r, t);
            auto single = std::move(b).build();
            auto code = canonical_code(single);
            blocks.emplace(std::move(code), canonical_structure(single));
        }

        std::vector<std::string> taken;
        for (auto id : family.colours())
            taken.push_back((*family.signature)[id].name);
        std::vector<Symbol> symbols;
        for (auto & [code, block] : blocks) {
            std::string name = "R" + std::to_string(symbols.size() + 1);
            while (std::find(taken.begin(), taken.end(), name) != taken.end())
                name += "_";
            symbols.push_back({name, block.size(), false});
            basis.blocks.push_back(block);
        }
        basis.beta = Signature::make(symbols, "beta");
        std::vector<Symbol> colours;
        for (auto id : family.colours()) {
            colours.push_back((*family.signature)[id]);
            basis.colours.push_back(id);
        }
        basis.beta_lifted = Signature::extend(basis.beta, colours, "beta");
        return basis;
    }

    auto psi(const Structure & a, const Basis & basis) -> Structure
    {
        require_same_signature(basis.input, a.signature_ptr(), "psi");
        StructureBuilder b(basis.beta, a.size());
        for (SymbolId i = 0; i < basis.blocks.size(); ++i)
            for_each_hom(basis.blocks[i], a, HomMode{}, [&](const Homomorphism & h) {
                b.add(i, h.map);
                return true;
            });
        if (a.has_names())
            b.set_names(a.names());
        return std::move(b).build();
    }

    auto theta(const Structure & beta_structure, const Basis & basis) -> Structure
    {
        require_same_signature(basis.beta, beta_structure.signature_ptr(), "theta");
        StructureBuilder b(basis.input, beta_structure.size());
        for (SymbolId i = 0; i < basis.blocks.size(); ++i)
            for (auto t : beta_structure.relation(i))
                b.add_image(basis.blocks[i], t);
        if (beta_structure.has_names())
            b.set_names(beta_structure.names());
        return std::move(b).build();
    }

    auto psi_lift(const Structure & lifted, const Basis & basis, const PatternFamily & family) -> Structure
    {
        auto base = psi(rebind(shadow(lifted), basis.input), basis);
        StructureBuilder b(basis.beta_lifted, lifted.size());
        for (SymbolId i = 0; i < basis.blocks.size(); ++i)
            for (auto t : base.relation(i))
                b.add(i, t);
        copy_colours(lifted, family.colours(), b, colour_ids(basis));
        return std::move(b).build();
    }

    auto theta_lift(const Structure & lifted, const Basis & basis, const PatternFamily & family) -> Structure
    {
        StructureBuilder beta_part(basis.beta, lifted.size());
        for (SymbolId i = 0; i < basis.blocks.size(); ++i)
            for (auto t : lifted.relation(i))
                beta_part.add(i, t);
        auto base = theta(std::move(beta_part).build(), basis);
        StructureBuilder b(family.signature, lifted.size());
        auto input_ids = family.signature->base_symbols();
        for (SymbolId r = 0; r < basis.input->size(); ++r)
            for (auto t : base.relation(r))
                b.add(input_ids[r], t);
        copy_colours(lifted, colour_ids(basis), b, family.colours());
        return std::move(b).build();
    }

    auto build_gprime(const PatternFamily & family, const Basis & basis, const GPrimeLimits & limits,
        const FpLimits & fp_limits) -> PatternFamily
    {
        if (family.mode != HomKind::plain || family.has_partial_constraints() || family.lift_arity != 1)
            throw PreconditionViolated("build_gprime needs a plain monadic family");

        std::map<std::vector<unsigned>, Structure> members;
        std::map<std::vector<unsigned>, bool> images_seen;
        for (auto & pattern : partition_patterns(family, fp_limits))
            for (auto & image : hom_images(pattern, fp_limits.max_image_elements)) {
                if (is_vacuous_pattern(image) || ! images_seen.emplace(canonical_code(image), true).second)
                    continue;
                CoverSearch search(basis, image, family.colours(), limits);
                search.search(0);
                members.merge(search.found);
            }

        // drop members that receive a homomorphism from another member
        std::vector<Structure> all;
        for (auto & [code, g] : members)
            all.push_back(g);
        std::vector<Structure> kept;
        for (std::size_t i = 0; i < all.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < all.size() && ! redundant; ++j)
                if (i != j && maps_to(all[j], all[i]))
                    redundant = ! maps_to(all[i], all[j]) || j < i;
            if (! redundant)
                kept.push_back(all[i]);
        }
        auto out = make_family(basis.beta_lifted, kept, HomKind::plain);
        for (std::size_t i = 0; i < out.patterns.size(); ++i)
            out.names.push_back("G" + std::to_string(i + 1));
        return out;
    }

    auto girth_threshold(const PatternFamily & family) -> unsigned
    {
        unsigned k = 0;
        for (auto & p : family.patterns)
            k = std::max(k, p.size());
        return k;
    }

    auto reduce_forward(const Structure & a, const PatternFamily & family, const FpLimits & limits) -> ForwardReduction
    {
        ForwardReduction out{build_basis(family), {}, {}, {}, false, {}};
        out.image = psi(a, out.basis);
        out.gprime = build_gprime(family, out.basis, {}, limits);
        try {
            std::vector<Structure> obstructions;
            for (auto & g : out.gprime.patterns)
                obstructions.push_back(g.carrier());
            std::vector<Structure> templates;
            for (auto & d : forest_family_duals(out.basis.beta_lifted, obstructions, limits.duality)) {
                std::vector<Element> coloured;
                for (Element e = 0; e < d.size(); ++e)
                    if (out.basis.colours.empty() || ! lifted_classes(d, std::vector<Element>{e}).empty())
                        coloured.push_back(e);
                templates.push_back(rebind(shadow(induced(d, coloured)), out.basis.beta));
            }
            out.templates = prune_templates(std::move(templates));
            out.templates_known = true;
        }
        catch (const GuardExceeded & e) {
            out.note = std::string("templates not computed: ") + e.what();
        }
        return out;
    }

    auto reduce_backward(const Structure & b, const PatternFamily & family, const Basis & basis) -> Structure
    {
        unsigned k = girth_threshold(family);
        if (auto c = cycle_at_most(b, k))
            throw PreconditionViolated("girth " + std::to_string(c->length()) + " does not exceed " +
                std::to_string(k) + ": cycle " + describe(*c, b));
        return theta(b, basis);
    }
}
