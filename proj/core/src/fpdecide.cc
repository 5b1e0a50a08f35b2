#include <lifts/canonical.hh>
#include <lifts/enumerate.hh>
#include <lifts/errors.hh>
#include <lifts/fpdecide.hh>
#include <lifts/homsearch.hh>
#include <lifts/operations.hh>
#include <lifts/shape.hh>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace lifts
{
    namespace
    {
        // Colours r-tuples of A one at a time, checking the patterns each time the
        // lift on a prefix 0..j of the universe is complete.
        class ColouringSearch
        {
        private:
            const Structure & _a;
            const PatternFamily & _family;
            std::vector<SymbolId> _colours;
            std::vector<SymbolId> _input_to_lifted;
            unsigned _r, _n;
            std::vector<Tuple> _tuples;          // r-tuples ordered by largest coordinate
            std::vector<std::size_t> _group_end; // _tuples[..end) have coordinates <= j
            std::vector<unsigned> _choice;

            auto sub_lift(unsigned j) const -> Structure
            {
                StructureBuilder b(_family.signature, j + 1);
                for (SymbolId r = 0; r < _a.signature().size(); ++r)
                    for (auto t : _a.relation(r))
                        if (std::all_of(t.begin(), t.end(), [&](Element e) { return e <= j; }))
                            b.add(_input_to_lifted[r], t);
                for (std::size_t i = 0; i < _group_end[j]; ++i)
                    b.add(_colours[_choice[i]], _tuples[i]);
                return std::move(b).build();
            }

            auto search(std::size_t i) -> bool
            {
                if (i == _tuples.size())
                    return true;
                for (unsigned c = 0; c < _colours.size(); ++c) {
                    _choice[i] = c;
                    auto & t = _tuples[i];
                    unsigned j = *std::max_element(t.begin(), t.end());
                    if (i + 1 == _group_end[j] && ! avoids_patterns(sub_lift(j), _family))
                        continue;
                    if (search(i + 1))
                        return true;
                }
                return false;
            }

        public:
            ColouringSearch(const Structure & a, const PatternFamily & family) :
                _a(a),
                _family(family),
                _colours(family.colours()),
                _r(family.lift_arity),
                _n(a.size())
            {
                _input_to_lifted = family.signature->base_symbols();
                if (_n == 0)
                    return;
                Tuple t(_r, 0);
                while (true) {
                    _tuples.push_back(t);
                    unsigned i = _r;
                    bool done = true;
                    while (i-- > 0) {
                        if (++t[i] < _n) {
                            done = false;
                            break;
                        }
                        t[i] = 0;
                    }
                    if (done)
                        break;
                }
                std::stable_sort(_tuples.begin(), _tuples.end(), [](const Tuple & x, const Tuple & y) {
                    return *std::max_element(x.begin(), x.end()) < *std::max_element(y.begin(), y.end());
                });
                _group_end.assign(_n, 0);
                for (std::size_t i = 0; i < _tuples.size(); ++i)
                    _group_end[*std::max_element(_tuples[i].begin(), _tuples[i].end())] = i + 1;
                _choice.assign(_tuples.size(), 0);
            }

            auto search_space_bits() const -> double
            {
                return _tuples.size() * std::log2(std::max<std::size_t>(1, _colours.size()));
            }

            auto run() -> std::optional<Lift>
            {
                if (_n == 0 || _colours.empty()) {
                    StructureBuilder b(_family.signature, _n);
                    for (SymbolId r = 0; r < _a.signature().size(); ++r)
                        for (auto t : _a.relation(r))
                            b.add(_input_to_lifted[r], t);
                    auto carrier = std::move(b).build();
                    if (! avoids_patterns(carrier, _family))
                        return std::nullopt;
                    auto mode = _n == 0 ? CoverMode::partition : CoverMode::none;
                    return Lift(std::move(carrier), _r, mode);
                }
                if (! search(0))
                    return std::nullopt;
                auto carrier = sub_lift(_n - 1);
                if (_a.has_names()) {
                    StructureBuilder b(_family.signature, _n);
                    for (SymbolId r = 0; r < carrier.signature().size(); ++r)
                        for (auto t : carrier.relation(r))
                            b.add(r, t);
                    b.set_names(_a.names());
                    carrier = std::move(b).build();
                }
                return Lift(std::move(carrier), _r, CoverMode::partition);
            }
        };

        auto require_plain_monadic(const PatternFamily & f, const std::string & what) -> void
        {
            if (f.mode != HomKind::plain || f.has_partial_constraints())
                throw PreconditionViolated(what + " needs a plain family without partial constraints");
            if (f.lift_arity != 1)
                throw PreconditionViolated(what + " needs a monadic family");
        }

        auto sort_canonically(std::vector<Structure> & v) -> void
        {
            std::vector<std::pair<std::vector<unsigned>, std::size_t>> keys;
            for (std::size_t i = 0; i < v.size(); ++i)
                keys.emplace_back(canonical_code(v[i]), i);
            std::sort(keys.begin(), keys.end());
            std::vector<Structure> sorted;
            for (auto & [code, i] : keys)
                sorted.push_back(std::move(v[i]));
            v = std::move(sorted);
        }

        // set partitions of 0..n-1 as restricted growth strings
        template <typename Fn_>
        auto for_each_partition(unsigned n, Fn_ && fn) -> void
        {
            if (n == 0) {
                fn(std::vector<Element>{});
                return;
            }
            std::vector<Element> rgs(n, 0), top(n, 0);
            while (true) {
                fn(rgs);
                int i = n - 1;
                while (i > 0 && rgs[i] == top[i - 1] + 1)
                    --i;
                if (i <= 0)
                    return;
                ++rgs[i];
                top[i] = std::max(top[i - 1], rgs[i]);
                for (unsigned j = i + 1; j < n; ++j) {
                    rgs[j] = 0;
                    top[j] = top[i];
                }
            }
        }
    }

    auto is_vacuous_pattern(const Structure & p) -> bool
    {
        auto lifted = p.signature().lifted_symbols();
        std::set<Tuple> seen;
        for (auto id : lifted)
            for (auto t : p.relation(id))
                if (! seen.insert(Tuple(t.begin(), t.end())).second)
                    return true;
        return false;
    }

    auto avoids_patterns(const Structure & lift, const PatternFamily & family) -> bool
    {
        for (std::size_t i = 0; i < family.patterns.size(); ++i)
            if (maps_to(family.patterns[i].carrier(), lift, family.hom_mode(i)))
                return false;
        return true;
    }

    auto fp_membership(const Structure & a, const PatternFamily & family, const FpLimits & limits)
        -> std::optional<Lift>
    {
        require_same_signature(family.input_signature(), a.signature_ptr(), "fp_membership");
        ColouringSearch search(a, family);
        if (search.search_space_bits() > limits.max_search_bits)
            throw GuardExceeded("fp_membership: colouring space of 2^" + std::to_string(search.search_space_bits()) +
                " exceeds the limit");
        return search.run();
    }

    auto partition_patterns(const PatternFamily & family, const FpLimits & limits) -> std::vector<Structure>
    {
        auto colours = family.colours();
        auto & sig = family.signature;
        std::vector<Structure> partitioned;
        for (auto & lift : family.patterns) {
            auto & p = lift.carrier();
            if (colours.empty()) {
                partitioned.push_back(p);
                continue;
            }
            if (is_vacuous_pattern(p))
                continue;
            std::vector<Element> uncoloured;
            for (Element e = 0; e < p.size(); ++e)
                if (lifted_classes(p, std::vector<Element>{e}).empty())
                    uncoloured.push_back(e);
            double variants = std::pow(double(colours.size()), double(uncoloured.size()));
            if (variants > limits.max_expansion)
                throw GuardExceeded("normalize_family: too many colourings of uncoloured elements");
            std::vector<unsigned> pick(uncoloured.size(), 0);
            while (true) {
                StructureBuilder b(sig, p.size());
                for (SymbolId r = 0; r < sig->size(); ++r)
                    for (auto t : p.relation(r))
                        b.add(r, t);
                for (std::size_t i = 0; i < uncoloured.size(); ++i)
                    b.add(colours[pick[i]], {uncoloured[i]});
                partitioned.push_back(std::move(b).build());
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
                    break;
            }
        }

        return partitioned;
    }

    auto normalize_family(const PatternFamily & family, const FpLimits & limits) -> PatternFamily
    {
        require_plain_monadic(family, "normalize_family");
        auto & sig = family.signature;

        auto partitioned = partition_patterns(family, limits);

        // closure under images, cores, one per isomorphism class
        std::map<std::vector<unsigned>, Structure> closed;
        for (auto & p : partitioned)
            for (auto & img : hom_images(p, limits.max_image_elements)) {
                if (is_vacuous_pattern(img))
                    continue;
                auto core = core_of(img);
                closed.emplace(canonical_code(core), std::move(core));
            }

        std::vector<Structure> all;
        for (auto & [code, s] : closed)
            all.push_back(s);
        std::vector<Structure> minimal;
        for (std::size_t i = 0; i < all.size(); ++i) {
            bool above = false;
            for (std::size_t j = 0; j < all.size() && ! above; ++j)
                above = i != j && maps_to(all[j], all[i]);
            if (! above)
                minimal.push_back(all[i]);
        }
        sort_canonically(minimal);
        return make_family(sig, minimal, HomKind::plain);
    }

    namespace
    {
        // The family over `sig` (same input symbols, a superset of its colours by name), with
        // one single-point pattern per colour the family does not know, so its language is unchanged.
        auto widen_colours(const PatternFamily & f, const SignaturePtr & sig) -> PatternFamily
        {
            std::vector<SymbolId> to(f.signature->size());
            for (SymbolId r = 0; r < f.signature->size(); ++r)
                to[r] = *sig->find((*f.signature)[r].name);
            PatternFamily out;
            out.signature = sig;
            out.lift_arity = f.lift_arity;
            out.mode = f.mode;
            for (std::size_t i = 0; i < f.patterns.size(); ++i) {
                auto & p = f.patterns[i].carrier();
                StructureBuilder b(sig, p.size());
                for (SymbolId r = 0; r < p.signature().size(); ++r)
                    for (auto t : p.relation(r))
                        b.add(to[r], t);
                out.patterns.emplace_back(std::move(b).build(), f.lift_arity, f.patterns[i].cover_mode());
                out.names.push_back(f.pattern_name(i));
            }
            for (auto c : sig->lifted_symbols())
                if (! f.signature->find((*sig)[c].name)) {
                    StructureBuilder b(sig, 1);
                    b.add(c, {0});
                    out.patterns.emplace_back(std::move(b).build(), f.lift_arity, CoverMode::partition);
                    out.names.push_back("no_" + (*sig)[c].name);
                }
            return out;
        }
    }

    auto union_families(const PatternFamily & a, const PatternFamily & b) -> PatternFamily
    {
        if (a.mode != HomKind::plain || b.mode != HomKind::plain || a.has_partial_constraints() ||
            b.has_partial_constraints())
            throw PreconditionViolated("union_families needs plain families without partial constraints");
        if (a.lift_arity != b.lift_arity)
            throw PreconditionViolated("union_families: lift arities differ");
        if (! same_signature(a.signature, b.signature)) {
            require_same_signature(a.input_signature(), b.input_signature(), "union_families");
            if (a.lift_arity != 1)
                throw PreconditionViolated("union_families: colour sets differ in a non-monadic family");
            std::vector<Symbol> colours;
            for (auto c : a.colours())
                colours.push_back((*a.signature)[c]);
            for (auto c : b.colours())
                if (! a.signature->find((*b.signature)[c].name))
                    colours.push_back((*b.signature)[c]);
            auto sig = Signature::extend(a.input_signature(), colours, a.signature->name());
            return union_families(widen_colours(a, sig), widen_colours(b, sig));
        }

        PatternFamily out;
        out.signature = a.signature;
        out.lift_arity = a.lift_arity;
        out.mode = HomKind::plain;
        for (std::size_t i = 0; i < a.patterns.size(); ++i)
            for (std::size_t j = 0; j < b.patterns.size(); ++j) {
                out.patterns.push_back(disjoint_union(a.patterns[i], b.patterns[j]));
                out.names.push_back(a.pattern_name(i) + "_" + b.pattern_name(j));
            }
        return out;
    }

    auto expand_partial_constraints(const PatternFamily & family, const FpLimits & limits) -> PatternFamily
    {
        PatternFamily out;
        out.signature = family.signature;
        out.lift_arity = family.lift_arity;
        out.mode = family.mode;
        auto add = [&](Structure s, const std::string & name) {
            if (out.patterns.size() >= limits.max_expansion)
                throw GuardExceeded("expand_partial_constraints: more than " + std::to_string(limits.max_expansion) +
                    " patterns");
            auto mode = detect_cover_mode(s, family.lift_arity);
            out.patterns.emplace_back(std::move(s), family.lift_arity, mode);
            out.names.push_back(name);
        };

        for (std::size_t i = 0; i < family.patterns.size(); ++i) {
            auto & p = family.patterns[i].carrier();
            auto mode = family.hom_mode(i);
            auto name = family.pattern_name(i);

            if (family.mode == HomKind::injective && mode.partial.separated) {
                auto & separated = *mode.partial.separated;
                if (p.size() > 10)
                    throw GuardExceeded("expand_partial_constraints: pattern " + name + " has more than 10 elements");
                std::set<std::vector<unsigned>> seen;
                unsigned variant = 0;
                for_each_partition(p.size(), [&](const std::vector<Element> & block) {
                    for (auto & [x, y] : separated)
                        if (x != y && block[x] == block[y])
                            return;
                    auto img = image_onto(p, block);
                    if (is_vacuous_pattern(img) || ! seen.insert(canonical_code(img)).second)
                        return;
                    add(std::move(img), name + "_" + std::to_string(++variant));
                });
            }
            else if (family.mode == HomKind::full && ! mode.partial.free_tuples.empty()) {
                auto & free = mode.partial.free_tuples;
                if (free.size() > 20 || (std::size_t{1} << free.size()) > limits.max_expansion)
                    throw GuardExceeded("expand_partial_constraints: pattern " + name + " has too many free tuples");
                for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
                    StructureBuilder b(p.signature_ptr(), p.size());
                    for (SymbolId r = 0; r < p.signature().size(); ++r)
                        for (auto t : p.relation(r))
                            b.add(r, t);
                    for (std::size_t j = 0; j < free.size(); ++j)
                        if (mask & (std::size_t{1} << j))
                            b.add(free[j].symbol, free[j].tuple);
                    if (p.has_names())
                        b.set_names(p.names());
                    add(std::move(b).build(), name + "_" + std::to_string(mask + 1));
                }
            }
            else
                add(p, name);
        }
        return out;
    }

    auto to_string(Verdict v) -> std::string
    {
        return v == Verdict::finite_union_csp ? "finite_union_csp" : "not_finite_union";
    }

    auto decide_finite_union_csp(const PatternFamily & family, const FpLimits & limits) -> DecisionOutcome
    {
        DecisionOutcome out;
        out.normalized = normalize_family(family, limits);
        auto & norm = out.normalized;
        auto input = family.input_signature();

        // the language is closed under inverse homomorphisms, so it is everything iff it holds the all-loops point
        auto top = all_loops_point(input);
        if (fp_membership(top, norm, limits)) {
            out.verdict = Verdict::finite_union_csp;
            out.templates = {top};
            out.templates_known = true;
            out.note = "degenerate: every structure belongs to the language";
            return out;
        }

        for (auto & p : norm.patterns)
            if (! is_forest(p.carrier())) {
                out.verdict = Verdict::not_finite_union;
                out.witness = p;
                return out;
            }

        out.verdict = Verdict::finite_union_csp;
        try {
            std::vector<Structure> obstructions;
            for (auto & p : norm.patterns)
                obstructions.push_back(p.carrier());
            std::vector<Structure> templates;
            for (auto & d : forest_family_duals(norm.signature, obstructions, limits.duality)) {
                // a partition lift only ever lands on elements carrying some colour
                std::vector<Element> coloured;
                for (Element e = 0; e < d.size(); ++e)
                    if (! lifted_classes(d, std::vector<Element>{e}).empty())
                        coloured.push_back(e);
                templates.push_back(rebind(shadow(induced(d, coloured)), input));
            }
            out.templates = prune_templates(std::move(templates));
            out.templates_known = true;
        }
        catch (const GuardExceeded & e) {
            out.note = std::string("templates not computed: ") + e.what();
        }
        return out;
    }

    auto verify_shadow_duality(const PatternFamily & family, const std::vector<Structure> & templates,
        unsigned max_size, const FpLimits & limits) -> DualityCheck
    {
        auto input = family.input_signature();
        for (auto & t : templates)
            require_same_signature(input, t.signature_ptr(), "verify_shadow_duality");
        DualityCheck result;
        enumerate_structures(input, max_size, [&](const Structure & a) {
            bool member = fp_membership(a, family, limits).has_value();
            bool covered = std::any_of(templates.begin(), templates.end(),
                [&](const Structure & t) { return maps_to(a, t); });
            if (member != covered) {
                result.holds = false;
                result.counterexample = a;
                return false;
            }
            return true;
        });
        return result;
    }
}
