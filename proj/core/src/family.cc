#include <lifts/errors.hh>
#include <lifts/family.hh>
#include <lifts/text_format.hh>

namespace lifts
{
    auto PatternFamily::hom_mode(std::size_t pattern) const -> HomMode
    {
        if (constraints.empty())
            return HomMode(mode);
        return HomMode(mode, constraints[pattern]);
    }

    auto PatternFamily::has_partial_constraints() const -> bool
    {
        for (auto & c : constraints)
            if ((mode == HomKind::injective && c.separated) || (mode == HomKind::full && ! c.free_tuples.empty()))
                return true;
        return false;
    }

    auto PatternFamily::pattern_name(std::size_t pattern) const -> std::string
    {
        if (pattern < names.size())
            return names[pattern];
        return "F" + std::to_string(pattern + 1);
    }

    namespace
    {
        auto common_lift_arity(const Signature & sig) -> unsigned
        {
            unsigned r = 0;
            for (auto id : sig.lifted_symbols()) {
                if (r != 0 && sig[id].arity != r)
                    throw PreconditionViolated("lifted symbols of different arities");
                r = sig[id].arity;
            }
            return r == 0 ? 1 : r;
        }
    }

    auto make_family(const SignaturePtr & sig, const std::vector<Structure> & patterns, HomKind mode) -> PatternFamily
    {
        PatternFamily f;
        f.signature = sig;
        f.lift_arity = common_lift_arity(*sig);
        f.mode = mode;
        for (auto & p : patterns) {
            require_same_signature(sig, p.signature_ptr(), "make_family");
            f.patterns.emplace_back(p, f.lift_arity, detect_cover_mode(p, f.lift_arity));
        }
        return f;
    }

    auto parse_family(std::string_view text) -> PatternFamily
    {
        auto doc = parse_document(text);
        SignaturePtr sig;
        if (! doc.structures.empty())
            sig = doc.structures.front().second.signature_ptr();
        else if (! doc.signatures.empty())
            sig = doc.signatures.back().second;
        else
            throw ParseError("a pattern family needs a signature", 1, 1);

        std::vector<Structure> patterns;
        std::vector<std::string> names;
        for (auto & [name, s] : doc.structures) {
            if (s.signature_ptr() != sig)
                throw ParseError("pattern " + name + " uses a different signature", 1, 1);
            patterns.push_back(s);
            names.push_back(name);
        }
        PatternFamily f;
        try {
            f = make_family(sig, patterns, doc.mode.value_or(HomKind::plain));
        }
        catch (const PreconditionViolated & e) {
            throw ParseError(e.what(), 1, 1);
        }
        f.names = std::move(names);

        if (! doc.constraints.empty()) {
            if (f.mode == HomKind::plain)
                throw ParseError("constraints need mode injective or full", 1, 1);
            f.constraints.resize(f.patterns.size());
            for (auto & c : doc.constraints) {
                std::size_t i = 0;
                while (f.names[i] != c.structure)
                    ++i;
                if (f.mode == HomKind::injective) {
                    if (! c.partial.free_tuples.empty())
                        throw ParseError("free tuples need mode full", 1, 1);
                    f.constraints[i].separated = c.partial.separated;
                }
                else {
                    if (c.partial.separated && ! c.partial.separated->empty())
                        throw ParseError("separated pairs need mode injective", 1, 1);
                    f.constraints[i].free_tuples = c.partial.free_tuples;
                }
            }
        }
        return f;
    }

    auto write_family(const PatternFamily & family) -> std::string
    {
        Document doc;
        std::string sig_name = family.signature->name().empty() ? "S" : family.signature->name();
        doc.signatures.emplace_back(sig_name, family.signature);
        for (std::size_t i = 0; i < family.patterns.size(); ++i)
            doc.structures.emplace_back(family.pattern_name(i), family.patterns[i].carrier());
        doc.mode = family.mode;
        for (std::size_t i = 0; i < family.constraints.size(); ++i) {
            auto & c = family.constraints[i];
            bool separated = family.mode == HomKind::injective && c.separated;
            bool free = family.mode == HomKind::full && ! c.free_tuples.empty();
            if (! separated && ! free)
                continue;
            StructureConstraints sc{family.pattern_name(i), {}};
            if (separated)
                sc.partial.separated = c.separated;
            if (free)
                sc.partial.free_tuples = c.free_tuples;
            doc.constraints.push_back(std::move(sc));
        }
        return write_document(doc);
    }
}
