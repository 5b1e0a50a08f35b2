#include "lexer.hh"

#include <lifts/text_format.hh>

#include <fstream>
#include <map>
#include <sstream>

namespace lifts
{
    using detail::Token;
    using detail::TokenKind;
    using detail::TokenStream;

    namespace
    {
        auto parse_signature(TokenStream & in, Document & doc) -> void
        {
            auto & name = in.word("signature name");
            if (doc.signature(name.text))
                in.fail("signature " + name.text + " declared twice", name);
            in.expect("{");
            std::vector<Symbol> symbols;
            while (! in.accept("}")) {
                auto & sym = in.word("symbol name");
                in.expect("/");
                auto & at = in.peek();
                Symbol s{sym.text, in.number("arity"), false};
                if (s.arity == 0)
                    in.fail("arity must be at least 1", at);
                if (in.accept("lift"))
                    s.lifted = true;
                for (auto & other : symbols)
                    if (other.name == s.name)
                        in.fail("duplicate symbol " + s.name, sym);
                symbols.push_back(std::move(s));
                in.accept(";");
                in.accept(",");
            }
            doc.signatures.emplace_back(name.text, Signature::make(std::move(symbols), name.text));
        }

        auto parse_element(TokenStream & in, const std::map<std::string, Element> & universe) -> Element
        {
            auto & t = in.word("element");
            auto it = universe.find(t.text);
            if (it == universe.end())
                in.fail("coordinate " + t.text + " is not in the universe", t);
            return it->second;
        }

        auto parse_tuple(TokenStream & in, const std::map<std::string, Element> & universe, const Symbol & sym) -> Tuple
        {
            auto & start = in.peek();
            Tuple t;
            if (in.accept("(")) {
                if (! in.is(")")) {
                    t.push_back(parse_element(in, universe));
                    while (in.accept(","))
                        t.push_back(parse_element(in, universe));
                }
                in.expect(")");
            }
            else
                t.push_back(parse_element(in, universe));
            if (t.size() != sym.arity)
                in.fail("tuple of length " + std::to_string(t.size()) + " for " + sym.name + "/" +
                        std::to_string(sym.arity), start);
            return t;
        }

        auto parse_structure_block(TokenStream & in, Document & doc) -> void
        {
            auto & name = in.word("structure name");
            if (doc.structure(name.text))
                in.fail("structure " + name.text + " declared twice", name);
            in.expect(":");
            auto & sig_name = in.word("signature name");
            auto sig = doc.signature(sig_name.text);
            if (! sig)
                in.fail("unknown signature " + sig_name.text, sig_name);
            in.expect("{");

            in.expect("universe");
            in.expect("=");
            in.expect("{");
            std::vector<std::string> names;
            std::map<std::string, Element> universe;
            if (! in.is("}")) {
                do {
                    auto & e = in.word("element name");
                    if (! universe.emplace(e.text, names.size()).second)
                        in.fail("element " + e.text + " listed twice", e);
                    names.push_back(e.text);
                } while (in.accept(","));
            }
            in.expect("}");

            StructureBuilder b(sig, names.size());
            while (true) {
                in.accept(";");
                if (in.accept("}"))
                    break;
                auto & sym_tok = in.word("relation name");
                auto id = sig->find(sym_tok.text);
                if (! id)
                    in.fail("unknown symbol " + sym_tok.text, sym_tok);
                in.expect("=");
                in.expect("{");
                if (! in.is("}")) {
                    do
                        b.add(*id, parse_tuple(in, universe, (*sig)[*id]));
                    while (in.accept(","));
                }
                in.expect("}");
            }
            b.set_names(std::move(names));
            doc.structures.emplace_back(name.text, std::move(b).build());
        }

        auto parse_constraints(TokenStream & in, Document & doc) -> void
        {
            auto & name = in.word("structure name");
            auto s = doc.structure(name.text);
            if (! s)
                in.fail("constraints for unknown structure " + name.text, name);
            std::map<std::string, Element> universe;
            for (Element e = 0; e < s->size(); ++e)
                universe.emplace(s->element_name(e), e);

            StructureConstraints c{name.text, {}};
            c.partial.separated.emplace();
            in.expect("{");
            while (true) {
                in.accept(";");
                if (in.accept("}"))
                    break;
                if (in.accept("tuple")) {
                    auto & sym_tok = in.word("relation name");
                    auto id = s->signature().find(sym_tok.text);
                    if (! id)
                        in.fail("unknown symbol " + sym_tok.text, sym_tok);
                    auto t = parse_tuple(in, universe, s->signature()[*id]);
                    if (s->has(*id, t))
                        in.fail("free tuple is already a tuple of " + name.text, sym_tok);
                    in.expect("free");
                    c.partial.free_tuples.push_back({*id, std::move(t)});
                }
                else {
                    auto a = parse_element(in, universe);
                    in.expect("!=");
                    auto b = parse_element(in, universe);
                    c.partial.separated->emplace_back(std::min(a, b), std::max(a, b));
                }
            }
            doc.constraints.push_back(std::move(c));
        }

        auto element_text(const Structure & s, Element e) -> std::string
        {
            return s.element_name(e);
        }
    }

    auto Document::signature(std::string_view name) const -> SignaturePtr
    {
        for (auto & [n, s] : signatures)
            if (n == name)
                return s;
        return nullptr;
    }

    auto Document::structure(std::string_view name) const -> const Structure *
    {
        for (auto & [n, s] : structures)
            if (n == name)
                return &s;
        return nullptr;
    }

    auto parse_document(std::string_view text) -> Document
    {
        TokenStream in(text);
        Document doc;
        while (! in.at_end()) {
            if (in.accept(";"))
                continue;
            auto & kw = in.word("a declaration");
            if (kw.text == "signature")
                parse_signature(in, doc);
            else if (kw.text == "structure")
                parse_structure_block(in, doc);
            else if (kw.text == "mode") {
                in.expect("=");
                auto & m = in.word("mode");
                auto kind = parse_hom_kind(m.text);
                if (! kind)
                    in.fail("unknown mode " + m.text, m);
                doc.mode = *kind;
            }
            else if (kw.text == "constraints")
                parse_constraints(in, doc);
            else
                in.fail("unexpected '" + kw.text + "'", kw);
        }
        return doc;
    }

    auto parse_structure(std::string_view text) -> Structure
    {
        auto doc = parse_document(text);
        if (doc.structures.size() != 1)
            throw ParseError("expected exactly one structure, found " + std::to_string(doc.structures.size()), 1, 1);
        return std::move(doc.structures.front().second);
    }

    auto write_signature(const Signature & sig, std::string_view name) -> std::string
    {
        std::string out = "signature " + std::string(name) + " {";
        for (auto & s : sig.symbols()) {
            out += " " + s.name + "/" + std::to_string(s.arity);
            if (s.lifted)
                out += " lift";
        }
        out += " }\n";
        return out;
    }

    auto write_structure(const Structure & s, std::string_view name, std::string_view signature_name) -> std::string
    {
        std::ostringstream out;
        out << "structure " << name << " : " << signature_name << " {\n  universe = {";
        for (Element e = 0; e < s.size(); ++e)
            out << (e ? ", " : "") << element_text(s, e);
        out << "}";
        for (SymbolId r = 0; r < s.signature().size(); ++r) {
            out << " ;\n  " << s.signature()[r].name << " = {";
            bool first = true;
            for (auto t : s.relation(r)) {
                out << (first ? "" : ", ") << "(";
                for (std::size_t i = 0; i < t.size(); ++i)
                    out << (i ? "," : "") << element_text(s, t[i]);
                out << ")";
                first = false;
            }
            out << "}";
        }
        out << "\n}\n";
        return out.str();
    }

    auto write_standalone(const Structure & s, std::string_view name) -> std::string
    {
        std::string sig_name = s.signature().name().empty() ? "S" : s.signature().name();
        return write_signature(s.signature(), sig_name) + write_structure(s, name, sig_name);
    }

    auto write_document(const Document & doc) -> std::string
    {
        std::string out;
        for (auto & [name, sig] : doc.signatures)
            out += write_signature(*sig, name);
        for (auto & [name, s] : doc.structures) {
            std::string sig_name;
            for (auto & [n, sig] : doc.signatures)
                if (sig == s.signature_ptr() || *sig == s.signature())
                    sig_name = n;
            out += write_structure(s, name, sig_name);
        }
        if (doc.mode)
            out += "mode = " + std::string(to_string(*doc.mode)) + "\n";
        for (auto & c : doc.constraints) {
            auto s = doc.structure(c.structure);
            if (! s)
                continue;
            out += "constraints " + c.structure + " {";
            if (c.partial.separated)
                for (auto & [a, b] : *c.partial.separated)
                    out += " " + element_text(*s, a) + " != " + element_text(*s, b) + " ;";
            for (auto & f : c.partial.free_tuples) {
                out += " tuple " + s->signature()[f.symbol].name + "(";
                for (std::size_t i = 0; i < f.tuple.size(); ++i)
                    out += (i ? "," : "") + element_text(*s, f.tuple[i]);
                out += ") free ;";
            }
            out += " }\n";
        }
        return out;
    }

    auto read_file(const std::string & path) -> std::string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error("cannot read " + path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
}
