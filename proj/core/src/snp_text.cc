#include "lexer.hh"

#include <lifts/snp.hh>

#include <algorithm>

namespace lifts
{
    using detail::TokenStream;

    namespace
    {
        auto parse_symbols(TokenStream & in, std::vector<Symbol> & out, bool lifted) -> void
        {
            in.expect("{");
            while (! in.accept("}")) {
                auto & name = in.word("symbol name");
                in.expect("/");
                auto & at = in.peek();
                unsigned arity = in.number("arity");
                if (arity == 0)
                    in.fail("arity must be at least 1", at);
                out.push_back({name.text, arity, lifted});
                in.accept(",");
                in.accept(";");
            }
        }

        auto variable(SnpClause & c, const std::string & name) -> unsigned
        {
            auto it = std::find(c.variables.begin(), c.variables.end(), name);
            if (it != c.variables.end())
                return it - c.variables.begin();
            c.variables.push_back(name);
            return c.variables.size() - 1;
        }

        auto parse_clause(TokenStream & in, const SnpFormula & phi) -> SnpClause
        {
            SnpClause c;
            in.expect("NOT");
            in.expect("(");
            if (in.accept(")"))
                return c;
            do {
                bool negated = in.accept("NOT");
                auto & first = in.word("atom");
                if (! negated && in.is("!=")) {
                    in.next();
                    auto & second = in.word("variable");
                    auto x = variable(c, first.text);
                    auto y = variable(c, second.text);
                    c.inequalities.emplace_back(x, y);
                    continue;
                }
                SnpAtom atom{0, {}, negated};
                bool is_proof = false;
                unsigned arity = 0;
                if (auto id = phi.input->find(first.text)) {
                    atom.symbol = *id;
                    arity = (*phi.input)[*id].arity;
                }
                else {
                    auto it = std::find_if(phi.proof.begin(), phi.proof.end(),
                        [&](const Symbol & s) { return s.name == first.text; });
                    if (it == phi.proof.end())
                        in.fail("unknown symbol " + first.text, first);
                    atom.symbol = it - phi.proof.begin();
                    arity = it->arity;
                    is_proof = true;
                }
                in.expect("(");
                if (! in.is(")")) {
                    do
                        atom.args.push_back(variable(c, in.word("variable").text));
                    while (in.accept(","));
                }
                in.expect(")");
                if (atom.args.size() != arity)
                    in.fail(first.text + " has arity " + std::to_string(arity) + " but is applied to " +
                            std::to_string(atom.args.size()) + " variables", first);
                (is_proof ? c.proof : c.input).push_back(std::move(atom));
            } while (in.accept("&"));
            in.expect(")");
            return c;
        }
    }

    auto parse_snp(std::string_view text) -> SnpFormula
    {
        TokenStream in(text);
        SnpFormula phi;
        in.expect("snp");
        phi.name = in.word("formula name").text;
        in.expect("{");
        std::vector<Symbol> input;
        bool seen_input = false;
        while (in.is("input") || in.is("proof")) {
            if (in.accept("input")) {
                parse_symbols(in, input, false);
                seen_input = true;
            }
            else {
                in.expect("proof");
                parse_symbols(in, phi.proof, false);
            }
        }
        if (! seen_input)
            in.fail("expected an input block");
        for (auto & p : phi.proof)
            if (std::any_of(input.begin(), input.end(), [&](const Symbol & s) { return s.name == p.name; }))
                in.fail("proof symbol " + p.name + " clashes with an input symbol");
        for (std::size_t i = 0; i < phi.proof.size(); ++i)
            for (std::size_t j = i + 1; j < phi.proof.size(); ++j)
                if (phi.proof[i].name == phi.proof[j].name)
                    in.fail("duplicate proof symbol " + phi.proof[i].name);
        try {
            phi.input = Signature::make(std::move(input), phi.name);
        }
        catch (const PreconditionViolated & e) {
            in.fail(e.what());
        }
        while (in.accept("clause"))
            phi.clauses.push_back(parse_clause(in, phi));
        in.expect("}");
        if (! in.at_end())
            in.fail("unexpected trailing input");
        return phi;
    }

    auto write_snp(const SnpFormula & phi) -> std::string
    {
        std::string out = "snp " + phi.name + " {\n  input {";
        for (auto & s : phi.input->symbols())
            out += " " + s.name + "/" + std::to_string(s.arity);
        out += " }\n  proof {";
        for (auto & s : phi.proof)
            out += " " + s.name + "/" + std::to_string(s.arity);
        out += " }\n";
        for (auto & c : phi.clauses) {
            out += "  clause NOT(";
            bool first = true;
            auto atom = [&](const SnpAtom & a, const std::string & name) {
                out += first ? " " : " & ";
                first = false;
                if (a.negated)
                    out += "NOT ";
                out += name + "(";
                for (std::size_t i = 0; i < a.args.size(); ++i)
                    out += (i ? "," : "") + c.variables[a.args[i]];
                out += ")";
            };
            for (auto & a : c.input)
                atom(a, (*phi.input)[a.symbol].name);
            for (auto & a : c.proof)
                atom(a, phi.proof[a.symbol].name);
            for (auto & [x, y] : c.inequalities) {
                out += first ? " " : " & ";
                first = false;
                out += c.variables[x] + " != " + c.variables[y];
            }
            out += " )\n";
        }
        out += "}\n";
        return out;
    }
}
