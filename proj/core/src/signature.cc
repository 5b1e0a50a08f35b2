#include <lifts/errors.hh>
#include <lifts/signature.hh>

#include <algorithm>
#include <set>

namespace lifts
{
    ParseError::ParseError(const std::string & message, std::size_t line, std::size_t column) :
        Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        _line(line),
        _column(column)
    {
    }

    Signature::Signature(Token, std::string name, std::vector<Symbol> symbols) :
        _name(std::move(name)),
        _symbols(std::move(symbols))
    {
        std::set<std::string_view> seen;
        for (auto & s : _symbols) {
            if (s.arity == 0)
                throw PreconditionViolated("symbol " + s.name + " has arity 0");
            if (s.name.empty())
                throw PreconditionViolated("empty symbol name");
            if (! seen.insert(s.name).second)
                throw PreconditionViolated("duplicate symbol " + s.name);
        }
    }

    auto Signature::make(std::vector<Symbol> symbols, std::string name) -> SignaturePtr
    {
        auto sig = std::make_shared<Signature>(Token{}, std::move(name), std::move(symbols));
        if (sig->has_lifted()) {
            std::vector<Symbol> base;
            for (auto & s : sig->_symbols)
                if (! s.lifted)
                    base.push_back(s);
            sig->_base = std::make_shared<Signature>(Token{}, sig->_name, std::move(base));
        }
        return sig;
    }

    auto Signature::extend(const SignaturePtr & base, std::vector<Symbol> lifted, std::string name) -> SignaturePtr
    {
        if (base->has_lifted())
            throw PreconditionViolated("extend: base signature already has lifted symbols");
        std::vector<Symbol> all = base->symbols();
        for (auto & s : lifted) {
            s.lifted = true;
            all.push_back(s);
        }
        auto sig = std::make_shared<Signature>(Token{}, name.empty() ? base->name() : std::move(name), std::move(all));
        sig->_base = base;
        return sig;
    }

    auto Signature::find(std::string_view name) const -> std::optional<SymbolId>
    {
        for (SymbolId i = 0; i < _symbols.size(); ++i)
            if (_symbols[i].name == name)
                return i;
        return std::nullopt;
    }

    auto Signature::has_lifted() const -> bool
    {
        return std::any_of(_symbols.begin(), _symbols.end(), [](auto & s) { return s.lifted; });
    }

    auto Signature::lifted_symbols() const -> std::vector<SymbolId>
    {
        std::vector<SymbolId> result;
        for (SymbolId i = 0; i < _symbols.size(); ++i)
            if (_symbols[i].lifted)
                result.push_back(i);
        return result;
    }

    auto Signature::base_symbols() const -> std::vector<SymbolId>
    {
        std::vector<SymbolId> result;
        for (SymbolId i = 0; i < _symbols.size(); ++i)
            if (! _symbols[i].lifted)
                result.push_back(i);
        return result;
    }

    auto Signature::max_arity() const -> unsigned
    {
        unsigned result = 0;
        for (auto & s : _symbols)
            result = std::max(result, s.arity);
        return result;
    }

    auto Signature::base() const -> SignaturePtr
    {
        if (_base)
            return _base;
        return shared_from_this();
    }

    auto same_signature(const SignaturePtr & a, const SignaturePtr & b) -> bool
    {
        return a == b || *a == *b;
    }

    auto require_same_signature(const SignaturePtr & a, const SignaturePtr & b, std::string_view what) -> void
    {
        if (! same_signature(a, b))
            throw SignatureMismatch(std::string(what) + ": signatures differ");
    }
}
