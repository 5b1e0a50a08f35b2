#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lifts
{
    using SymbolId = unsigned;

    struct Symbol
    {
        std::string name;
        unsigned arity = 1;
        bool lifted = false; ///< member of the lift part rather than the input part

        auto operator==(const Symbol &) const -> bool = default;
    };

    class Signature;
    using SignaturePtr = std::shared_ptr<const Signature>;

    /**
     * An ordered list of relation symbols, partitioned into an input part and
     * a lift part. Always held through a SignaturePtr; structures compare
     * signatures by pointer first and by symbol list second.
     */
    class Signature : public std::enable_shared_from_this<Signature>
    {
    private:
        std::string _name;
        std::vector<Symbol> _symbols;
        SignaturePtr _base;

        struct Token
        {
        };

    public:
        Signature(Token, std::string name, std::vector<Symbol> symbols);

        /// Throws PreconditionViolated on duplicate names or zero arities.
        static auto make(std::vector<Symbol> symbols, std::string name = {}) -> SignaturePtr;

        /// Input part plus extra lifted symbols; base() of the result is `base` itself.
        static auto extend(const SignaturePtr & base, std::vector<Symbol> lifted, std::string name = {}) -> SignaturePtr;

        auto name() const -> const std::string & { return _name; }
        auto size() const -> unsigned { return _symbols.size(); }
        auto symbols() const -> const std::vector<Symbol> & { return _symbols; }
        auto operator[](SymbolId id) const -> const Symbol & { return _symbols[id]; }

        auto find(std::string_view name) const -> std::optional<SymbolId>;
        auto has_lifted() const -> bool;
        auto lifted_symbols() const -> std::vector<SymbolId>;
        auto base_symbols() const -> std::vector<SymbolId>;
        auto max_arity() const -> unsigned;

        /// The input part (lifted symbols removed). Identity when nothing is lifted.
        auto base() const -> SignaturePtr;

        /// Symbol-wise equality; the name is metadata.
        auto operator==(const Signature & other) const -> bool { return _symbols == other._symbols; }
    };

    auto same_signature(const SignaturePtr & a, const SignaturePtr & b) -> bool;

    /// Throws SignatureMismatch with a description of `what` when the signatures differ.
    auto require_same_signature(const SignaturePtr & a, const SignaturePtr & b, std::string_view what) -> void;
}
