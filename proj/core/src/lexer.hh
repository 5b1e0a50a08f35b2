#pragma once

#include <lifts/errors.hh>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lifts::detail
{
    enum class TokenKind
    {
        word,
        punct,
        end
    };

    struct Token
    {
        TokenKind kind;
        std::string text;
        std::size_t line, column;
    };

    // Words are runs of [A-Za-z0-9_]; punctuation is a single character or "!=".
    // '#' starts a comment running to the end of the line.
    inline auto tokenize(std::string_view text) -> std::vector<Token>
    {
        std::vector<Token> tokens;
        std::size_t line = 1, column = 1, i = 0;
        auto is_word = [](char c) {
            return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        };
        while (i < text.size()) {
            char c = text[i];
            if (c == '\n') {
                ++line;
                column = 1;
                ++i;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                ++column;
                ++i;
                continue;
            }
            if (c == '#') {
                while (i < text.size() && text[i] != '\n')
                    ++i;
                continue;
            }
            if (is_word(c)) {
                std::size_t start = i;
                while (i < text.size() && is_word(text[i]))
                    ++i;
                tokens.push_back({TokenKind::word, std::string(text.substr(start, i - start)), line, column});
                column += i - start;
                continue;
            }
            if (c == '!' && i + 1 < text.size() && text[i + 1] == '=') {
                tokens.push_back({TokenKind::punct, "!=", line, column});
                i += 2;
                column += 2;
                continue;
            }
            if (std::string_view("{}()=,;/:&").find(c) != std::string_view::npos) {
                tokens.push_back({TokenKind::punct, std::string(1, c), line, column});
                ++i;
                ++column;
                continue;
            }
            throw ParseError(std::string("unexpected character '") + c + "'", line, column);
        }
        tokens.push_back({TokenKind::end, "", line, column});
        return tokens;
    }

    class TokenStream
    {
    private:
        std::vector<Token> _tokens;
        std::size_t _at = 0;

    public:
        explicit TokenStream(std::string_view text) : _tokens(tokenize(text)) {}

        auto peek(std::size_t ahead = 0) const -> const Token &
        {
            return _tokens[std::min(_at + ahead, _tokens.size() - 1)];
        }

        auto at_end() const -> bool { return peek().kind == TokenKind::end; }

        auto next() -> const Token &
        {
            auto & t = _tokens[_at];
            if (_at + 1 < _tokens.size())
                ++_at;
            return t;
        }

        [[noreturn]] auto fail(const std::string & message, const Token & where) const -> void
        {
            throw ParseError(message, where.line, where.column);
        }

        [[noreturn]] auto fail(const std::string & message) const -> void
        {
            fail(message, peek());
        }

        auto describe(const Token & t) const -> std::string
        {
            return t.kind == TokenKind::end ? std::string("end of input") : "'" + t.text + "'";
        }

        auto is(std::string_view text) const -> bool
        {
            return peek().kind != TokenKind::end && peek().text == text;
        }

        auto accept(std::string_view text) -> bool
        {
            if (is(text)) {
                next();
                return true;
            }
            return false;
        }

        auto expect(std::string_view text) -> const Token &
        {
            if (! is(text))
                fail("expected '" + std::string(text) + "' but found " + describe(peek()));
            return next();
        }

        auto word(std::string_view what) -> const Token &
        {
            if (peek().kind != TokenKind::word)
                fail("expected " + std::string(what) + " but found " + describe(peek()));
            return next();
        }

        auto number(std::string_view what) -> unsigned
        {
            auto & t = word(what);
            unsigned value = 0;
            for (char c : t.text) {
                if (c < '0' || c > '9')
                    fail("expected a number for " + std::string(what), t);
                value = value * 10 + (c - '0');
                if (value > 1000000)
                    fail("number too large", t);
            }
            return value;
        }
    };
}
