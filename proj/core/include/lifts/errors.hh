#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lifts
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class ParseError : public Error
    {
    private:
        std::size_t _line, _column;

    public:
        ParseError(const std::string & message, std::size_t line, std::size_t column);

        auto line() const -> std::size_t { return _line; }
        auto column() const -> std::size_t { return _column; }
    };

    class SignatureMismatch : public Error
    {
    public:
        using Error::Error;
    };

    /// A documented precondition of an operation does not hold for its input.
    class PreconditionViolated : public Error
    {
    public:
        using Error::Error;
    };

    /// A configurable size cap was hit. Never a silent truncation.
    class GuardExceeded : public Error
    {
    public:
        using Error::Error;
    };

    /// An SNP formula lacks a syntactic restriction required by a translation.
    class RestrictionViolation : public Error
    {
    public:
        using Error::Error;
    };
}
