#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypercolor
{
    /// Bad caller-supplied data: out-of-range vertices, inconsistent sizes, malformed values.
    class InputError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    class ParseError : public InputError
    {
    public:
        ParseError(std::size_t line, const std::string & what) :
            InputError("line " + std::to_string(line) + ": " + what),
            _line(line)
        {
        }

        auto line() const -> std::size_t { return _line; }

    private:
        std::size_t _line;
    };

    /// Parameters that make the algorithm ill-defined (a coin probability above one, etc).
    class ParameterError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    /// A documented precondition of an operation was violated by the caller.
    class ContractError : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };
}
