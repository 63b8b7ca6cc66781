/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_ERRORS_HH
#define DX_GUARD_SRC_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace dx
{
    enum class ErrorCode
    {
        SyntaxError,
        ArityMismatch,
        SchemaViolation,
        UnknownRelation,
        UnboundVariable,
        UndefinedValue,
        NotGround,
        NotUniversal,
        NotHomomorphismClosed,
        NotPacked,
        NotCore,
        BlockTooLarge,
        BudgetExceeded,
        FixpointNotReached,
        UnsupportedSemantics,
        Io,
        Usage
    };

    auto error_code_name(ErrorCode) -> const char *;

    // NotPacked, NotCore and BlockTooLarge are the precondition failures.
    auto is_precondition(ErrorCode) -> bool;

    class Error : public std::runtime_error
    {
        private:
            ErrorCode _code;

        public:
            Error(ErrorCode code, const std::string & message) :
                std::runtime_error(message),
                _code(code)
            {
            }

            auto code() const -> ErrorCode { return _code; }
    };

    class ParseError : public Error
    {
        private:
            std::string _file;
            int _line, _column;

        public:
            ParseError(ErrorCode code, const std::string & file, int line, int column, const std::string & message);

            auto file() const -> const std::string & { return _file; }
            auto line() const -> int { return _line; }
            auto column() const -> int { return _column; }
    };
}

#endif
