/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "errors.hh"

using namespace dx;

using std::string;
using std::to_string;

auto dx::error_code_name(ErrorCode c) -> const char *
{
    switch (c) {
        case ErrorCode::SyntaxError:           return "SyntaxError";
        case ErrorCode::ArityMismatch:         return "ArityMismatch";
        case ErrorCode::SchemaViolation:       return "SchemaViolation";
        case ErrorCode::UnknownRelation:       return "UnknownRelation";
        case ErrorCode::UnboundVariable:       return "UnboundVariable";
        case ErrorCode::UndefinedValue:        return "UndefinedValue";
        case ErrorCode::NotGround:             return "NotGround";
        case ErrorCode::NotUniversal:          return "NotUniversal";
        case ErrorCode::NotHomomorphismClosed: return "NotHomomorphismClosed";
        case ErrorCode::NotPacked:             return "NotPacked";
        case ErrorCode::NotCore:               return "NotCore";
        case ErrorCode::BlockTooLarge:         return "BlockTooLarge";
        case ErrorCode::BudgetExceeded:        return "BudgetExceeded";
        case ErrorCode::FixpointNotReached:    return "FixpointNotReached";
        case ErrorCode::UnsupportedSemantics:  return "UnsupportedSemantics";
        case ErrorCode::Io:                    return "Io";
        case ErrorCode::Usage:                 return "Usage";
    }
    return "Unknown";
}

auto dx::is_precondition(ErrorCode c) -> bool
{
    return c == ErrorCode::NotPacked || c == ErrorCode::NotCore || c == ErrorCode::BlockTooLarge;
}

ParseError::ParseError(ErrorCode code, const string & file, int line, int column, const string & message) :
    Error(code, file + ":" + to_string(line) + ":" + to_string(column) + ": " + error_code_name(code) + ": " + message),
    _file(file),
    _line(line),
    _column(column)
{
}
