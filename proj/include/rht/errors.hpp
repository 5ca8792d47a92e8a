#pragma once

#include <stdexcept>
#include <string>

namespace rht {

/// Base class for every engine error. `code()` is a stable identifier used
/// by the command-line front end when it reports failures.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define RHT_DEFINE_ERROR(Name)                                                 \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
    };

RHT_DEFINE_ERROR(DimensionError)
RHT_DEFINE_ERROR(NotAComplexError)
RHT_DEFINE_ERROR(FlavorError)
RHT_DEFINE_ERROR(DegreeError)
RHT_DEFINE_ERROR(ShiftError)
RHT_DEFINE_ERROR(NotClosedError)
RHT_DEFINE_ERROR(CutoffError)
RHT_DEFINE_ERROR(ConnectivityError)
RHT_DEFINE_ERROR(MorphismError)
RHT_DEFINE_ERROR(PreconditionError)
RHT_DEFINE_ERROR(MalformedHomotopyError)
RHT_DEFINE_ERROR(HypothesisError)
RHT_DEFINE_ERROR(NilpotenceError)
RHT_DEFINE_ERROR(SparsenessError)
RHT_DEFINE_ERROR(InversionError)

#undef RHT_DEFINE_ERROR

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what)
        : Error("ParseError", std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace rht
