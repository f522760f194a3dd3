#ifndef MARKEX_ERRORS_HPP
#define MARKEX_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace markex {

// Violated precondition or malformed argument; callers get these for bugs,
// not for data-dependent resource exhaustion.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A configurable work budget was exceeded (determinization states, row
// enumeration, universe size). Carries the count that blew the budget.
class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(const std::string& what, std::uint64_t count)
        : std::runtime_error(what), count_(count) {}

    std::uint64_t count() const noexcept { return count_; }

private:
    std::uint64_t count_;
};

// Textual input (automaton/grammar/expression/tuple files) failed to parse.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(message), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace markex

#endif
