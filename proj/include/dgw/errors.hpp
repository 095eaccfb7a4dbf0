#ifndef DGW_ERRORS_HPP
#define DGW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dgw {

/// Malformed arguments to an operation (dimension mismatch, unknown names, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Presentation source that does not parse or fails validation.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col)
    {
    }
    int line() const noexcept { return line_; }
    int column() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

/// A structural invariant failed while building or combining compiled objects.
class ComputeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dgw

#endif
