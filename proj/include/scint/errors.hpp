#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scint {

// An input value is outside the range the prediction procedure is defined for.
// The message names the offending field and the accepted bounds.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// A climate CSV could not be parsed; carries the 1-based line number
// (the header counts as line 1).
class csv_error : public std::runtime_error {
public:
    csv_error(std::size_t line, const std::string& what_arg)
        : std::runtime_error("line " + std::to_string(line) + ": " + what_arg), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A file could not be opened or read; carries the path in the message.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

} // namespace scint
