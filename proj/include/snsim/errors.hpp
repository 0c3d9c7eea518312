#pragma once

#include <stdexcept>
#include <string>

namespace snsim {

/// Error raised while reading line/row oriented input; carries the
/// 1-based line number of the offending record.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace snsim
