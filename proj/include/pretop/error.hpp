#pragma once

#include <stdexcept>
#include <string>

namespace pretop {

// All precondition violations throw this; `code` is a stable machine-readable
// tag (e.g. "BaseMismatch", "ShapeMismatch") that reports and tests key on.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

} // namespace pretop
