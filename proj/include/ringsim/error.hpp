#pragma once

#include <stdexcept>
#include <string>

namespace ringsim {

// Raised when a configuration document or value violates an invariant.
// `field` names the offending key (dotted path) when known; `line` is
// 1-based, or 0 when the error did not come from a parsed document.
class ConfigError : public std::runtime_error {
 public:
    ConfigError(std::string field, const std::string& what, int line = 0)
        : std::runtime_error(format(field, what, line)), field_(std::move(field)), message_(what), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    const std::string& message() const noexcept { return message_; }
    int line() const noexcept { return line_; }

 private:
    static std::string format(const std::string& field, const std::string& what, int line) {
        std::string msg;
        if (line > 0) msg += "line " + std::to_string(line) + ": ";
        if (!field.empty()) msg += field + ": ";
        return msg + what;
    }

    std::string field_;
    std::string message_;
    int line_;
};

// A time query outside the recorded history.
class QueryOutOfRange : public std::out_of_range {
 public:
    using std::out_of_range::out_of_range;
};

}  // namespace ringsim
