#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sphord {

// Every operation failure carries a stable machine-readable code plus a
// human-readable detail string. The CLI maps these to {"error":code,...}.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(detail) {}

    const std::string& code() const { return code_; }
    const std::string& detail() const { return detail_; }

private:
    std::string code_;
    std::string detail_;
};

namespace errc {
inline constexpr const char* invalid_arity = "invalid_arity";
inline constexpr const char* duplicate_label = "duplicate_label";
inline constexpr const char* unknown_label = "unknown_label";
inline constexpr const char* wrong_tuple_length = "wrong_tuple_length";
inline constexpr const char* invalid_argument = "invalid_argument";
inline constexpr const char* budget_exceeded = "budget_exceeded";
inline constexpr const char* arity_mismatch = "arity_mismatch";
inline constexpr const char* no_witness = "no_witness";
inline constexpr const char* search_exhausted = "search_exhausted";
inline constexpr const char* parse_error = "parse_error";
inline constexpr const char* unbound_variable = "unbound_variable";
inline constexpr const char* not_quantifier_free = "not_quantifier_free";
inline constexpr const char* overflow = "overflow";
inline constexpr const char* io_error = "io_error";
} // namespace errc

} // namespace sphord
