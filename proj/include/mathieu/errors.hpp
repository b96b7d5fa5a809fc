#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mathieu {

/// Error categories surfaced by the library. The CLI maps these onto
/// process exit codes (schema -> 2, too_large -> 4, everything else -> 1).
enum class errc {
    ring_mismatch,
    dimension_mismatch,
    algebra_mismatch,
    spec_mismatch,
    not_associative,
    bad_unit,
    bad_parameter,
    not_an_ideal,
    solve_failed,
    precondition_failed,
    too_large,
    infinite_ring,
    negative_value,
    schema_error,
};

class error : public std::runtime_error {
public:
    error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    [[nodiscard]] errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
    if (!condition) fail(code, message);
}

} // namespace mathieu
