#pragma once

#include <stdexcept>
#include <string>

namespace arrcert {

// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Two equal points joined, two equal lines met, repeated points in a
// collinearity test, and similar malformed geometric input.
struct degenerate_input : error {
    using error::error;
};

// Arithmetic between elements of distinct cyclotomic fields. Only the
// rationals embed automatically.
struct field_mismatch : error {
    using error::error;
};

struct division_by_zero : error {
    using error::error;
};

struct invalid_parameter : error {
    using error::error;
};

// A section plane that identifies two distinct intersection flats.
struct genericity_failure : error {
    using error::error;
};

// A certificate construction invoked outside its hypotheses.
struct hypothesis_violation : error {
    using error::error;
};

// extend_nm called with components that never touch the growing support.
struct disconnected_extension : error {
    using error::error;
};

struct parse_error : error {
    parse_error(const std::string& what, int line)
        : error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    explicit parse_error(const std::string& what) : error(what), line_number(0) {}
    int line_number;
};

}  // namespace arrcert
