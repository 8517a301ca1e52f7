// Error taxonomy shared by all modules. The CLI maps these onto process
// exit codes: validation 2, resource 3, I/O 4.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qam {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments, dimension mismatches, malformed or inconsistent inputs.
struct validation_error : error {
    using error::error;
};

// Malformed pattern file; carries the 1-based line number of the offense.
struct parse_error : validation_error {
    parse_error(const std::string& what, std::size_t line_no)
        : validation_error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    std::size_t line;
};

// Instance exceeds a configured resource cap.
struct resource_error : error {
    using error::error;
};

// Filesystem failure, annotated with the path.
struct io_error : error {
    using error::error;
};

}  // namespace qam
