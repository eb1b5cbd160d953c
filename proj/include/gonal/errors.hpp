#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gonal {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// domain / precondition violations (bad m, out-of-range k, ...)
struct argument_error : error {
    using error::error;
};

// a requested table would not fit the memory policy; carries the estimate
struct resource_error : error {
    std::uint64_t required_bytes;
    resource_error(const std::string& what, std::uint64_t bytes)
        : error(what), required_bytes(bytes) {}
};

// internal checks that must never fire (failed certificate re-verification,
// a dispatch table with no applicable row, ...)
struct invariant_error : error {
    using error::error;
};

// constants-file syntax problems
struct parse_error : error {
    using error::error;
};

}  // namespace gonal
