#pragma once

#include <stdexcept>
#include <string>

namespace pgd {

// Invalid mathematical input: degenerate matrix, base point outside U,
// malformed arc data, violated operation precondition.
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

// A configurable resource cap (node count, radius, word depth) was hit
// before the computation could finish. Not a mathematical refutation.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pgd
