#pragma once
#include <stdexcept>
#include <string>

namespace kfd {

// memory / overflow / budget limits
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// cross-method disagreement and similar internal consistency failures
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kfd
