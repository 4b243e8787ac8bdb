#pragma once

#include "sfw/topology.hpp"
#include "sfw/transform.hpp"

#include <cstdint>
#include <string>

namespace sfw {

struct Config {
    SecretKey key{};
    int step = 16;     ///< QIM step S
    double th1 = 0.1;  ///< smooth/normal threshold on normalized std
    double th2 = 0.3;  ///< normal/rough threshold

    /// Throws std::invalid_argument unless S >= 2 and 0 < th1 < th2 <= 1.
    void validate() const;
    QimStep qim() const { return QimStep(step); }
};

/// Parses a decimal or 0x-prefixed hexadecimal 64-bit key.
SecretKey parse_key(const std::string& text);

} // namespace sfw
