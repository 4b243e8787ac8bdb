#include "sfw/config.hpp"

#include <charconv>
#include <stdexcept>

namespace sfw {

void Config::validate() const
{
    if (step < 2)
        throw std::invalid_argument("quantization step must be at least 2");
    if (!(0.0 < th1 && th1 < th2 && th2 <= 1.0))
        throw std::invalid_argument("thresholds must satisfy 0 < th1 < th2 <= 1");
}

SecretKey parse_key(const std::string& text)
{
    std::string_view digits = text;
    int base = 10;
    if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
        digits.remove_prefix(2);
        base = 16;
    }
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
    if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size())
        throw std::invalid_argument("invalid key '" + text + "' (expected decimal or 0x-hex 64-bit value)");
    return SecretKey{value};
}

} // namespace sfw
