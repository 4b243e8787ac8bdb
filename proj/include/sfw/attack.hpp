#pragma once

#include "sfw/image.hpp"

#include <array>
#include <cstdint>

namespace sfw {

struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Luminance quantization table from the informative annex of the JPEG standard.
inline constexpr std::array<int, 64> kJpegLuminanceTable = {
    16, 11, 10, 16, 24, 40, 51, 61,
    12, 12, 14, 19, 26, 58, 60, 55,
    14, 13, 16, 24, 40, 57, 69, 56,
    14, 17, 22, 29, 51, 87, 80, 62,
    18, 22, 37, 56, 68, 109, 103, 77,
    24, 35, 55, 64, 81, 104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103, 99,
};

/// Table scaled for a quality factor in [1,100] (libjpeg convention).
std::array<int, 64> jpeg_quant_table(int qf);

/// Lossy stage of baseline JPEG: 8x8 DCT, quantize, dequantize, inverse DCT.
GrayImage jpeg_attack(const GrayImage& img, int qf);

/// Overwrite `dst` with the (pre-attack) contents of `src`.
GrayImage copy_move(const GrayImage& img, Rect src, Rect dst);

/// Fill `rect` with `value`.
GrayImage erase(const GrayImage& img, Rect rect, std::uint8_t value);

/// Every 16x16 block overlapping `rect`.
BlockMask tamper_truth(int width, int height, Rect rect);

} // namespace sfw
