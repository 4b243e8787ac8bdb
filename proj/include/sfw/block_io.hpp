#pragma once

#include "sfw/image.hpp"
#include "sfw/texture.hpp"
#include "sfw/transform.hpp"

#include <algorithm>

namespace sfw {

inline Block16 read_block(const GrayImage& img, BlockCoord b)
{
    Block16 out{};
    for (int y = 0; y < kBlockSize; ++y)
        for (int x = 0; x < kBlockSize; ++x)
            out[y * kBlockSize + x] = img.at(b.bx * kBlockSize + x, b.by * kBlockSize + y);
    return out;
}

inline void write_block(GrayImage& img, BlockCoord b, const Block16& px)
{
    for (int y = 0; y < kBlockSize; ++y)
        for (int x = 0; x < kBlockSize; ++x)
            img.at(b.bx * kBlockSize + x, b.by * kBlockSize + y) =
                static_cast<std::uint8_t>(std::clamp(px[y * kBlockSize + x], 0, 255));
}

} // namespace sfw
